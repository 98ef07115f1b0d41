//! Acceptance criteria 1 to 10. Prints one line per criterion and exits
//! nonzero if any fails.
//!
//! Oracles here are written independently of the library where that is
//! cheap: projective classes by a direct closure, chain counts by path
//! counting, Λ by memoized recursion with a bisection square root, and the
//! filter-difference identities straight from the filter bitsets.

use std::collections::{HashMap, VecDeque};
use std::process::Command;
use std::time::Instant;

use latlab_core::chains::{chain_extremes, check_lambda_theorem, maximal_chains, sqrt_descent};
use latlab_core::completions::{
    check_embedding_equivalence, check_max_lemma, fil_lattice, idl_lattice, CoveringKind, FilterLattice,
};
use latlab_core::coverings::projective_classes;
use latlab_core::fixtures::{boolean, gen_fixture, m5, subspace_lattice};
use latlab_core::lattice::is_isomorphic;
use latlab_core::omega::{
    classify_fil_covering, ladder_fil_mu, ladder_mu, truncate, truncation_consistency, ChainDescriptor,
    FilChainDescriptor, FilClass, LadderClass, LadderFilElement,
};
use latlab_core::proof::{
    coverage_iff, covered, default_pool, exhaustive_sweep, is_trivial_instance, random_sweep,
    trivial_equivalence_sweep, wide_pool, BoolAlgebra, InferenceInstance,
};
use latlab_core::FiniteLattice;

const ENUMERATION_CAP: u128 = 100_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Class id per covering, by breadth-first closure of `↗` in both directions.
fn oracle_classes(l: &FiniteLattice) -> HashMap<(usize, usize), usize> {
    let covers = l.covers().to_vec();
    let transposes = |a: (usize, usize), b: (usize, usize)| l.meet(a.1, b.0) == a.0 && l.join(a.1, b.0) == b.1;
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next = 0;
    for &start in &covers {
        if id.contains_key(&start) {
            continue;
        }
        id.insert(start, next);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &d in &covers {
                if !id.contains_key(&d) && (transposes(c, d) || transposes(d, c)) {
                    id.insert(d, next);
                    queue.push_back(d);
                }
            }
        }
        next += 1;
    }
    id
}

/// Number of maximal chains: paths from bottom to top in the cover graph.
fn chain_count(l: &FiniteLattice) -> u128 {
    let order = l.linear_extension();
    let mut paths = vec![0u128; l.len()];
    paths[l.bottom()] = 1;
    for &x in &order {
        for &y in l.upper_covers(x) {
            paths[y] = paths[y].saturating_add(paths[x]);
        }
    }
    paths[l.top()]
}

/// `μ_C` of every class on every chain, enumerated when the count is small
/// enough, otherwise the exact min/max from the path DP. Returns the number
/// of chains examined and the per-class `(min, max)`.
fn class_ranges(l: &FiniteLattice) -> (String, Vec<(usize, usize)>) {
    let classes = oracle_classes(l);
    let k = classes.values().max().map_or(0, |m| m + 1);
    let count = chain_count(l);
    if count <= ENUMERATION_CAP {
        let mut ranges = vec![(usize::MAX, 0); k];
        for chain in maximal_chains(l, usize::MAX) {
            let mut mu = vec![0usize; k];
            for w in chain.elements.windows(2) {
                mu[classes[&(w[0], w[1])]] += 1;
            }
            for (r, m) in ranges.iter_mut().zip(mu) {
                *r = (r.0.min(m), r.1.max(m));
            }
        }
        (format!("{count} chains"), ranges)
    } else {
        let ranges = projective_classes(l)
            .iter()
            .map(|c| {
                let e = chain_extremes(l, c);
                (e.min, e.max)
            })
            .collect();
        (format!("{count} chains via DP"), ranges)
    }
}

fn fx(kind: &str, params: &[u64]) -> FiniteLattice {
    gen_fixture(kind, params).expect("fixture")
}

fn modular_fixtures() -> Vec<(String, FiniteLattice)> {
    let mut out = vec![("M5".to_string(), m5())];
    for n in 1..=4 {
        out.push((format!("2^{n}"), boolean(n).unwrap()));
    }
    for (p, d) in [(2, 2), (2, 3), (3, 2)] {
        out.push((format!("GF({p})^{d}"), subspace_lattice(p, d).unwrap()));
    }
    for k in 1..=6 {
        out.push((format!("ladder{k}"), truncate(k).unwrap()));
    }
    let gf22 = subspace_lattice(2, 3).unwrap();
    let gf32 = subspace_lattice(3, 2).unwrap();
    let products: Vec<(&str, FiniteLattice, FiniteLattice)> = vec![
        ("M5×M5", m5(), m5()),
        ("M5×GF(3)^2", m5(), gf32.clone()),
        ("M5×ladder6", m5(), truncate(6).unwrap()),
        ("GF(2)^3×2^3", gf22.clone(), boolean(3).unwrap()),
        ("GF(2)^3×GF(3)^2", gf22, gf32.clone()),
        ("GF(3)^2×ladder6", gf32, truncate(6).unwrap()),
        ("2^4×ladder4", boolean(4).unwrap(), truncate(4).unwrap()),
        ("ladder3×ladder3", truncate(3).unwrap(), truncate(3).unwrap()),
    ];
    for (name, a, b) in products {
        let p = a.product(&b).unwrap();
        assert!(p.len() <= 200, "{name}");
        out.push((name.to_string(), p));
    }
    out
}

fn distributive_fixtures() -> Vec<(String, FiniteLattice)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("2^{n}"), boolean(n).unwrap()));
    }
    for k in 1..=6 {
        out.push((format!("ladder{k}"), truncate(k).unwrap()));
        out.push((format!("chain{k}"), fx("chain", &[k as u64])));
    }
    for params in [vec![2, 3], vec![1, 2, 3], vec![3, 3, 2], vec![4, 4]] {
        out.push((format!("product{params:?}"), fx("product", &params)));
    }
    for seed in 1..=10 {
        out.push((format!("downsets(7,{seed})"), fx("downsets_of_random_poset", &[7, seed])));
    }
    out.push(("2^4×ladder4".into(), boolean(4).unwrap().product(&truncate(4).unwrap()).unwrap()));
    out
}

fn all_finite_fixtures() -> Vec<(String, FiniteLattice)> {
    let mut out = modular_fixtures();
    out.push(("N5".into(), fx("pentagon_n5", &[])));
    out.extend(
        distributive_fixtures().into_iter().filter(|(n, _)| n.starts_with("downsets") || n.starts_with("product")),
    );
    out
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for (name, l) in modular_fixtures() {
        if !l.is_modular() {
            return Err(format!("{name} is not modular"));
        }
        let (how, ranges) = class_ranges(&l);
        if let Some(i) = ranges.iter().position(|r| r.0 != r.1) {
            return Err(format!("{name}: class {i} ranges {:?} ({how})", ranges[i]));
        }
        total += 1;
    }
    Ok(format!("{total} modular fixtures, 0 violations"))
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    for (name, l) in distributive_fixtures() {
        if !l.is_distributive() {
            return Err(format!("{name} is not distributive"));
        }
        let (how, ranges) = class_ranges(&l);
        if let Some(r) = ranges.iter().find(|r| r.1 > 1) {
            return Err(format!("{name}: μ up to {} ({how})", r.1));
        }
        total += 1;
    }
    Ok(format!("{total} distributive fixtures, every μ_C in {{0,1}}"))
}

fn criterion_3() -> Outcome {
    let l = m5();
    let classes = oracle_classes(&l);
    let lib = projective_classes(&l);
    let distinct = classes.values().collect::<std::collections::HashSet<_>>().len();
    if distinct != 1 || classes.len() != 6 || lib.len() != 1 || lib[0].members.len() != 6 {
        return Err(format!("{distinct} classes"));
    }
    let mus: Vec<usize> = maximal_chains(&l, usize::MAX).map(|c| c.elements.len() - 1).collect();
    let e = chain_extremes(&l, &lib[0]);
    let (upsilon, lambda) = (e.max + 1, e.min);
    if mus != [2, 2, 2] || upsilon != 3 || lambda != 2 {
        return Err(format!("μ {mus:?}, υ {upsilon}, λ {lambda}"));
    }
    Ok("1 class of 6 coverings, μ=2 on all 3 chains, υ=3, λ=2".into())
}

fn criterion_4() -> Outcome {
    let fixtures = all_finite_fixtures();
    for (name, l) in &fixtures {
        for fl in [fil_lattice(l), idl_lattice(l)] {
            if !is_isomorphic(fl.structure(), l) || !fl.check_embedding().pass {
                return Err(format!("{name}: {:?} completion", fl.kind()));
            }
        }
        if l.is_modular() && !check_embedding_equivalence(l).map(|v| v.pass).unwrap_or(false) {
            return Err(format!("{name}: projective equivalence not preserved"));
        }
    }
    Ok(format!("{} fixtures, Fil and Idl isomorphic, equivalence preserved on modular ones", fixtures.len()))
}

fn max_lemma_pairs(fl: &FilterLattice<'_>) -> Result<usize, String> {
    let s = fl.structure();
    let b = fl.base();
    let set = |i: usize| -> Vec<bool> { (0..b.len()).map(|x| fl.filter(i).contains(x)).collect() };
    let diff = |f: usize, g: usize| -> Vec<bool> { set(f).iter().zip(set(g)).map(|(&a, c)| a && !c).collect() };
    let maxima =
        |d: &[bool]| -> Vec<bool> { (0..b.len()).map(|x| d[x] && !(0..b.len()).any(|y| d[y] && b.lt(x, y))).collect() };
    let and = |a: &[bool], c: &[bool]| -> Vec<bool> { a.iter().zip(c).map(|(&p, &q)| p && q).collect() };
    let mut n = 0;
    for &(f, g) in s.covers() {
        for &(f2, g2) in s.covers() {
            if s.meet(g, f2) != f || s.join(g, f2) != g2 {
                continue;
            }
            n += 1;
            let d = diff(f, g);
            let d2 = diff(f2, g2);
            let fp = set(f2);
            if d2 != and(&fp, &d) || maxima(&d2) != and(&fp, &maxima(&d)) {
                return Err(format!("{}≺{} ↗ {}≺{}", s.name(f), s.name(g), s.name(f2), s.name(g2)));
            }
        }
    }
    Ok(n)
}

fn criterion_5() -> Outcome {
    let mut pairs = 0;
    let mut count = 0;
    for (name, l) in modular_fixtures().into_iter().filter(|(_, l)| l.len() <= 50) {
        pairs += max_lemma_pairs(&fil_lattice(&l)).map_err(|w| format!("{name}: {w}"))?;
        let (v, _) = check_max_lemma(&idl_lattice(&l));
        if !v.pass {
            return Err(format!("{name} ideals: {:?}", v.witness));
        }
        count += 1;
    }
    Ok(format!("{count} fixtures, {pairs} transposed pairs, both identities hold, dual holds in Idl"))
}

fn criterion_6() -> Outcome {
    // ⊥=0 a=1 b=2 c=3 ⊤=4; F=Fg{⊥}, G=Fg{b}, H=Fg{c}, K=Fg{⊤}
    let l = m5();
    let fl = fil_lattice(&l);
    let s = fl.structure();
    let (f, g, h, k) = (fl.embed(0), fl.embed(2), fl.embed(3), fl.embed(4));
    if !(s.is_cover(f, g) && s.is_cover(h, k) && s.meet(g, h) == f && s.join(g, h) == k) {
        return Err("F≺G ↗ H≺K does not hold".into());
    }
    let in_fg = fl.filter(f).contains(1) && !fl.filter(g).contains(1);
    let above: Vec<usize> =
        (0..l.len()).filter(|&w| fl.filter(h).contains(w) && !fl.filter(k).contains(w) && l.leq(1, w)).collect();
    if !in_fg || !above.is_empty() {
        return Err(format!("a ∈ F−G: {in_fg}, elements of H−K above a: {above:?}"));
    }
    Ok("F≺G ↗ H≺K, a ∈ F−G, nothing in H−K above a".into())
}

fn bisect_sqrt(n: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, n.min(1 << 32) + 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if mid * mid <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn memo_lambda(n: u64, memo: &mut HashMap<u64, u64>) -> u64 {
    if n == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&n) {
        return v;
    }
    let v = 1 + memo_lambda(bisect_sqrt(n) - 1, memo);
    memo.insert(n, v);
    v
}

fn criterion_7() -> Outcome {
    const N: u64 = 1_000_000;
    let mut prev = 0;
    for n in 0..=N {
        let v = sqrt_descent(n);
        if v < prev || v > n.isqrt() {
            return Err(format!("n={n}: Λ={v}"));
        }
        prev = v;
    }
    let mut memo = HashMap::new();
    let top = sqrt_descent(N);
    let oracle = memo_lambda(N, &mut memo);
    if top != oracle {
        return Err(format!("Λ(10^6) = {top}, oracle {oracle}"));
    }
    let mut checks = 0;
    for (name, l) in modular_fixtures() {
        for c in projective_classes(&l) {
            let r = check_lambda_theorem(&l, &c).map_err(|e| format!("{name}: {e}"))?;
            if !r.pass {
                return Err(format!("{name} K{}: μ {} < Λ({}) = {}", c.id, r.min_mu, r.n, r.bound));
            }
            checks += 1;
        }
    }
    Ok(format!("monotone, ≤ ⌊√n⌋ to 10^6; Λ(10^6) = {top} = oracle; Λ bound on {checks} classes"))
}

fn criterion_8() -> Outcome {
    let c1 = ladder_mu(ChainDescriptor::C1, LadderClass::A).map_err(|e| e.to_string())?;
    let c2 = ladder_mu(ChainDescriptor::C2, LadderClass::A).map_err(|e| e.to_string())?;
    if c1.to_string() != "1" || c2.to_string() != "0" {
        return Err(format!("μ_C1[A]={c1} μ_C2[A]={c2}"));
    }
    let catalog: Vec<FilChainDescriptor> =
        (1..=50).map(FilChainDescriptor::ViaX).chain([FilChainDescriptor::ViaFy]).collect();
    for d in &catalog {
        let m = ladder_fil_mu(*d, FilClass::Ladder(LadderClass::A)).map_err(|e| e.to_string())?;
        if m.to_string() != "1" {
            return Err(format!("{d}: μ[A]={m}"));
        }
    }
    for k in 1..=20 {
        let v = truncation_consistency(k).map_err(|e| e.to_string())?;
        if !v.pass {
            return Err(format!("{}: {:?}", v.name, v.witness));
        }
    }
    let bot =
        classify_fil_covering(LadderFilElement::PrincipalBot, LadderFilElement::Fx, 20).map_err(|e| e.to_string())?;
    let fxy = classify_fil_covering(LadderFilElement::Fx, LadderFilElement::Fy, 20).map_err(|e| e.to_string())?;
    if bot != CoveringKind::QuasiAtomic || fxy != CoveringKind::Atomic {
        return Err(format!("⟨⊥,Fx⟩ {bot}, Fx≺Fy {fxy}"));
    }
    Ok(format!(
        "μ_C1[A]=1, μ_C2[A]=0; μ[A]=1 on {} Fil chains; truncations 1..20 consistent; ⟨⊥,Fx⟩ quasi-atomic, Fx≺Fy atomic",
        catalog.len()
    ))
}

fn criterion_9() -> Outcome {
    let b2 = BoolAlgebra::standard(2).unwrap();
    let pool = default_pool(&b2).unwrap();
    let exhaustive = exhaustive_sweep(&b2, &pool, coverage_iff);
    let r3 = random_sweep(3, 10_000, 3, coverage_iff).map_err(|e| e.to_string())?;
    let r4 = random_sweep(4, 10_000, 4, coverage_iff).map_err(|e| e.to_string())?;

    let mut trivial_cases = 0;
    let mut trivial_fail = None;
    for g in 1..=3 {
        let b = BoolAlgebra::standard(g).unwrap();
        let pool = match g {
            3 => wide_pool(&b).unwrap(),
            2 => default_pool(&b).unwrap(),
            _ => vec![InferenceInstance::new(vec![b.var(0)], b.var(0).not())],
        };
        let s = trivial_equivalence_sweep(&b, &pool);
        // independent spot check of the definition on the pool itself
        for inst in &pool {
            let direct =
                (0..b.assignments()).all(|a| !inst.premises.iter().all(|p| p.eval(a)) || inst.conclusion.eval(a));
            if direct != is_trivial_instance(&b, inst) || direct != covered(&b, std::slice::from_ref(inst)).is_empty() {
                trivial_fail.get_or_insert(format!("g={g} pool instance"));
            }
        }
        trivial_cases += s.cases;
        if let Some(w) = s.first_failure {
            trivial_fail.get_or_insert(w);
        }
    }

    let summary = format!(
        "g=2 exhaustive {}/{} pass; g=3 random {}/{} pass; g=4 random {}/{} pass; trivial ⇔ covers-∅ {} over {trivial_cases} instances",
        exhaustive.cases - exhaustive.failures,
        exhaustive.cases,
        r3.cases - r3.failures,
        r3.cases,
        r4.cases - r4.failures,
        r4.cases,
        if trivial_fail.is_none() { "holds" } else { "FAILS" },
    );
    if exhaustive.pass() && r3.pass() && r4.pass() && trivial_fail.is_none() {
        Ok(summary)
    } else {
        let first =
            exhaustive.first_failure.or(r3.first_failure).or(r4.first_failure).or(trivial_fail).unwrap_or_default();
        Err(format!("{summary}; first failure: {first}"))
    }
}

fn criterion_10() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_latlab");
    let mut outputs = Vec::new();
    for args in [&["selftest"][..], &["selftest"][..], &["--json", "selftest"][..], &["--json", "selftest"][..]] {
        let out = Command::new(exe).args(args).env_remove("LATLAB_MAX_CHAINS").output().map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("{args:?} exited with {:?}", out.status.code()));
        }
        outputs.push(out.stdout);
    }
    if outputs[0] != outputs[1] || outputs[2] != outputs[3] {
        return Err("reports differ between runs".into());
    }
    let json: serde_json::Value = serde_json::from_slice(&outputs[2]).map_err(|e| e.to_string())?;
    if json["format"] != 1 {
        return Err("JSON report lacks format 1".into());
    }
    Ok(format!("text and JSON reports byte-identical across runs ({} bytes), exit 0", outputs[0].len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("multiplicity invariance on modular fixtures", criterion_1),
        ("distributive multiplicity bound", criterion_2),
        ("M5 ground truth", criterion_3),
        ("Fil L ≅ L and Idl L ≅ L", criterion_4),
        ("max-difference transport", criterion_5),
        ("M5 filter counterexample", criterion_6),
        ("Λ function and bound", criterion_7),
        ("ladder witness", criterion_8),
        ("entailment iff coverage", criterion_9),
        ("selftest determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
