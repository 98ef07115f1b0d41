//! Deterministic suite over the bundled fixtures.

use latlab_core::chains::{
    chain_extremes, check_lambda_theorem, collect_chains, mu_c, sqrt_descent, DEFAULT_CHAIN_LIMIT,
};
use latlab_core::completions::{
    check_embedding_equivalence, check_max_lemma, fil_lattice, idl_lattice, max_diff, principal_filter,
};
use latlab_core::coverings::{transposes_up, ClassMap, Covering};
use latlab_core::fixtures::{boolean, gen_fixture, m5, n5, subspace_lattice};
use latlab_core::lattice::is_isomorphic;
use latlab_core::omega::{ladder_regularity_witness, omega_checks, truncate};
use latlab_core::proof::{
    check_soundness, default_pool, exhaustive_sweep, pretheory_from, verify_coverage_theorem, BoolAlgebra,
    InferenceInstance,
};
use latlab_core::{FiniteLattice, LatticeFile, Verdict};

use crate::report::Report;

pub fn bundled_fixtures() -> Vec<(String, FiniteLattice)> {
    let mut out = vec![("M5".to_string(), m5()), ("N5".to_string(), n5())];
    for n in 1..=4 {
        out.push((format!("boolean {n}"), boolean(n).expect("fixture")));
    }
    for (p, d) in [(2, 2), (2, 3), (3, 2)] {
        out.push((format!("GF({p})^{d}"), subspace_lattice(p, d).expect("fixture")));
    }
    for k in 1..=6 {
        out.push((format!("ladder {k}"), truncate(k).expect("fixture")));
    }
    for params in [vec![2, 3], vec![1, 2, 3], vec![4, 4]] {
        let name = format!("product {params:?}");
        out.push((name, gen_fixture("product", &params).expect("fixture")));
    }
    out.push(("M5 × 2-chain".into(), m5().product(&gen_fixture("chain", &[1]).expect("fixture")).expect("fixture")));
    out.push(("random downsets 6/7".into(), gen_fixture("downsets_of_random_poset", &[6, 7]).expect("fixture")));
    out
}

fn fixture_checks(name: &str, l: &FiniteLattice, r: &mut Report) {
    let back = LatticeFile::from_json(&l.to_file().to_json()).and_then(|f| f.build());
    r.verdict(Verdict::from_result(
        format!("{name}: JSON round trip"),
        match back {
            Ok(b) if is_isomorphic(&b, l) => Ok(()),
            _ => Err("reload failed".into()),
        },
    ));
    let classes = ClassMap::new(l);
    if l.is_modular() {
        let bad: Vec<usize> = classes
            .classes()
            .iter()
            .filter(|k| {
                let e = chain_extremes(l, k);
                e.min != e.max
            })
            .map(|k| k.id)
            .collect();
        r.verdict(Verdict::from_result(
            format!("{name}: μ_C invariant"),
            if bad.is_empty() { Ok(()) } else { Err(format!("classes {bad:?}")) },
        ));
        let lambda_fail =
            classes.classes().iter().find(|k| !check_lambda_theorem(l, k).map(|c| c.pass).unwrap_or(false));
        r.verdict(Verdict::from_result(
            format!("{name}: Λ bound"),
            lambda_fail.map_or(Ok(()), |k| Err(format!("K{}", k.id))),
        ));
        let mut v = check_embedding_equivalence(l).unwrap_or_else(|e| Verdict::fail("embedding", e.to_string()));
        v.name = format!("{name}: {}", v.name);
        r.verdict(v);
    }
    if l.is_distributive() {
        let worst = classes.classes().iter().map(|k| chain_extremes(l, k).max).max().unwrap_or(0);
        r.verdict(Verdict::from_result(
            format!("{name}: μ_C ≤ 1"),
            if worst <= 1 { Ok(()) } else { Err(format!("μ {worst}")) },
        ));
    }
    let fl = fil_lattice(l);
    let mut v = fl.check_embedding();
    v.name = format!("{name}: {}", v.name);
    r.verdict(v);
    let il = idl_lattice(l);
    let mut v = il.check_embedding();
    v.name = format!("{name}: {}", v.name);
    r.verdict(v);
    if l.is_modular() && l.len() <= 50 {
        let (mut v, _) = check_max_lemma(&fl);
        v.name = format!("{name}: {}", v.name);
        r.verdict(v);
    }
}

fn m5_checks(r: &mut Report) {
    let l = m5();
    let classes = ClassMap::new(&l);
    let (chains, _) = collect_chains(&l, DEFAULT_CHAIN_LIMIT);
    let k = classes.class(0);
    let counts: Vec<usize> = chains.iter().map(|c| mu_c(&l, &c.elements, k).expect("chain")).collect();
    let e = chain_extremes(&l, k);
    r.verdict(Verdict::from_result(
        "M5 ground truth",
        if classes.classes().len() == 1
            && k.members.len() == 6
            && counts.iter().all(|&c| c == 2)
            && e.max + 1 == 3
            && e.min == 2
        {
            Ok(())
        } else {
            Err(format!("{} classes, counts {counts:?}", classes.classes().len()))
        },
    ));

    let fl = fil_lattice(&l);
    let (f, g, h, kk) = (fl.embed(0), fl.embed(2), fl.embed(3), fl.embed(4));
    let a = 1;
    let transposed = transposes_up(fl.structure(), &Covering::new(f, g), &Covering::new(h, kk));
    let in_diff = fl.difference(f, g).map(|d| d.contains(&a)).unwrap_or(false);
    let none_above = fl.difference(h, kk).map(|d| d.iter().all(|&w| !l.leq(a, w))).unwrap_or(false);
    r.verdict(Verdict::from_result(
        "M5 filter counterexample",
        if transposed && in_diff && none_above { Ok(()) } else { Err("configuration not reproduced".into()) },
    ));
    let maxes = max_diff(&fl, f, g).unwrap_or_default();
    r.verdict(Verdict::from_result(
        "M5 max-difference of Fg{⊥}≺Fg{b}",
        if maxes == [1, 3] && principal_filter(&l, 2).contains(4) { Ok(()) } else { Err(format!("{maxes:?}")) },
    ));
}

fn lambda_series(r: &mut Report) {
    const N: u64 = 100_000;
    let mut prev = 0;
    let mut bad = None;
    for n in 0..=N {
        let v = sqrt_descent(n);
        if v < prev || v > n.isqrt() {
            bad = Some(n);
            break;
        }
        prev = v;
    }
    r.verdict(Verdict::from_result(
        format!("Λ monotone and ≤ ⌊√n⌋ up to {N}"),
        bad.map_or(Ok(()), |n| Err(format!("n={n}"))),
    ));
}

fn ladder_checks(r: &mut Report) {
    match ladder_regularity_witness(6) {
        Ok(w) => r.verdict(Verdict::from_result(
            "ladder witness",
            if !w.class_a_weakly_regular && !w.class_a_lower_regular && w.fil_class_a_multiplicity_constant {
                Ok(())
            } else {
                Err(format!("{w:?}"))
            },
        )),
        Err(e) => r.verdict(Verdict::fail("ladder witness", e.to_string())),
    }
    match omega_checks(20) {
        Ok(vs) => {
            let failed: Vec<&Verdict> = vs.iter().filter(|v| !v.pass).collect();
            r.verdict(Verdict::from_result(
                format!("ladder truncation checks ({} checks)", vs.len()),
                match failed.first() {
                    None => Ok(()),
                    Some(v) => Err(v.name.clone()),
                },
            ));
        }
        Err(e) => r.verdict(Verdict::fail("ladder truncation checks", e.to_string())),
    }
}

fn proof_checks(r: &mut Report) {
    let b = BoolAlgebra::standard(2).expect("g=2");
    let p = b.var(0);
    let q = b.var(1);
    let q_from_p = InferenceInstance::new(vec![p.clone()], q.clone());
    let t = pretheory_from(&b, std::slice::from_ref(&p));
    let mp_t = pretheory_from(&b, &[p.and(&p.implies(&q))]);
    let examples = [
        ("T=Fg{p}, P=q, N={q from p}", verify_coverage_theorem(&b, &t, &q, std::slice::from_ref(&q_from_p))),
        ("T=Fg{p}, P=q, N={}", verify_coverage_theorem(&b, &t, &q, &[])),
        ("T=Fg{p∧(p→q)}, P=q, N={}", verify_coverage_theorem(&b, &mp_t, &q, &[])),
    ];
    for (name, v) in examples {
        r.verdict(Verdict::from_result(
            format!("proof example {name}"),
            if v.pass { Ok(()) } else { Err(format!("derivable={} covered={}", v.derivable, v.covered)) },
        ));
    }
    let pool = default_pool(&b).expect("pool parses");
    let sweep = exhaustive_sweep(&b, &pool, check_soundness);
    r.verdict(Verdict::from_result(
        format!("derivable goals have covered steps ({} cases)", sweep.cases),
        sweep.first_failure.map_or(Ok(()), Err),
    ));
}

pub fn run() -> Report {
    let fixtures = bundled_fixtures();
    let manifest: String = fixtures.iter().map(|(n, l)| format!("{n}:{}\n", l.to_file().to_json())).collect();
    let mut r = Report::new("selftest", manifest.as_bytes());
    r.section(
        "fixtures",
        fixtures
            .iter()
            .map(|(n, l)| {
                format!("{n}: {} elements, modular={} distributive={}", l.len(), l.is_modular(), l.is_distributive())
            })
            .collect(),
    );
    for (name, l) in &fixtures {
        fixture_checks(name, l, &mut r);
    }
    m5_checks(&mut r);
    lambda_series(&mut r);
    ladder_checks(&mut r);
    proof_checks(&mut r);
    r
}
