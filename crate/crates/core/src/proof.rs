//! Propositions over finitely many generators, pretheories, inference
//! instances and their step sets.
//!
//! A proposition is its truth table: bit `a` is its value at assignment `a`,
//! where the first generator is the most significant bit of `a`. An
//! assignment is the same thing as an ultrafilter (the principal filter of
//! an atom), so step sets are sets of assignments.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolAlgebra {
    names: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prop {
    bits: FixedBitSet,
}

impl fmt::Debug for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prop({self})")
    }
}

/// The truth table, assignment 0 first.
impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.bits.len() {
            f.write_str(if self.bits.contains(a) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Prop {
    pub fn and(&self, other: &Prop) -> Prop {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Prop { bits }
    }

    pub fn or(&self, other: &Prop) -> Prop {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Prop { bits }
    }

    pub fn not(&self) -> Prop {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Prop { bits }
    }

    /// `¬self ∨ other`.
    pub fn implies(&self, other: &Prop) -> Prop {
        self.not().or(other)
    }

    pub fn leq(&self, other: &Prop) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn eval(&self, assignment: usize) -> bool {
        self.bits.contains(assignment)
    }

    pub fn is_top(&self) -> bool {
        self.bits.is_full()
    }

    pub fn is_bottom(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.bits
    }
}

impl BoolAlgebra {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(names.len()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && n != "true"
                && n != "false";
            if !ok || names[..i].contains(n) {
                return Err(Error::Input(format!("bad generator name {n:?}")));
            }
        }
        Ok(BoolAlgebra { names })
    }

    /// Generators named `p, q, r, …`.
    pub fn standard(g: usize) -> Result<Self> {
        const LETTERS: &str = "pqrstuvwxyzabcde";
        if g > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(g));
        }
        let names: Vec<String> = LETTERS.chars().take(g).map(String::from).collect();
        Self::new(&names)
    }

    pub fn generators(&self) -> &[String] {
        &self.names
    }

    pub fn g(&self) -> usize {
        self.names.len()
    }

    pub fn assignments(&self) -> usize {
        1 << self.g()
    }

    pub fn top(&self) -> Prop {
        let mut bits = FixedBitSet::with_capacity(self.assignments());
        bits.insert_range(..);
        Prop { bits }
    }

    pub fn bottom(&self) -> Prop {
        Prop { bits: FixedBitSet::with_capacity(self.assignments()) }
    }

    pub fn var(&self, i: usize) -> Prop {
        let g = self.g();
        let mut bits = FixedBitSet::with_capacity(self.assignments());
        bits.extend((0..self.assignments()).filter(|a| (a >> (g - 1 - i)) & 1 == 1));
        Prop { bits }
    }

    /// The atom true exactly at `assignment`.
    pub fn atom(&self, assignment: usize) -> Prop {
        let mut p = self.bottom();
        p.bits.insert(assignment);
        p
    }

    pub fn value(&self, assignment: usize, generator: usize) -> bool {
        (assignment >> (self.g() - 1 - generator)) & 1 == 1
    }

    /// Builds a proposition from a table string such as `"1101"`.
    pub fn from_table(&self, table: &str) -> Result<Prop> {
        if table.len() != self.assignments() {
            return Err(Error::Input(format!("table needs {} bits", self.assignments())));
        }
        let mut p = self.bottom();
        for (a, c) in table.chars().enumerate() {
            match c {
                '1' => p.bits.insert(a),
                '0' => {}
                _ => return Err(Error::Input(format!("bad table digit {c:?}"))),
            }
        }
        Ok(p)
    }

    /// Proposition with the given table index, bit `a` of `code` at assignment `a`.
    pub fn from_code(&self, code: u64) -> Prop {
        let mut p = self.bottom();
        p.bits.extend((0..self.assignments().min(64)).filter(|a| code >> a & 1 == 1));
        p
    }

    pub fn random(&self, rng: &mut impl Rng) -> Prop {
        let mut p = self.bottom();
        p.bits.extend((0..self.assignments()).filter(|_| rng.gen::<bool>()));
        p
    }

    /// `p=1 q=0`
    pub fn assignment_row(&self, a: usize) -> String {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{n}={}", u8::from(self.value(a, i))))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(&self, text: &str) -> Result<Prop> {
        Parser::new(self, text)?.parse()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    algebra: &'a BoolAlgebra,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '!' | '¬' | '~' => {
                it.next();
                out.push((Tok::Not, pos));
            }
            '&' | '∧' => {
                it.next();
                out.push((Tok::And, pos));
            }
            '|' | '∨' => {
                it.next();
                out.push((Tok::Or, pos));
            }
            '→' => {
                it.next();
                out.push((Tok::Implies, pos));
            }
            '-' => {
                it.next();
                match it.next() {
                    Some((_, '>')) => out.push((Tok::Implies, pos)),
                    _ => return Err(Error::Parse { pos, msg: "expected '->'".into() }),
                }
            }
            '(' => {
                it.next();
                out.push((Tok::LParen, pos));
            }
            ')' => {
                it.next();
                out.push((Tok::RParen, pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            }
            _ => return Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") }),
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(algebra: &'a BoolAlgebra, text: &str) -> Result<Self> {
        Ok(Parser { algebra, toks: tokenize(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn parse(mut self) -> Result<Prop> {
        let p = self.implication()?;
        match self.peek() {
            Tok::End => Ok(p),
            _ => Err(Error::Parse { pos: self.pos(), msg: "unexpected trailing input".into() }),
        }
    }

    fn implication(&mut self) -> Result<Prop> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(&rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Prop> {
        let mut p = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            p = p.or(&self.conjunction()?);
        }
        Ok(p)
    }

    fn conjunction(&mut self) -> Result<Prop> {
        let mut p = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            p = p.and(&self.unary()?);
        }
        Ok(p)
    }

    fn unary(&mut self) -> Result<Prop> {
        let pos = self.pos();
        match self.bump() {
            Tok::Not => Ok(self.unary()?.not()),
            Tok::LParen => {
                let p = self.implication()?;
                match self.bump() {
                    Tok::RParen => Ok(p),
                    _ => Err(Error::Parse { pos: self.toks[self.at.saturating_sub(1)].1, msg: "expected ')'".into() }),
                }
            }
            Tok::Ident(s) if s == "true" => Ok(self.algebra.top()),
            Tok::Ident(s) if s == "false" => Ok(self.algebra.bottom()),
            Tok::Ident(s) => match self.algebra.names.iter().position(|n| *n == s) {
                Some(i) => Ok(self.algebra.var(i)),
                None => Err(Error::UnknownGenerator(s)),
            },
            Tok::End => Err(Error::Parse { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Parse { pos, msg: format!("unexpected {t:?}") }),
        }
    }
}

/// A filter of the algebra, held by its generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pretheory {
    pub generator: Prop,
}

impl Pretheory {
    pub fn contains(&self, q: &Prop) -> bool {
        self.generator.leq(q)
    }

    /// `self ≤ other` in the filter order, i.e. `self ⊇ other`.
    pub fn leq(&self, other: &Pretheory) -> bool {
        self.generator.leq(&other.generator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InferenceInstance {
    pub premises: Vec<Prop>,
    pub conclusion: Prop,
}

impl InferenceInstance {
    pub fn new(premises: Vec<Prop>, conclusion: Prop) -> Self {
        InferenceInstance { premises, conclusion }
    }

    pub fn parse(b: &BoolAlgebra, premises: &[&str], conclusion: &str) -> Result<Self> {
        let premises = premises.iter().map(|p| b.parse(p)).collect::<Result<_>>()?;
        Ok(InferenceInstance { premises, conclusion: b.parse(conclusion)? })
    }

    fn premise_meet(&self, b: &BoolAlgebra) -> Prop {
        self.premises.iter().fold(b.top(), |acc, p| acc.and(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    pub assignments: FixedBitSet,
}

impl StepSet {
    pub fn is_empty(&self) -> bool {
        self.assignments.is_clear()
    }

    pub fn len(&self) -> usize {
        self.assignments.count_ones(..)
    }

    pub fn is_subset(&self, other: &StepSet) -> bool {
        self.assignments.is_subset(&other.assignments)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignments.ones()
    }

    pub fn rows(&self, b: &BoolAlgebra) -> Vec<String> {
        self.iter().map(|a| b.assignment_row(a)).collect()
    }
}

pub fn pretheory_from(b: &BoolAlgebra, premises: &[Prop]) -> Pretheory {
    Pretheory { generator: premises.iter().fold(b.top(), |acc, p| acc.and(p)) }
}

/// Least pretheory containing `t` and closed under the instances: fire every
/// instance whose premises all lie in the current pretheory until nothing
/// changes.
pub fn closure(t: &Pretheory, n: &[InferenceInstance]) -> Pretheory {
    let mut gen = t.generator.clone();
    loop {
        let mut changed = false;
        for inst in n {
            if inst.premises.iter().all(|p| gen.leq(p)) && !gen.leq(&inst.conclusion) {
                gen = gen.and(&inst.conclusion);
                changed = true;
            }
        }
        if !changed {
            return Pretheory { generator: gen };
        }
    }
}

/// Ultrafilters containing `t` but not `p`.
pub fn steps(t: &Pretheory, p: &Prop) -> StepSet {
    let mut s = t.generator.bits.clone();
    s.difference_with(&p.bits);
    StepSet { assignments: s }
}

/// Ultrafilters at which some instance has all premises but not its conclusion.
pub fn covered(b: &BoolAlgebra, n: &[InferenceInstance]) -> StepSet {
    let mut s = FixedBitSet::with_capacity(b.assignments());
    for inst in n {
        let mut c = inst.premise_meet(b).bits;
        c.difference_with(&inst.conclusion.bits);
        s.union_with(&c);
    }
    StepSet { assignments: s }
}

pub fn is_trivial_instance(b: &BoolAlgebra, inst: &InferenceInstance) -> bool {
    inst.premise_meet(b).leq(&inst.conclusion)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageVerdict {
    /// `P ∈ T′`.
    pub derivable: bool,
    /// `steps(T, P) ⊆ covered(N)`.
    pub covered: bool,
    pub pass: bool,
    /// An uncovered step when `P ∈ T′`, or an ultrafilter containing `T′`
    /// but not `P` when the steps are covered yet `P ∉ T′`.
    pub counterexample: Option<usize>,
}

/// Checks `P ∈ closure(T, N)` iff `N` covers `steps(T, P)`.
pub fn verify_coverage_theorem(b: &BoolAlgebra, t: &Pretheory, p: &Prop, n: &[InferenceInstance]) -> CoverageVerdict {
    let t_prime = closure(t, n);
    let derivable = t_prime.contains(p);
    let st = steps(t, p);
    let cov = covered(b, n);
    let covered = st.is_subset(&cov);
    let counterexample = match (derivable, covered) {
        (true, false) => st.iter().find(|&a| !cov.assignments.contains(a)),
        (false, true) => steps(&t_prime, p).iter().next(),
        _ => None,
    };
    CoverageVerdict { derivable, covered, pass: derivable == covered, counterexample }
}

/// The one-way statement: `P ∈ T′` implies `N` covers `steps(T, P)`.
pub fn check_soundness(b: &BoolAlgebra, t: &Pretheory, p: &Prop, n: &[InferenceInstance]) -> bool {
    !closure(t, n).contains(p) || steps(t, p).is_subset(&covered(b, n))
}

/// Replays `proof` from `t`: each instance must have its premises in the
/// current pretheory, after which its conclusion joins it. Returns the final
/// pretheory, or the index of the first instance that cannot fire.
pub fn replay_proof(t: &Pretheory, proof: &[InferenceInstance]) -> std::result::Result<Pretheory, usize> {
    let mut gen = t.generator.clone();
    for (i, inst) in proof.iter().enumerate() {
        if !inst.premises.iter().all(|p| gen.leq(p)) {
            return Err(i);
        }
        gen = gen.and(&inst.conclusion);
    }
    Ok(Pretheory { generator: gen })
}

/// Six instances over `p, q`, trivial and not.
pub fn default_pool(b: &BoolAlgebra) -> Result<Vec<InferenceInstance>> {
    [
        (&["p"][..], "q"),
        (&["p", "q"][..], "p & q"),
        (&["p", "p -> q"][..], "q"),
        (&["q"][..], "p"),
        (&["p"][..], "p | q"),
        (&["!q"][..], "!p"),
    ]
    .iter()
    .map(|(from, to)| InferenceInstance::parse(b, from, to))
    .collect()
}

/// Twelve instances over `p, q, r`.
pub fn wide_pool(b: &BoolAlgebra) -> Result<Vec<InferenceInstance>> {
    [
        (&["p"][..], "q"),
        (&["p", "q"][..], "p & q"),
        (&["p", "p -> q"][..], "q"),
        (&["p -> q", "q -> r"][..], "p -> r"),
        (&["p | q", "!p"][..], "q"),
        (&["p"][..], "p | r"),
        (&["q & r"][..], "r"),
        (&["r"][..], "p & r"),
        (&["p -> q"][..], "q -> p"),
        (&[][..], "p | !p"),
        (&[][..], "r"),
        (&["!(p & q)"][..], "!p | !q"),
    ]
    .iter()
    .map(|(from, to)| InferenceInstance::parse(b, from, to))
    .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub cases: u64,
    pub failures: u64,
    /// Description of the first failing case.
    pub first_failure: Option<String>,
}

impl SweepResult {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

fn subset_of<T: Clone>(pool: &[T], mask: u64) -> Vec<T> {
    pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect()
}

fn describe_case(t: &Pretheory, p: &Prop, mask: u64, v: &CoverageVerdict) -> String {
    format!("T=Fg{{{}}} P={} N=subset {mask:#b}: derivable={} covered={}", t.generator, p, v.derivable, v.covered)
}

/// All pretheory generators, goals and pool subsets at the pool's algebra.
/// `check` picks the statement under test.
pub fn exhaustive_sweep(
    b: &BoolAlgebra,
    pool: &[InferenceInstance],
    check: fn(&BoolAlgebra, &Pretheory, &Prop, &[InferenceInstance]) -> bool,
) -> SweepResult {
    let size = 1u64 << b.assignments();
    let mut out = SweepResult::default();
    for tc in 0..size {
        let t = Pretheory { generator: b.from_code(tc) };
        for pc in 0..size {
            let p = b.from_code(pc);
            for mask in 0..(1u64 << pool.len()) {
                let n = subset_of(pool, mask);
                out.record(check(b, &t, &p, &n), || {
                    describe_case(&t, &p, mask, &verify_coverage_theorem(b, &t, &p, &n))
                });
            }
        }
    }
    out
}

pub fn coverage_iff(b: &BoolAlgebra, t: &Pretheory, p: &Prop, n: &[InferenceInstance]) -> bool {
    verify_coverage_theorem(b, t, p, n).pass
}

/// Random instances with up to two premises drawn from `formulas`, or fully
/// random tables when `formulas` is empty.
fn random_instance(b: &BoolAlgebra, rng: &mut ChaCha8Rng, formulas: &[Prop]) -> InferenceInstance {
    let pick = |rng: &mut ChaCha8Rng| match formulas.choose(rng) {
        Some(f) => f.clone(),
        None => b.random(rng),
    };
    let k = rng.gen_range(0..=2);
    let premises = (0..k).map(|_| pick(rng)).collect();
    InferenceInstance { premises, conclusion: pick(rng) }
}

/// `cases` random `(T, P, N)` triples at `g` generators. Pretheories,
/// goals and instance formulas are drawn from generators, their negations
/// and pairwise combinations so that instances actually fire.
pub fn random_sweep(
    g: usize,
    cases: u64,
    seed: u64,
    check: fn(&BoolAlgebra, &Pretheory, &Prop, &[InferenceInstance]) -> bool,
) -> Result<SweepResult> {
    let b = BoolAlgebra::standard(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut formulas: Vec<Prop> = vec![b.top()];
    for i in 0..g {
        formulas.push(b.var(i));
        formulas.push(b.var(i).not());
        for j in i + 1..g {
            formulas.push(b.var(i).and(&b.var(j)));
            formulas.push(b.var(i).or(&b.var(j)));
            formulas.push(b.var(i).implies(&b.var(j)));
        }
    }
    let mut out = SweepResult::default();
    for _ in 0..cases {
        let t = Pretheory {
            generator: if rng.gen_bool(0.5) {
                formulas.choose(&mut rng).expect("nonempty").clone()
            } else {
                b.random(&mut rng)
            },
        };
        let p =
            if rng.gen_bool(0.5) { formulas.choose(&mut rng).expect("nonempty").clone() } else { b.random(&mut rng) };
        let len = rng.gen_range(0..=4);
        let pool = if rng.gen_bool(0.75) { &formulas[..] } else { &[][..] };
        let n: Vec<InferenceInstance> = (0..len).map(|_| random_instance(&b, &mut rng, pool)).collect();
        out.record(check(&b, &t, &p, &n), || {
            let v = verify_coverage_theorem(&b, &t, &p, &n);
            format!(
                "g={g} T=Fg{{{}}} P={} |N|={}: derivable={} covered={}",
                t.generator,
                p,
                n.len(),
                v.derivable,
                v.covered
            )
        });
    }
    Ok(out)
}

/// `is_trivial_instance(i)` iff `covered({i})` is empty, over every
/// single-premise instance at `g` generators plus the given pool.
pub fn trivial_equivalence_sweep(b: &BoolAlgebra, pool: &[InferenceInstance]) -> SweepResult {
    let mut out = SweepResult::default();
    let mut check = |inst: &InferenceInstance| {
        let ok = is_trivial_instance(b, inst) == covered(b, std::slice::from_ref(inst)).is_empty();
        out.record(ok, || format!("{:?} ⊢ {}", inst.premises, inst.conclusion));
    };
    let size = 1u64 << b.assignments();
    if b.g() <= 3 {
        for pc in 0..size {
            for cc in 0..size {
                check(&InferenceInstance::new(vec![b.from_code(pc)], b.from_code(cc)));
            }
        }
    }
    for inst in pool {
        check(inst);
    }
    out
}

/// JSON proof problem:
/// `{"generators":[..], "premises":[..], "goal":"..", "instances":[{"from":[..],"to":".."}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofProblem {
    pub generators: Vec<String>,
    #[serde(default)]
    pub premises: Vec<String>,
    pub goal: String,
    #[serde(default)]
    pub instances: Vec<InstanceText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceText {
    #[serde(default)]
    pub from: Vec<String>,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofOutcome {
    pub generators: Vec<String>,
    pub pretheory: String,
    pub closure: String,
    pub goal: String,
    pub steps: Vec<String>,
    pub covered: Vec<String>,
    pub trivial: Vec<bool>,
    pub derivable: bool,
    pub steps_covered: bool,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl ProofProblem {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn solve(&self) -> Result<ProofOutcome> {
        let b = BoolAlgebra::new(&self.generators)?;
        let premises: Vec<Prop> = self.premises.iter().map(|s| b.parse(s)).collect::<Result<_>>()?;
        let goal = b.parse(&self.goal)?;
        let n: Vec<InferenceInstance> = self
            .instances
            .iter()
            .map(|i| {
                let from: Vec<&str> = i.from.iter().map(String::as_str).collect();
                InferenceInstance::parse(&b, &from, &i.to)
            })
            .collect::<Result<_>>()?;
        let t = pretheory_from(&b, &premises);
        let t_prime = closure(&t, &n);
        let v = verify_coverage_theorem(&b, &t, &goal, &n);
        Ok(ProofOutcome {
            generators: self.generators.clone(),
            pretheory: t.generator.to_string(),
            closure: t_prime.generator.to_string(),
            goal: goal.to_string(),
            steps: steps(&t, &goal).rows(&b),
            covered: covered(&b, &n).rows(&b),
            trivial: n.iter().map(|i| is_trivial_instance(&b, i)).collect(),
            derivable: v.derivable,
            steps_covered: v.covered,
            pass: v.pass,
            counterexample: v.counterexample.map(|a| b.assignment_row(a)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> BoolAlgebra {
        BoolAlgebra::standard(2).unwrap()
    }

    #[test]
    fn parsing() {
        let b = b2();
        assert_eq!(b.parse("p -> q").unwrap().to_string(), "1101");
        assert_eq!(b.parse("p").unwrap().to_string(), "0011");
        assert_eq!(b.parse("q").unwrap().to_string(), "0101");
        assert!(b.parse("true").unwrap().is_top());
        assert!(b.parse("p & !p").unwrap().is_bottom());
        assert_eq!(b.parse("!p | q").unwrap(), b.parse("p -> q").unwrap());
        // right associative: p -> (q -> p) is a tautology
        assert!(b.parse("p -> q -> p").unwrap().is_top());
        assert!(!b.parse("(p -> q) -> p").unwrap().is_top());
        // & binds tighter than |
        assert_eq!(b.parse("p | q & false").unwrap(), b.var(0));
        assert_eq!(b.parse("p ∧ ¬q").unwrap().to_string(), "0010");
    }

    #[test]
    fn parse_errors() {
        let b = b2();
        assert_eq!(b.parse("p & r"), Err(Error::UnknownGenerator("r".into())));
        assert!(matches!(b.parse("p &"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(b.parse("p - q"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(b.parse("(p"), Err(Error::Parse { .. })));
        assert!(matches!(b.parse("p q"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(b.parse("p $ q"), Err(Error::Parse { pos: 2, .. })));
        assert!(BoolAlgebra::standard(17).is_err());
        assert!(BoolAlgebra::new(&["p", "p"]).is_err());
    }

    #[test]
    fn pretheories() {
        let b = b2();
        let t = pretheory_from(&b, &[b.parse("p").unwrap(), b.parse("p -> q").unwrap()]);
        assert_eq!(t.generator, b.parse("p & q").unwrap());
        assert!(pretheory_from(&b, &[]).generator.is_top());
        assert!(pretheory_from(&b, &[b.var(0), b.var(0).not()]).generator.is_bottom());
    }

    #[test]
    fn closures() {
        let b = b2();
        let t = pretheory_from(&b, &[b.var(0)]);
        let q_from_p = InferenceInstance::parse(&b, &["p"], "q").unwrap();
        assert_eq!(closure(&t, &[q_from_p]).generator, b.parse("p & q").unwrap());
        assert_eq!(closure(&t, &[]), t);
        let b3 = BoolAlgebra::standard(3).unwrap();
        let t3 = pretheory_from(&b3, &[b3.var(0)]);
        let r_from_q = InferenceInstance::parse(&b3, &["q"], "r").unwrap();
        assert_eq!(closure(&t3, &[r_from_q]), t3);
    }

    #[test]
    fn step_sets() {
        let b = b2();
        let t = pretheory_from(&b, &[b.var(0)]);
        let s = steps(&t, &b.var(1));
        assert_eq!(s.rows(&b), vec!["p=1 q=0"]);
        assert!(steps(&pretheory_from(&b, &[]), &b.top()).is_empty());
        assert!(steps(&t, &b.parse("p | q").unwrap()).is_empty());
    }

    #[test]
    fn covered_sets() {
        let b = b2();
        let n = [InferenceInstance::parse(&b, &["p"], "q").unwrap()];
        assert_eq!(covered(&b, &n).rows(&b), vec!["p=1 q=0"]);
        let mp = [InferenceInstance::parse(&b, &["p", "p -> q"], "q").unwrap()];
        assert!(covered(&b, &mp).is_empty());
        assert!(covered(&b, &[]).is_empty());
    }

    #[test]
    fn trivial_instances() {
        let b = b2();
        assert!(is_trivial_instance(&b, &InferenceInstance::parse(&b, &["p", "q"], "p & q").unwrap()));
        assert!(is_trivial_instance(&b, &InferenceInstance::parse(&b, &["p", "p -> q"], "q").unwrap()));
        assert!(!is_trivial_instance(&b, &InferenceInstance::parse(&b, &["p"], "q").unwrap()));
    }

    #[test]
    fn coverage_examples() {
        let b = b2();
        let t = pretheory_from(&b, &[b.var(0)]);
        let q = b.var(1);
        let n = [InferenceInstance::parse(&b, &["p"], "q").unwrap()];
        let v = verify_coverage_theorem(&b, &t, &q, &n);
        assert!(v.derivable && v.covered && v.pass);
        let v = verify_coverage_theorem(&b, &t, &q, &[]);
        assert!(!v.derivable && !v.covered && v.pass);
        let t2 = pretheory_from(&b, &[b.parse("p & (p -> q)").unwrap()]);
        let v = verify_coverage_theorem(&b, &t2, &q, &[]);
        assert!(v.derivable && v.covered && v.pass);
    }

    #[test]
    fn coverage_gap() {
        // steps covered, goal underivable: the instance needs p, which T lacks
        let b = b2();
        let t = pretheory_from(&b, &[]);
        let goal = b.parse("p -> q").unwrap();
        let n = [InferenceInstance::parse(&b, &["p"], "q").unwrap()];
        let v = verify_coverage_theorem(&b, &t, &goal, &n);
        assert!(!v.derivable && v.covered && !v.pass);
        assert_eq!(v.counterexample.map(|a| b.assignment_row(a)), Some("p=1 q=0".into()));
        assert!(check_soundness(&b, &t, &goal, &n));
    }

    #[test]
    fn replay() {
        let b = BoolAlgebra::standard(3).unwrap();
        let t = pretheory_from(&b, &[b.var(0)]);
        let proof =
            [InferenceInstance::parse(&b, &["p"], "q").unwrap(), InferenceInstance::parse(&b, &["q"], "r").unwrap()];
        let end = replay_proof(&t, &proof).unwrap();
        assert!(end.contains(&b.var(2)));
        assert_eq!(replay_proof(&t, &[proof[1].clone()]), Err(0));
        assert!(steps(&t, &b.var(2)).is_subset(&covered(&b, &proof)));
    }

    #[test]
    fn ultrafilter_count() {
        for g in 0..=4 {
            let b = BoolAlgebra::standard(g).unwrap();
            let atoms: Vec<Prop> = (0..b.assignments()).map(|a| b.atom(a)).collect();
            assert_eq!(atoms.len(), 1 << g);
            // atoms are exactly the covers of ⊥: single-bit tables
            let size = 1u64 << b.assignments().min(16);
            if g <= 3 {
                let covers = (0..size).filter(|&c| c.count_ones() == 1).count();
                assert_eq!(covers, atoms.len());
            }
        }
    }

    #[test]
    fn problem_json() {
        let text =
            r#"{"generators":["p","q"],"premises":["p","p->q"],"goal":"q","instances":[{"from":["p"],"to":"q"}]}"#;
        let out = ProofProblem::from_json(text).unwrap().solve().unwrap();
        assert_eq!(out.pretheory, "0001");
        assert!(out.derivable && out.pass);
        assert_eq!(out.trivial, vec![false]);
        assert!(ProofProblem::from_json(r#"{"generators":["p"],"goal":"p","extra":1}"#).is_err());
        let bad = ProofProblem::from_json(r#"{"generators":["p"],"goal":"z"}"#).unwrap();
        assert_eq!(bad.solve(), Err(Error::UnknownGenerator("z".into())));
    }

    #[test]
    fn soundness_small() {
        let b = b2();
        let pool = default_pool(&b).unwrap();
        assert!(exhaustive_sweep(&b, &pool, check_soundness).pass());
    }
}
