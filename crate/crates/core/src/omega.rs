//! The ladder: two descending chains `x₁ > x₂ > …` and `y₁ > y₂ > …` with
//! `xᵢ ≺ yᵢ` and both chains meeting at `⊥`, and its filter lattice.
//!
//! Everything here is closed form. Infinite chains are named by descriptors;
//! finite truncations tie the closed forms back to [`FiniteLattice`].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::chains::{collect_chains, mu_c};
use crate::completions::{classify_based_filter, fil_lattice, CoveringKind, FilterUniverse};
use crate::coverings::{ClassMap, Covering};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LadderElement {
    Bot,
    X(u32),
    Y(u32),
}

use LadderElement::{Bot, X, Y};

impl LadderElement {
    pub fn validate(self) -> Result<Self> {
        match self {
            X(0) | Y(0) => Err(Error::ParamOutOfRange(format!("ladder index must be ≥ 1 in {self}"))),
            _ => Ok(self),
        }
    }

    fn index(self) -> Option<u32> {
        match self {
            Bot => None,
            X(i) | Y(i) => Some(i),
        }
    }
}

impl fmt::Display for LadderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bot => f.write_str("⊥"),
            X(i) => write!(f, "x{i}"),
            Y(i) => write!(f, "y{i}"),
        }
    }
}

impl Serialize for LadderElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn ladder_order(a: LadderElement, b: LadderElement) -> bool {
    match (a, b) {
        (Bot, _) => true,
        (_, Bot) => false,
        (X(i), X(j)) | (Y(i), Y(j)) | (X(i), Y(j)) => i >= j,
        (Y(_), X(_)) => false,
    }
}

pub fn ladder_meet(a: LadderElement, b: LadderElement) -> LadderElement {
    match (a, b) {
        (Bot, _) | (_, Bot) => Bot,
        (X(i), X(j)) | (X(i), Y(j)) | (Y(j), X(i)) => X(i.max(j)),
        (Y(i), Y(j)) => Y(i.max(j)),
    }
}

pub fn ladder_join(a: LadderElement, b: LadderElement) -> LadderElement {
    match (a, b) {
        (Bot, e) | (e, Bot) => e,
        (X(i), X(j)) => X(i.min(j)),
        (X(i), Y(j)) | (Y(j), X(i)) | (Y(i), Y(j)) => Y(i.min(j)),
    }
}

/// `X(i+1)≺X(i)`, `Y(i+1)≺Y(i)` and `X(i)≺Y(i)`. Nothing covers `⊥`.
pub fn ladder_covers(lower: LadderElement, upper: LadderElement) -> bool {
    match (lower, upper) {
        (X(i), X(j)) | (Y(i), Y(j)) => j >= 1 && i == j + 1,
        (X(i), Y(j)) => i >= 1 && i == j,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LadderClass {
    /// All `X(i)≺Y(i)`.
    A,
    /// `X(i+1)≺X(i)` and `Y(i+1)≺Y(i)`; these only transpose within one square.
    B(u32),
}

impl fmt::Display for LadderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderClass::A => f.write_str("A"),
            LadderClass::B(i) => write!(f, "B{i}"),
        }
    }
}

impl Serialize for LadderClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn ladder_class(lower: LadderElement, upper: LadderElement) -> Result<LadderClass> {
    if !ladder_covers(lower, upper) {
        return Err(Error::NotALadderCovering(format!("{lower}≺{upper}")));
    }
    Ok(match (lower, upper) {
        (X(_), Y(_)) => LadderClass::A,
        (_, X(j)) | (_, Y(j)) => LadderClass::B(j),
        _ => unreachable!("checked by ladder_covers"),
    })
}

/// A multiplicity: a natural number or the distinct token "infinite".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n),
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Maximal chains of the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainDescriptor {
    /// `y₁ > … > yₙ > xₙ > xₙ₊₁ > … > ⊥`.
    Descend(u32),
    /// `y₁ > y₂ > … > ⊥`.
    AllY,
}

impl ChainDescriptor {
    pub const C1: ChainDescriptor = ChainDescriptor::Descend(1);
    pub const C2: ChainDescriptor = ChainDescriptor::AllY;

    fn validate(self) -> Result<Self> {
        match self {
            ChainDescriptor::Descend(0) => Err(Error::UnknownChainDescriptor("descend(0)".into())),
            d => Ok(d),
        }
    }

    pub fn contains(self, e: LadderElement) -> bool {
        match (self, e) {
            (_, Bot) => true,
            (ChainDescriptor::AllY, Y(_)) => true,
            (ChainDescriptor::AllY, X(_)) => false,
            (ChainDescriptor::Descend(n), Y(i)) => i <= n,
            (ChainDescriptor::Descend(n), X(i)) => i >= n,
        }
    }

    /// Consecutive chain elements; `⊥` is a limit, never covered.
    pub fn has_covering(self, lower: LadderElement, upper: LadderElement) -> bool {
        ladder_covers(lower, upper) && self.contains(lower) && self.contains(upper)
    }

    /// Elements of the chain with index at most `k`, top first, then `⊥`.
    pub fn truncated(self, k: u32) -> Vec<LadderElement> {
        let mut out: Vec<LadderElement> = match self {
            ChainDescriptor::AllY => (1..=k).map(Y).collect(),
            ChainDescriptor::Descend(n) => (1..=n.min(k)).map(Y).chain((n..=k).map(X)).collect(),
        };
        out.push(Bot);
        out
    }
}

impl fmt::Display for ChainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDescriptor::Descend(1) => f.write_str("C1"),
            ChainDescriptor::Descend(n) => write!(f, "D{n}"),
            ChainDescriptor::AllY => f.write_str("C2"),
        }
    }
}

/// Members of `class` that can possibly lie on `chain`. Class A has infinitely
/// many members, but a chain past its last `y` consists of `x`'s only, so
/// members beyond that index are never on it.
fn class_candidates(chain: ChainDescriptor, class: LadderClass) -> Vec<(LadderElement, LadderElement)> {
    match class {
        LadderClass::A => {
            let last = match chain {
                ChainDescriptor::Descend(n) => n,
                ChainDescriptor::AllY => 0,
            };
            (1..=last).map(|i| (X(i), Y(i))).collect()
        }
        LadderClass::B(i) => vec![(X(i + 1), X(i)), (Y(i + 1), Y(i))],
    }
}

/// `μ_C[K]` for a catalogued maximal chain of the ladder.
pub fn ladder_mu(chain: ChainDescriptor, class: LadderClass) -> Result<Count> {
    let chain = chain.validate()?;
    if matches!(class, LadderClass::B(0)) {
        return Err(Error::ParamOutOfRange("class B index must be ≥ 1".into()));
    }
    let n = class_candidates(chain, class).into_iter().filter(|&(a, b)| chain.has_covering(a, b)).count();
    Ok(Count::Finite(n as u64))
}

/// Filters of the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LadderFilElement {
    /// `Fg{⊥}`, the whole ladder.
    PrincipalBot,
    /// `Fg{x₁,x₂,…}`: everything but `⊥`.
    Fx,
    /// `Fg{y₁,y₂,…}`: the `y`'s.
    Fy,
    PrincipalX(u32),
    PrincipalY(u32),
}

use LadderFilElement::{Fx, Fy, PrincipalBot, PrincipalX, PrincipalY};

impl fmt::Display for LadderFilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrincipalBot => f.write_str("Fg{⊥}"),
            Fx => f.write_str("Fx"),
            Fy => f.write_str("Fy"),
            PrincipalX(i) => write!(f, "Fg{{x{i}}}"),
            PrincipalY(i) => write!(f, "Fg{{y{i}}}"),
        }
    }
}

impl Serialize for LadderFilElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl LadderFilElement {
    pub fn principal(e: LadderElement) -> Self {
        match e {
            Bot => PrincipalBot,
            X(i) => PrincipalX(i),
            Y(i) => PrincipalY(i),
        }
    }

    pub fn contains(self, e: LadderElement) -> bool {
        match self {
            PrincipalBot => true,
            Fx => e != Bot,
            Fy => matches!(e, Y(_)),
            PrincipalX(k) => ladder_order(X(k), e),
            PrincipalY(k) => ladder_order(Y(k), e),
        }
    }

    pub fn is_principal(self) -> bool {
        !matches!(self, Fx | Fy)
    }
}

/// Order of `Fil`: reverse inclusion.
pub fn fil_leq(a: LadderFilElement, b: LadderFilElement) -> bool {
    match (a, b) {
        (PrincipalBot, _) => true,
        (_, PrincipalBot) => false,
        (Fx, _) => true,
        (_, Fx) => false,
        (Fy, Fy) | (Fy, PrincipalY(_)) => true,
        (Fy, PrincipalX(_)) => false,
        (_, Fy) => false,
        (PrincipalX(i), PrincipalX(j)) | (PrincipalX(i), PrincipalY(j)) | (PrincipalY(i), PrincipalY(j)) => j <= i,
        (PrincipalY(_), PrincipalX(_)) => false,
    }
}

/// Join in `Fil`: intersection of filters.
pub fn fil_join(a: LadderFilElement, b: LadderFilElement) -> LadderFilElement {
    match (a, b) {
        (PrincipalBot, f) | (f, PrincipalBot) | (Fx, f) | (f, Fx) => f,
        (Fy, Fy) => Fy,
        (Fy, PrincipalX(k)) | (PrincipalX(k), Fy) | (Fy, PrincipalY(k)) | (PrincipalY(k), Fy) => PrincipalY(k),
        (PrincipalX(i), PrincipalX(j)) => PrincipalX(i.min(j)),
        (PrincipalX(i), PrincipalY(j)) | (PrincipalY(j), PrincipalX(i)) | (PrincipalY(i), PrincipalY(j)) => {
            PrincipalY(i.min(j))
        }
    }
}

/// Meet in `Fil`: the filter generated by the union.
pub fn fil_meet(a: LadderFilElement, b: LadderFilElement) -> LadderFilElement {
    match (a, b) {
        (PrincipalBot, _) | (_, PrincipalBot) => PrincipalBot,
        (Fx, _) | (_, Fx) => Fx,
        (Fy, Fy) => Fy,
        (Fy, PrincipalX(_)) | (PrincipalX(_), Fy) => Fx,
        (Fy, PrincipalY(_)) | (PrincipalY(_), Fy) => Fy,
        (PrincipalX(i), PrincipalX(j)) | (PrincipalX(i), PrincipalY(j)) | (PrincipalY(j), PrincipalX(i)) => {
            PrincipalX(i.max(j))
        }
        (PrincipalY(i), PrincipalY(j)) => PrincipalY(i.max(j)),
    }
}

pub fn fil_covers(lower: LadderFilElement, upper: LadderFilElement) -> bool {
    match (lower, upper) {
        (PrincipalBot, Fx) | (Fx, Fy) => true,
        (PrincipalX(i), PrincipalX(j)) | (PrincipalY(i), PrincipalY(j)) => j >= 1 && i == j + 1,
        (PrincipalX(i), PrincipalY(j)) => i >= 1 && i == j,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilClass {
    /// The singleton class `{Fg{⊥} ≺ Fx}`.
    Bottom,
    Ladder(LadderClass),
}

impl fmt::Display for FilClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilClass::Bottom => f.write_str("Bot"),
            FilClass::Ladder(c) => c.fmt(f),
        }
    }
}

pub fn fil_class(lower: LadderFilElement, upper: LadderFilElement) -> Result<FilClass> {
    if !fil_covers(lower, upper) {
        return Err(Error::NotALadderCovering(format!("{lower}≺{upper}")));
    }
    Ok(match (lower, upper) {
        (PrincipalBot, Fx) => FilClass::Bottom,
        (Fx, Fy) | (PrincipalX(_), PrincipalY(_)) => FilClass::Ladder(LadderClass::A),
        (_, PrincipalX(j)) | (_, PrincipalY(j)) => FilClass::Ladder(LadderClass::B(j)),
        _ => unreachable!("checked by fil_covers"),
    })
}

/// Maximal chains of `Fil(ladder)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilChainDescriptor {
    /// `Fg{⊥}, Fx, …, Fg{xₙ₊₁}, Fg{xₙ}, Fg{yₙ}, …, Fg{y₁}`.
    ViaX(u32),
    /// `Fg{⊥}, Fx, Fy, …, Fg{y₂}, Fg{y₁}`.
    ViaFy,
}

impl fmt::Display for FilChainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilChainDescriptor::ViaX(n) => write!(f, "via-x{n}"),
            FilChainDescriptor::ViaFy => f.write_str("via-Fy"),
        }
    }
}

impl FilChainDescriptor {
    fn validate(self) -> Result<Self> {
        match self {
            FilChainDescriptor::ViaX(0) => Err(Error::UnknownChainDescriptor("via-x0".into())),
            d => Ok(d),
        }
    }

    pub fn contains(self, f: LadderFilElement) -> bool {
        match (self, f) {
            (_, PrincipalBot) | (_, Fx) => true,
            (FilChainDescriptor::ViaFy, Fy) | (FilChainDescriptor::ViaFy, PrincipalY(_)) => true,
            (FilChainDescriptor::ViaFy, PrincipalX(_)) | (FilChainDescriptor::ViaX(_), Fy) => false,
            (FilChainDescriptor::ViaX(n), PrincipalX(i)) => i >= n,
            (FilChainDescriptor::ViaX(n), PrincipalY(i)) => i <= n,
        }
    }

    pub fn has_covering(self, lower: LadderFilElement, upper: LadderFilElement) -> bool {
        fil_covers(lower, upper) && self.contains(lower) && self.contains(upper)
    }
}

/// `μ_C[K]` in `Fil(ladder)` for a catalogued maximal chain.
pub fn ladder_fil_mu(chain: FilChainDescriptor, class: FilClass) -> Result<Count> {
    let chain = chain.validate()?;
    let candidates: Vec<(LadderFilElement, LadderFilElement)> = match class {
        FilClass::Bottom => vec![(PrincipalBot, Fx)],
        // past Fg{xₙ} a via-x chain holds only principal x-filters
        FilClass::Ladder(LadderClass::A) => {
            let last = match chain {
                FilChainDescriptor::ViaX(n) => n,
                FilChainDescriptor::ViaFy => 0,
            };
            std::iter::once((Fx, Fy)).chain((1..=last).map(|i| (PrincipalX(i), PrincipalY(i)))).collect()
        }
        FilClass::Ladder(LadderClass::B(0)) => {
            return Err(Error::ParamOutOfRange("class B index must be ≥ 1".into()));
        }
        FilClass::Ladder(LadderClass::B(i)) => {
            vec![(PrincipalX(i + 1), PrincipalX(i)), (PrincipalY(i + 1), PrincipalY(i))]
        }
    };
    let n = candidates.into_iter().filter(|&(a, b)| chain.has_covering(a, b)).count();
    Ok(Count::Finite(n as u64))
}

/// The ladder as a universe of filters, for the covering classifier.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ladder;

impl FilterUniverse for Ladder {
    type Element = LadderElement;
    type Filter = LadderFilElement;

    fn is_principal(&self, f: &LadderFilElement) -> bool {
        f.is_principal()
    }

    fn has_local_top(&self, base: LadderElement, f: &LadderFilElement) -> bool {
        let Some(k) = base.index() else {
            // (⊥, y] contains x_m for every large m; only filters holding all
            // of them qualify, and then y₁ works.
            return matches!(f, PrincipalBot | Fx);
        };
        // Above a non-⊥ base everything has index ≤ k, so the search is finite.
        let window: Vec<LadderElement> = (1..=k).flat_map(|i| [X(i), Y(i)]).collect();
        window.iter().any(|&y| {
            ladder_order(base, y)
                && y != base
                && f.contains(y)
                && window.iter().all(|&z| !(ladder_order(base, z) && z != base && ladder_order(z, y)) || f.contains(z))
        })
    }
}

/// Elements of `F − G` for a covering `F ≺ G` of `Fil(ladder)`, limited to
/// indices `≤ window`.
fn fil_difference(f: LadderFilElement, g: LadderFilElement, window: u32) -> Vec<LadderElement> {
    std::iter::once(Bot)
        .chain((1..=window).flat_map(|i| [X(i), Y(i)]))
        .filter(|&e| f.contains(e) && !g.contains(e))
        .collect()
}

/// Classifies a covering of `Fil(ladder)` from every maximal based filter
/// `⟨x, Fg{x} ∩ G⟩` with `x ∈ F − G` of index `≤ window`, requiring agreement.
pub fn classify_fil_covering(lower: LadderFilElement, upper: LadderFilElement, window: u32) -> Result<CoveringKind> {
    if !fil_covers(lower, upper) {
        return Err(Error::NotACovering(format!("{lower}≺{upper}")));
    }
    let kinds: Vec<CoveringKind> = fil_difference(lower, upper, window)
        .into_iter()
        .map(|x| {
            let h = fil_join(LadderFilElement::principal(x), upper);
            debug_assert!(fil_covers(LadderFilElement::principal(x), h));
            classify_based_filter(&Ladder, x, &h)
        })
        .collect();
    match kinds.first() {
        Some(&k) if kinds.iter().all(|&o| o == k) => Ok(k),
        Some(_) => Err(Error::Input(format!("based filters of {lower}≺{upper} disagree: {kinds:?}"))),
        None => Err(Error::NotACovering(format!("{lower}≺{upper} has no base of index ≤ {window}"))),
    }
}

/// The finite sublattice `{⊥, x₁..x_k, y₁..y_k}`, built from the drawn
/// coverings plus `⊥ ≺ x_k`.
pub fn truncate(k: u32) -> Result<FiniteLattice> {
    if k == 0 {
        return Err(Error::ParamOutOfRange("truncation depth must be ≥ 1".into()));
    }
    let elems = truncation_elements(k);
    let pos = |e: LadderElement| elems.iter().position(|&x| x == e).expect("in window");
    let mut pairs = vec![(pos(Bot), pos(X(k)))];
    for i in 1..=k {
        pairs.push((pos(X(i)), pos(Y(i))));
        if i < k {
            pairs.push((pos(X(i + 1)), pos(X(i))));
            pairs.push((pos(Y(i + 1)), pos(Y(i))));
        }
    }
    FiniteLattice::from_covers(elems.iter().map(|e| e.to_string()).collect(), &pairs)
}

pub fn truncation_elements(k: u32) -> Vec<LadderElement> {
    std::iter::once(Bot).chain((1..=k).flat_map(|i| [X(i), Y(i)])).collect()
}

fn element_map(l: &FiniteLattice, k: u32) -> Vec<(LadderElement, usize)> {
    truncation_elements(k).into_iter().map(|e| (e, l.index_of(&e.to_string()).expect("named"))).collect()
}

/// Closed-form order, meet and join agree with `truncate(k)` on all pairs.
pub fn truncation_consistency(k: u32) -> Result<Verdict> {
    let l = truncate(k)?;
    let map = element_map(&l, k);
    let idx = |e: LadderElement| map.iter().find(|(x, _)| *x == e).map(|p| p.1);
    let name = format!("truncation {k}: closed-form order/meet/join");
    for &(a, ia) in &map {
        for &(b, ib) in &map {
            if ladder_order(a, b) != l.leq(ia, ib)
                || idx(ladder_meet(a, b)) != Some(l.meet(ia, ib))
                || idx(ladder_join(a, b)) != Some(l.join(ia, ib))
            {
                return Ok(Verdict::fail(name, format!("{a}, {b}")));
            }
        }
    }
    if !l.is_modular() {
        return Ok(Verdict::fail(name, "not modular"));
    }
    Ok(Verdict::pass(name))
}

/// Coverings of `truncate(k)` away from the cut (no `⊥`, no index `k`) are
/// projectively equivalent exactly when [`ladder_class`] says so.
pub fn class_stability(k: u32) -> Result<Verdict> {
    let l = truncate(k)?;
    let map = element_map(&l, k);
    let back = |i: usize| map.iter().find(|p| p.1 == i).expect("mapped").0;
    let classes = ClassMap::new(&l);
    let interior: Vec<(Covering, LadderClass)> = l
        .covers()
        .iter()
        .filter_map(|&(a, b)| {
            let (ea, eb) = (back(a), back(b));
            match (ea.index(), eb.index()) {
                (Some(i), Some(j)) if i < k && j < k => Some((Covering::new(a, b), ladder_class(ea, eb).ok()?)),
                _ => None,
            }
        })
        .collect();
    let name = format!("truncation {k}: class stability");
    for (c, kc) in &interior {
        for (d, kd) in &interior {
            if classes.equivalent(c, d) != (kc == kd) {
                return Ok(Verdict::fail(name, format!("{} vs {}", c.display(&l), d.display(&l))));
            }
        }
    }
    Ok(Verdict::pass(name).with_witness(format!("interior coverings {}", interior.len())))
}

/// Every maximal chain of `truncate(k)` is the truncation of some `D(n)`,
/// each `D(n)` with `n ≤ k` truncates to a maximal chain, and the finite
/// `μ` of class A on it is 1.
pub fn chain_catalog_check(k: u32) -> Result<Verdict> {
    let l = truncate(k)?;
    let map = element_map(&l, k);
    let idx = |e: LadderElement| map.iter().find(|(x, _)| *x == e).expect("mapped").1;
    let name = format!("truncation {k}: chain catalog");
    let (chains, _) = collect_chains(&l, usize::MAX);
    let mut expected: Vec<Vec<usize>> = (1..=k)
        .map(|n| {
            let mut v: Vec<usize> = ChainDescriptor::Descend(n).truncated(k).into_iter().map(idx).collect();
            v.reverse();
            v
        })
        .collect();
    let mut found: Vec<Vec<usize>> = chains.iter().map(|c| c.elements.clone()).collect();
    expected.sort();
    found.sort();
    if expected != found {
        return Ok(Verdict::fail(name, format!("{} chains found, {} catalogued", found.len(), expected.len())));
    }
    let classes = ClassMap::new(&l);
    let a = classes.class(classes.class_of(&Covering::new(idx(X(1)), idx(Y(1)))).expect("covering"));
    for (n, chain) in (1..=k).zip(&expected) {
        let finite = mu_c(&l, chain, a)? as u64;
        if Count::Finite(finite) != ladder_mu(ChainDescriptor::Descend(n), LadderClass::A)? {
            return Ok(Verdict::fail(name, format!("D{n}: μ {finite}")));
        }
    }
    Ok(Verdict::pass(name).with_witness(format!("maximal chains {}", expected.len())))
}

/// The window `{Fg{⊥}, Fx, Fy, Fg{x₁..x_k}, Fg{y₁..y_k}}` of `Fil(ladder)`.
pub fn fil_window(k: u32) -> Vec<LadderFilElement> {
    [PrincipalBot, Fx, Fy].into_iter().chain((1..=k).flat_map(|i| [PrincipalX(i), PrincipalY(i)])).collect()
}

/// The closed-form `Fil(ladder)` agrees with membership on a finite window:
/// order is reverse inclusion, join is intersection, meet is the generated
/// filter, and closed-form coverings have nothing strictly between them.
pub fn fil_figure_check(k: u32) -> Verdict {
    let name = format!("Fil window {k}: figure fidelity");
    let probe: Vec<LadderElement> = truncation_elements(k + 1);
    let members = |f: LadderFilElement| -> Vec<bool> { probe.iter().map(|&e| f.contains(e)).collect() };
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&p, &q)| !p || q);
    let window = fil_window(k);
    for &a in &window {
        let ma = members(a);
        if !probe
            .iter()
            .filter(|&&e| ma[probe.iter().position(|&p| p == e).expect("probe")])
            .all(|&e| probe.iter().all(|&z| !ladder_order(e, z) || a.contains(z)))
        {
            return Verdict::fail(name, format!("{a} not upward closed"));
        }
        for &b in &window {
            let mb = members(b);
            if fil_leq(a, b) != subset(&mb, &ma) {
                return Verdict::fail(name, format!("order at {a}, {b}"));
            }
            let inter: Vec<bool> = ma.iter().zip(&mb).map(|(&p, &q)| p && q).collect();
            if members(fil_join(a, b)) != inter {
                return Verdict::fail(name, format!("join at {a}, {b}"));
            }
            // generated filter: up-closure of pairwise meets of the union
            let union: Vec<LadderElement> = probe.iter().copied().filter(|&e| a.contains(e) || b.contains(e)).collect();
            let generated: Vec<bool> = probe
                .iter()
                .map(|&z| union.iter().any(|&u| union.iter().any(|&v| ladder_order(ladder_meet(u, v), z))))
                .collect();
            if members(fil_meet(a, b)) != generated {
                return Verdict::fail(name, format!("meet at {a}, {b}"));
            }
            if fil_covers(a, b) && window.iter().any(|&c| c != a && c != b && fil_leq(a, c) && fil_leq(c, b)) {
                return Verdict::fail(name, format!("{a}≺{b} not a covering"));
            }
        }
    }
    Verdict::pass(name)
}

/// Spot check against a finite truncation: `Fil(truncate(k))` is isomorphic
/// to `truncate(k)`, as for any finite lattice.
pub fn fil_truncation_check(k: u32) -> Result<Verdict> {
    let l = truncate(k)?;
    let fl = fil_lattice(&l);
    Ok(fl.check_embedding())
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderWitness {
    /// `X(j)≺Y(j) ↗ X(i)≺Y(i)` for `j > i`, listed for `i = depth..1`.
    pub descending_family: Vec<(LadderElement, LadderElement)>,
    pub family_transposes: bool,
    pub meet_of_lowers: LadderElement,
    pub meet_of_uppers: LadderElement,
    pub class_a_lower_regular: bool,
    pub mu_c1_a: Count,
    pub mu_c2_a: Count,
    pub class_a_weakly_regular: bool,
    pub fil_mu_a: Vec<(String, Count)>,
    pub fil_class_a_multiplicity_constant: bool,
    pub bottom_covering_kind: CoveringKind,
    pub fx_fy_kind: CoveringKind,
}

/// The greatest element below every member of `{ctor(i) : i ≥ 1}`.
/// Any candidate of index `m` fails against index `m + 1`.
fn meet_of_tail(ctor: fn(u32) -> LadderElement) -> LadderElement {
    let candidates = [Bot, X(1), Y(1)];
    candidates
        .into_iter()
        .filter(|&e| match e.index() {
            None => true,
            Some(m) => ladder_order(e, ctor(m + 1)),
        })
        .max_by(|&a, &b| if ladder_order(a, b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater })
        .expect("⊥ is a lower bound")
}

pub fn ladder_regularity_witness(depth: u32) -> Result<LadderWitness> {
    if depth == 0 {
        return Err(Error::ParamOutOfRange("depth must be ≥ 1".into()));
    }
    let descending_family: Vec<(LadderElement, LadderElement)> = (1..=depth).rev().map(|i| (X(i), Y(i))).collect();
    let family_transposes = descending_family.windows(2).all(|w| {
        let ((x, y), (z, w)) = (w[0], w[1]);
        ladder_meet(y, z) == x && ladder_join(y, z) == w
    });
    let meet_of_lowers = meet_of_tail(X);
    let meet_of_uppers = meet_of_tail(Y);
    let mu_c1_a = ladder_mu(ChainDescriptor::C1, LadderClass::A)?;
    let mu_c2_a = ladder_mu(ChainDescriptor::C2, LadderClass::A)?;
    let mut fil_mu_a = Vec::new();
    for d in (1..=depth).map(FilChainDescriptor::ViaX).chain([FilChainDescriptor::ViaFy]) {
        fil_mu_a.push((d.to_string(), ladder_fil_mu(d, FilClass::Ladder(LadderClass::A))?));
    }
    let fil_class_a_multiplicity_constant = fil_mu_a.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(LadderWitness {
        family_transposes,
        class_a_lower_regular: !(family_transposes && meet_of_lowers == meet_of_uppers),
        descending_family,
        meet_of_lowers,
        meet_of_uppers,
        class_a_weakly_regular: mu_c1_a == mu_c2_a,
        mu_c1_a,
        mu_c2_a,
        fil_mu_a,
        fil_class_a_multiplicity_constant,
        bottom_covering_kind: classify_fil_covering(PrincipalBot, Fx, depth)?,
        fx_fy_kind: classify_fil_covering(Fx, Fy, depth)?,
    })
}

/// All finite-scale checks for truncation depths `1..=max_depth`.
pub fn omega_checks(max_depth: u32) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for k in 1..=max_depth {
        out.push(truncation_consistency(k)?);
        out.push(class_stability(k)?);
        out.push(chain_catalog_check(k)?);
    }
    out.push(fil_figure_check(max_depth));
    out.push(fil_truncation_check(max_depth.min(6))?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert!(ladder_order(X(2), Y(1)));
        assert!(ladder_order(Bot, X(7)));
        assert!(!ladder_order(Y(1), X(1)));
        assert!(!ladder_order(X(1), Y(2)));
        assert_eq!(ladder_meet(X(2), Y(5)), X(5));
        assert_eq!(ladder_join(X(2), Y(5)), Y(2));
    }

    #[test]
    fn classes() {
        assert_eq!(ladder_class(X(1), Y(1)).unwrap(), LadderClass::A);
        assert_eq!(ladder_class(X(3), Y(3)).unwrap(), LadderClass::A);
        assert_eq!(ladder_class(Y(5), Y(4)).unwrap(), LadderClass::B(4));
        assert_eq!(ladder_class(X(5), X(4)).unwrap(), LadderClass::B(4));
        assert!(matches!(ladder_class(Bot, X(3)), Err(Error::NotALadderCovering(_))));
        assert!(ladder_class(X(2), Y(1)).is_err());
    }

    #[test]
    fn multiplicities() {
        use ChainDescriptor::{AllY as C2_, Descend};
        const C1: ChainDescriptor = ChainDescriptor::C1;
        const C2: ChainDescriptor = C2_;
        assert_eq!(ladder_mu(C1, LadderClass::A).unwrap(), Count::Finite(1));
        assert_eq!(ladder_mu(C2, LadderClass::A).unwrap(), Count::Finite(0));
        assert_eq!(ladder_mu(Descend(4), LadderClass::A).unwrap(), Count::Finite(1));
        for c in [C1, C2, Descend(3)] {
            for i in 1..6 {
                assert_eq!(ladder_mu(c, LadderClass::B(i)).unwrap(), Count::Finite(1));
            }
        }
        assert!(ladder_mu(Descend(0), LadderClass::A).is_err());
    }

    #[test]
    fn fil_multiplicities() {
        use FilChainDescriptor::*;
        for d in [ViaX(1), ViaX(2), ViaX(9), ViaFy] {
            assert_eq!(ladder_fil_mu(d, FilClass::Ladder(LadderClass::A)).unwrap(), Count::Finite(1));
            assert_eq!(ladder_fil_mu(d, FilClass::Bottom).unwrap(), Count::Finite(1));
            assert_eq!(ladder_fil_mu(d, FilClass::Ladder(LadderClass::B(3))).unwrap(), Count::Finite(1));
        }
        assert!(matches!(ladder_fil_mu(ViaX(0), FilClass::Bottom), Err(Error::UnknownChainDescriptor(_))));
    }

    #[test]
    fn fil_classes_and_kinds() {
        assert_eq!(fil_class(Fx, Fy).unwrap(), FilClass::Ladder(LadderClass::A));
        assert_eq!(fil_class(PrincipalX(2), PrincipalY(2)).unwrap(), FilClass::Ladder(LadderClass::A));
        assert_eq!(fil_class(PrincipalBot, Fx).unwrap(), FilClass::Bottom);
        assert!(fil_class(Fx, PrincipalX(3)).is_err());
        assert_eq!(classify_fil_covering(PrincipalBot, Fx, 6).unwrap(), CoveringKind::QuasiAtomic);
        assert_eq!(classify_fil_covering(Fx, Fy, 6).unwrap(), CoveringKind::Atomic);
        assert_eq!(classify_fil_covering(PrincipalX(2), PrincipalY(2), 6).unwrap(), CoveringKind::Atomic);
        // Fx ≺ Fy transposes up to Fg{xᵢ} ≺ Fg{yᵢ}
        for i in 1..5 {
            assert_eq!(fil_meet(Fy, PrincipalX(i)), Fx);
            assert_eq!(fil_join(Fy, PrincipalX(i)), PrincipalY(i));
        }
    }

    #[test]
    fn local_tops() {
        assert!(Ladder.has_local_top(Bot, &Fx));
        assert!(!Ladder.has_local_top(Bot, &Fy));
        assert!(Ladder.has_local_top(X(3), &Fy));
        assert!(Ladder.has_local_top(Y(3), &Fy));
    }

    #[test]
    fn truncations() {
        let t1 = truncate(1).unwrap();
        assert_eq!(t1.len(), 3);
        assert_eq!(t1.covers().len(), 2);
        let t2 = truncate(2).unwrap();
        assert_eq!(t2.len(), 5);
        assert!(t2.is_modular());
        assert!(truncate(0).is_err());
        for k in 1..=20 {
            assert!(truncation_consistency(k).unwrap().pass, "{k}");
            assert!(class_stability(k).unwrap().pass, "{k}");
        }
        for k in 1..=8 {
            assert!(chain_catalog_check(k).unwrap().pass, "{k}");
        }
    }

    #[test]
    fn fil_window_matches_membership() {
        for k in 1..=8 {
            assert!(fil_figure_check(k).pass, "{k}");
        }
        assert!(fil_truncation_check(4).unwrap().pass);
    }

    #[test]
    fn witness() {
        let w = ladder_regularity_witness(5).unwrap();
        assert!(w.family_transposes);
        assert_eq!(w.meet_of_lowers, Bot);
        assert_eq!(w.meet_of_uppers, Bot);
        assert!(!w.class_a_lower_regular);
        assert!(!w.class_a_weakly_regular);
        assert!(w.fil_class_a_multiplicity_constant);
        assert_eq!(w.bottom_covering_kind, CoveringKind::QuasiAtomic);
        assert_eq!(w.fx_fy_kind, CoveringKind::Atomic);
    }

    #[test]
    fn count_serialization() {
        assert_eq!(serde_json::to_string(&Count::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Count::Infinite).unwrap(), "\"infinite\"");
        assert_eq!(Count::Infinite.to_string(), "infinite");
    }
}
