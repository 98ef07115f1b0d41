//! Maximal chains and covering multiplicities.
//!
//! The multiplicity of a covering class `K` in a chain `C` is the number of
//! consecutive pairs of `C` that are coverings in `K`. Besides the chain
//! enumerator, the extremes over *all* maximal chains are computed exactly by
//! a longest/shortest path over the cover graph, so upper and lower bounds do
//! not depend on the enumeration cap.

use serde::{Deserialize, Serialize};

use crate::coverings::{ClassMap, Covering, CoveringClass};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Default cap on enumerated maximal chains.
pub const DEFAULT_CHAIN_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MaximalChain {
    /// From `⊥` to `⊤`.
    pub elements: Vec<usize>,
}

impl MaximalChain {
    pub fn coverings(&self) -> impl Iterator<Item = Covering> + '_ {
        self.elements.windows(2).map(|w| Covering::new(w[0], w[1]))
    }

    pub fn display(&self, l: &FiniteLattice) -> String {
        self.elements.iter().map(|&x| l.name(x)).collect::<Vec<_>>().join("<")
    }
}

/// Depth-first walk over upper covers from `⊥`, yielding each maximal chain
/// once. Stops after `limit` chains; [`MaximalChains::truncated`] then
/// reports whether any chain was left out.
pub struct MaximalChains<'a> {
    lattice: &'a FiniteLattice,
    limit: usize,
    yielded: usize,
    truncated: bool,
    path: Vec<usize>,
    next_child: Vec<usize>,
    pending_pop: bool,
}

impl<'a> MaximalChains<'a> {
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn advance(&mut self) -> Option<Vec<usize>> {
        if self.pending_pop {
            self.path.pop();
            self.next_child.pop();
            self.pending_pop = false;
        }
        loop {
            let depth = self.path.len().checked_sub(1)?;
            let v = self.path[depth];
            if v == self.lattice.top() {
                self.pending_pop = true;
                return Some(self.path.clone());
            }
            let ups = self.lattice.upper_covers(v);
            let i = self.next_child[depth];
            if i < ups.len() {
                self.next_child[depth] += 1;
                self.path.push(ups[i]);
                self.next_child.push(0);
            } else {
                self.path.pop();
                self.next_child.pop();
            }
        }
    }
}

impl Iterator for MaximalChains<'_> {
    type Item = MaximalChain;

    fn next(&mut self) -> Option<MaximalChain> {
        if self.yielded == self.limit {
            if !self.truncated && self.advance().is_some() {
                self.truncated = true;
            }
            return None;
        }
        let elements = self.advance()?;
        self.yielded += 1;
        Some(MaximalChain { elements })
    }
}

pub fn maximal_chains(l: &FiniteLattice, limit: usize) -> MaximalChains<'_> {
    MaximalChains {
        lattice: l,
        limit: limit.max(1),
        yielded: 0,
        truncated: false,
        path: vec![l.bottom()],
        next_child: vec![0],
        pending_pop: false,
    }
}

/// Collects up to `limit` maximal chains and the truncation flag.
pub fn collect_chains(l: &FiniteLattice, limit: usize) -> (Vec<MaximalChain>, bool) {
    let mut walk = maximal_chains(l, limit);
    let chains: Vec<MaximalChain> = walk.by_ref().collect();
    (chains, walk.truncated())
}

/// Number of coverings of `class` among consecutive pairs of `chain`.
pub fn mu_c(l: &FiniteLattice, chain: &[usize], class: &CoveringClass) -> Result<usize> {
    if chain.is_empty() {
        return Err(Error::NotAChain("empty element list".into()));
    }
    if let Some(&x) = chain.iter().find(|&&x| x >= l.len()) {
        return Err(Error::NotAChain(format!("element {x} out of range")));
    }
    if let Some(w) = chain.windows(2).find(|w| !l.lt(w[0], w[1])) {
        return Err(Error::NotAChain(format!("{} is not strictly below {}", l.name(w[0]), l.name(w[1]))));
    }
    Ok(chain.windows(2).filter(|w| l.is_cover(w[0], w[1]) && class.contains(&Covering::new(w[0], w[1]))).count())
}

/// Least and greatest multiplicity of `class` over all maximal chains, with a
/// chain attaining each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainExtremes {
    pub min: usize,
    pub max: usize,
    pub min_chain: MaximalChain,
    pub max_chain: MaximalChain,
}

pub fn chain_extremes(l: &FiniteLattice, class: &CoveringClass) -> ChainExtremes {
    let n = l.len();
    let order = l.linear_extension();
    let mut lo = vec![usize::MAX; n];
    let mut hi = vec![0usize; n];
    let mut lo_pred = vec![usize::MAX; n];
    let mut hi_pred = vec![usize::MAX; n];
    lo[l.bottom()] = 0;
    for &v in &order {
        if lo[v] == usize::MAX {
            continue;
        }
        for &w in l.upper_covers(v) {
            let weight = usize::from(class.contains(&Covering::new(v, w)));
            if lo[v] + weight < lo[w] {
                lo[w] = lo[v] + weight;
                lo_pred[w] = v;
            }
            if hi_pred[w] == usize::MAX || hi[v] + weight > hi[w] {
                hi[w] = hi[v] + weight;
                hi_pred[w] = v;
            }
        }
    }
    let walk_back = |pred: &[usize]| {
        let mut xs = vec![l.top()];
        while *xs.last().unwrap() != l.bottom() {
            xs.push(pred[*xs.last().unwrap()]);
        }
        xs.reverse();
        MaximalChain { elements: xs }
    };
    ChainExtremes { min: lo[l.top()], max: hi[l.top()], min_chain: walk_back(&lo_pred), max_chain: walk_back(&hi_pred) }
}

/// Least `ν` exceeding every chain multiplicity: `1 + max μ_C`.
pub fn upsilon(l: &FiniteLattice, class: &CoveringClass) -> usize {
    chain_extremes(l, class).max + 1
}

/// Least multiplicity attained on a maximal chain.
pub fn lambda_bound(l: &FiniteLattice, class: &CoveringClass) -> usize {
    chain_extremes(l, class).min
}

pub fn is_weakly_regular(l: &FiniteLattice, class: &CoveringClass) -> bool {
    let e = chain_extremes(l, class);
    e.min == e.max
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub class_id: usize,
    /// Multiplicity on each enumerated chain, in enumeration order.
    pub per_chain_counts: Vec<usize>,
    /// Exact over all maximal chains.
    pub is_weakly_regular: bool,
    pub mu: Option<usize>,
    pub min_mu: usize,
    pub sup_mu: usize,
    pub upsilon: usize,
    pub lambda: usize,
    /// Enumeration stopped at the cap; `per_chain_counts` is a sample.
    pub chains_truncated: bool,
}

impl MultiplicityReport {
    /// `μ` when constant, otherwise the range `min..=max`.
    pub fn mu_display(&self) -> String {
        match self.mu {
            Some(m) => m.to_string(),
            None => format!("{}..{}", self.min_mu, self.sup_mu),
        }
    }
}

pub fn weak_regularity_report(l: &FiniteLattice, limit: usize) -> Vec<MultiplicityReport> {
    let classes = ClassMap::new(l);
    let (chains, truncated) = collect_chains(l, limit);
    classes
        .classes()
        .iter()
        .map(|k| {
            let per_chain_counts: Vec<usize> =
                chains.iter().map(|c| mu_c(l, &c.elements, k).expect("enumerated chains are chains")).collect();
            let e = chain_extremes(l, k);
            let regular = e.min == e.max;
            MultiplicityReport {
                class_id: k.id,
                per_chain_counts,
                is_weakly_regular: regular,
                mu: regular.then_some(e.min),
                min_mu: e.min,
                sup_mu: e.max,
                upsilon: e.max + 1,
                lambda: e.min,
                chains_truncated: truncated,
            }
        })
        .collect()
}

/// The multiplicity of a weakly regular class inside the interval `I[a,b]`,
/// checked to be the same on every enumerated maximal chain of the interval.
pub fn interval_mu(l: &FiniteLattice, a: usize, b: usize, class: &CoveringClass, limit: usize) -> Result<usize> {
    if !l.lt(a, b) {
        return Err(Error::NotComparable(a, b));
    }
    if !is_weakly_regular(l, class) {
        return Err(Error::NotWeaklyRegular(class.id));
    }
    let interval = l.interval(a, b)?;
    let sub = interval.to_lattice();
    let members = interval.members();
    let counts: Vec<usize> = maximal_chains(&sub, limit)
        .map(|c| c.elements.windows(2).filter(|w| class.contains(&Covering::new(members[w[0]], members[w[1]]))).count())
        .collect();
    match counts.first() {
        Some(&first) if counts.iter().all(|&c| c == first) => Ok(first),
        _ => Err(Error::ConstancyViolated { class: class.id, counts }),
    }
}

/// `Λ(0) = 0`, `Λ(n) = 1 + Λ(⌊√n⌋ − 1)`: the number of steps of
/// `n ↦ ⌊√n⌋ − 1` needed to reach zero.
pub fn sqrt_descent(mut n: u64) -> u64 {
    let mut depth = 0;
    while n > 0 {
        n = n.isqrt() - 1;
        depth += 1;
    }
    depth
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaCheck {
    pub class_id: usize,
    /// Length of the longest descending sequence `b1 ≻ a1 ≥ b2 ≻ a2 ≥ …` of
    /// coverings in the class.
    pub n: usize,
    /// The sequence, from the top down.
    pub descending: Vec<Covering>,
    pub bound: u64,
    pub min_mu: usize,
    pub min_chain: MaximalChain,
    pub pass: bool,
}

/// Checks `μ_C[K] ≥ Λ(n)` on every maximal chain, where `n` is the longest
/// descending sequence of coverings in `K`. Finite lattices are isomorphic to
/// their filter lattices, so the check runs on `L` itself.
pub fn check_lambda_theorem(l: &FiniteLattice, class: &CoveringClass) -> Result<LambdaCheck> {
    if !l.is_modular() {
        return Err(Error::NotModular);
    }
    let (n, descending) = longest_descending_sequence(l, class);
    let e = chain_extremes(l, class);
    let bound = sqrt_descent(n as u64);
    Ok(LambdaCheck {
        class_id: class.id,
        n,
        descending,
        bound,
        min_mu: e.min,
        min_chain: e.min_chain,
        pass: e.min as u64 >= bound,
    })
}

/// Longest path in the DAG of coverings of `class` with an edge from `c` to
/// `c'` whenever `upper(c') <= lower(c)`.
pub fn longest_descending_sequence(l: &FiniteLattice, class: &CoveringClass) -> (usize, Vec<Covering>) {
    let order = l.linear_extension();
    let mut pos = vec![0usize; l.len()];
    for (p, &x) in order.iter().enumerate() {
        pos[x] = p;
    }
    let mut cov = class.members.clone();
    cov.sort_by_key(|c| pos[c.upper]);
    let mut best = vec![1usize; cov.len()];
    let mut pred = vec![usize::MAX; cov.len()];
    for i in 0..cov.len() {
        for j in 0..i {
            if l.leq(cov[j].upper, cov[i].lower) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
                pred[i] = j;
            }
        }
    }
    let Some((mut i, &n)) = best.iter().enumerate().max_by_key(|&(i, &b)| (b, std::cmp::Reverse(i))) else {
        return (0, Vec::new());
    };
    let mut seq = vec![cov[i]];
    while pred[i] != usize::MAX {
        i = pred[i];
        seq.push(cov[i]);
    }
    (n, seq)
}
