//! Finite lattices given by their Hasse diagram.
//!
//! A [`FiniteLattice`] is validated once at construction: the cover relation
//! must be acyclic, the induced order must have a unique bottom and top, and
//! every pair of elements must have a unique meet and join. The order
//! relation and both operation tables are precomputed.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of elements accepted by the builder.
pub const MAX_ELEMENTS: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("names", &self.names)
            .field("covers", &self.covers)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

/// JSON interchange format: `{"elements": [...], "covers": [[i, j], ...]}`
/// where `[i, j]` means element `i` is covered by element `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

impl LatticeFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice file serializes")
    }

    pub fn build(&self) -> Result<FiniteLattice> {
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        FiniteLattice::from_covers(self.elements.clone(), &pairs)
    }
}

fn bitset_with(n: usize, bit: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(bit);
    s
}

fn highest_bit(s: &FixedBitSet) -> Option<usize> {
    let words = s.as_slice();
    for (w, &word) in words.iter().enumerate().rev() {
        if word != 0 {
            return Some(w * usize::BITS as usize + (usize::BITS - 1 - word.leading_zeros()) as usize);
        }
    }
    None
}

impl FiniteLattice {
    /// Builds and validates a lattice from element labels and cover pairs
    /// `(lower, upper)`. Redundant pairs implied by transitivity are accepted
    /// and dropped from the stored cover relation.
    pub fn from_covers(names: Vec<String>, cover_pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in cover_pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(Error::CycleDetected(a));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }

        // Kahn's algorithm; `order` is a linear extension of the relation.
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(stuck));
        }

        let mut up: Vec<FixedBitSet> = (0..n).map(|v| bitset_with(n, v)).collect();
        for &v in order.iter().rev() {
            for &w in &succ[v] {
                let above = up[w].clone();
                up[v].union_with(&above);
            }
        }
        let mut down: Vec<FixedBitSet> = (0..n).map(|v| bitset_with(n, v)).collect();
        for v in 0..n {
            for w in up[v].ones() {
                down[w].insert(v);
            }
        }

        let bottoms: Vec<usize> = (0..n).filter(|&v| up[v].count_ones(..) == n).collect();
        let tops: Vec<usize> = (0..n).filter(|&v| down[v].count_ones(..) == n).collect();
        let bottom = match bottoms[..] {
            [b] => b,
            _ => return Err(Error::NoBoundedOrder("bottom")),
        };
        let top = match tops[..] {
            [t] => t,
            _ => return Err(Error::NoBoundedOrder("top")),
        };

        // Relabel by position in the linear extension so that the greatest
        // common lower bound candidate is the highest set bit.
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let relabel = |s: &FixedBitSet| {
            let mut t = FixedBitSet::with_capacity(n);
            for v in s.ones() {
                t.insert(pos[v]);
            }
            t
        };
        let up_t: Vec<FixedBitSet> = order.iter().map(|&v| relabel(&up[v])).collect();
        let down_t: Vec<FixedBitSet> = order.iter().map(|&v| relabel(&down[v])).collect();

        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let (pa, pb) = (pos[a], pos[b]);
                let mut lower = down_t[pa].clone();
                lower.intersect_with(&down_t[pb]);
                let m = highest_bit(&lower).expect("bottom is a common lower bound");
                if down_t[m].count_ones(..) != lower.count_ones(..) {
                    return Err(Error::NotALattice { a, b, op: "meet" });
                }
                let mut upper = up_t[pa].clone();
                upper.intersect_with(&up_t[pb]);
                let j = upper.minimum().expect("top is a common upper bound");
                if up_t[j].count_ones(..) != upper.count_ones(..) {
                    return Err(Error::NotALattice { a, b, op: "join" });
                }
                let (m, j) = (order[m] as u16, order[j] as u16);
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }

        let mut covers = Vec::new();
        for a in 0..n {
            for b in up[a].ones() {
                if b == a {
                    continue;
                }
                let mut between = up[a].clone();
                between.intersect_with(&down[b]);
                if between.count_ones(..) == 2 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for &(a, b) in &covers {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }

        Ok(FiniteLattice { names, up, down, covers, upper_covers, lower_covers, meet, join, bottom, top })
    }

    /// Convenience wrapper over [`FiniteLattice::from_covers`] for string labels.
    pub fn build<S: AsRef<str>>(names: &[S], cover_pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_covers(names.iter().map(|s| s.as_ref().to_string()).collect(), cover_pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    /// Meet of a finite set; the empty meet is the top element.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite set; the empty join is the bottom element.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Elements `y >= x`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Elements `y <= x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Cover pairs `(lower, upper)`, sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper_covers[a].contains(&b)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// Elements in an order compatible with `<=` (every element after all
    /// elements below it).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut xs: Vec<usize> = self.elements().collect();
        xs.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        xs
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile { elements: self.names.clone(), covers: self.covers.iter().map(|&(a, b)| [a, b]).collect() }
    }

    /// For all `b <= a`: `a ∧ (b ∨ c) = b ∨ (a ∧ c)`.
    pub fn is_modular(&self) -> bool {
        for a in self.elements() {
            for b in self.down[a].ones() {
                for c in self.elements() {
                    if self.meet(a, self.join(b, c)) != self.join(b, self.meet(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// For all triples: `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Result<Interval<'_>> {
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable(lo, hi));
        }
        let mut members = self.up[lo].clone();
        members.intersect_with(&self.down[hi]);
        Ok(Interval { parent: self, lo, hi, members: members.ones().collect() })
    }

    /// Order dual: same labels, reversed order, meet and join swapped.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        meet.copy_from_slice(&self.join);
        join.copy_from_slice(&self.meet);
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        FiniteLattice {
            names: self.names.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers,
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
            meet,
            join,
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Direct product ordered componentwise; element `(a, b)` has index
    /// `a * other.len() + b`.
    pub fn product(&self, other: &FiniteLattice) -> Result<FiniteLattice> {
        let (n, m) = (self.len(), other.len());
        if n * m > MAX_ELEMENTS {
            return Err(Error::TooLarge(n * m));
        }
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.name(a), other.name(b)))
            .collect();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..m {
                for &a2 in self.upper_covers(a) {
                    pairs.push((a * m + b, a2 * m + b));
                }
                for &b2 in other.upper_covers(b) {
                    pairs.push((a * m + b, a * m + b2));
                }
            }
        }
        FiniteLattice::from_covers(names, &pairs)
    }

    /// Copy with elements renumbered: element `x` of `self` becomes
    /// `perm[x]` in the result.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteLattice> {
        let n = self.len();
        assert_eq!(perm.len(), n, "permutation length");
        let mut names = vec![String::new(); n];
        for x in 0..n {
            names[perm[x]] = self.names[x].clone();
        }
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        FiniteLattice::from_covers(names, &pairs)
    }
}

/// Searches for an order isomorphism `self -> other`, returned as the image
/// of each element.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.covers.len() != b.covers.len() {
        return None;
    }
    let signature = |l: &FiniteLattice, x: usize| {
        (l.down[x].count_ones(..), l.up[x].count_ones(..), l.lower_covers[x].len(), l.upper_covers[x].len())
    };
    let sig_a: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    let order = a.linear_extension();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        depth: usize,
        order: &[usize],
        a: &FiniteLattice,
        b: &FiniteLattice,
        sig_a: &[(usize, usize, usize, usize)],
        sig_b: &[(usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in 0..b.len() {
            if used[y] || sig_a[x] != sig_b[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let fz = image[z];
                a.leq(z, x) == b.leq(fz, y) && a.leq(x, z) == b.leq(y, fz)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(depth + 1, order, a, b, sig_a, sig_b, image, used) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }

    if extend(0, &order, a, b, &sig_a, &sig_b, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    find_isomorphism(a, b).is_some()
}

/// The interval sublattice `I[lo, hi]` of a parent lattice.
#[derive(Debug, Clone)]
pub struct Interval<'a> {
    parent: &'a FiniteLattice,
    lo: usize,
    hi: usize,
    members: Vec<usize>,
}

impl<'a> Interval<'a> {
    pub fn parent(&self) -> &'a FiniteLattice {
        self.parent
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Parent indices of the members, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// The interval as a standalone lattice. Member `members()[i]` becomes
    /// element `i`.
    pub fn to_lattice(&self) -> FiniteLattice {
        let local = |x: usize| self.members.binary_search(&x).expect("member of interval");
        let names = self.members.iter().map(|&x| self.parent.name(x).to_string()).collect();
        let pairs: Vec<(usize, usize)> = self
            .parent
            .covers()
            .iter()
            .filter(|&&(a, b)| self.contains(a) && self.contains(b))
            .map(|&(a, b)| (local(a), local(b)))
            .collect();
        FiniteLattice::from_covers(names, &pairs).expect("intervals of a lattice are lattices")
    }
}
