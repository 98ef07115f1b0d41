//! Coverings, transposition and projective-equivalence classes.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::FiniteLattice;
use crate::unionfind::UnionFind;

/// A pair `lower <= upper`. Most uses hold an actual covering `lower ≺ upper`;
/// [`transposes_up`] accepts general pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Covering {
    pub lower: usize,
    pub upper: usize,
}

impl Covering {
    pub fn new(lower: usize, upper: usize) -> Self {
        Covering { lower, upper }
    }

    pub fn display<'a>(&self, l: &'a FiniteLattice) -> CoveringDisplay<'a> {
        CoveringDisplay { lattice: l, covering: *self }
    }
}

impl From<(usize, usize)> for Covering {
    fn from((lower, upper): (usize, usize)) -> Self {
        Covering { lower, upper }
    }
}

pub struct CoveringDisplay<'a> {
    lattice: &'a FiniteLattice,
    covering: Covering,
}

impl fmt::Display for CoveringDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}≺{}", self.lattice.name(self.covering.lower), self.lattice.name(self.covering.upper))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringClass {
    pub id: usize,
    /// Sorted by `(lower, upper)`.
    pub members: Vec<Covering>,
}

impl CoveringClass {
    pub fn contains(&self, c: &Covering) -> bool {
        self.members.binary_search(c).is_ok()
    }
}

pub fn coverings(l: &FiniteLattice) -> Vec<Covering> {
    l.covers().iter().map(|&p| p.into()).collect()
}

pub fn is_covering(l: &FiniteLattice, c: &Covering) -> bool {
    l.is_cover(c.lower, c.upper)
}

/// `⟨x,y⟩ ↗ ⟨z,w⟩` iff `y ∧ z = x` and `y ∨ z = w`.
pub fn transposes_up(l: &FiniteLattice, from: &Covering, to: &Covering) -> bool {
    l.meet(from.upper, to.lower) == from.lower && l.join(from.upper, to.lower) == to.upper
}

/// [`transposes_up`] restricted to pairs that are both coverings.
pub fn coverings_transpose_up(l: &FiniteLattice, from: &Covering, to: &Covering) -> bool {
    is_covering(l, from) && is_covering(l, to) && transposes_up(l, from, to)
}

/// Connected components of the coverings under `↗` in either direction.
/// Classes are numbered by their smallest member.
pub fn projective_classes(l: &FiniteLattice) -> Vec<CoveringClass> {
    let cov = coverings(l);
    let k = cov.len();
    let mut uf = UnionFind::new(k);
    for i in 0..k {
        for j in i + 1..k {
            if transposes_up(l, &cov[i], &cov[j]) || transposes_up(l, &cov[j], &cov[i]) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Covering>> = HashMap::new();
    for (i, c) in cov.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(*c);
    }
    let mut members: Vec<Vec<Covering>> = groups.into_values().collect();
    for m in &mut members {
        m.sort_unstable();
    }
    members.sort_unstable_by_key(|m| m[0]);
    members.into_iter().enumerate().map(|(id, members)| CoveringClass { id, members }).collect()
}

/// Projective classes plus a covering → class lookup.
#[derive(Debug, Clone)]
pub struct ClassMap {
    classes: Vec<CoveringClass>,
    class_of: HashMap<Covering, usize>,
}

impl ClassMap {
    pub fn new(l: &FiniteLattice) -> Self {
        Self::from_classes(projective_classes(l))
    }

    pub fn from_classes(classes: Vec<CoveringClass>) -> Self {
        let class_of = classes.iter().flat_map(|k| k.members.iter().map(move |c| (*c, k.id))).collect();
        ClassMap { classes, class_of }
    }

    pub fn classes(&self) -> &[CoveringClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &CoveringClass {
        &self.classes[id]
    }

    pub fn class_of(&self, c: &Covering) -> Option<usize> {
        self.class_of.get(c).copied()
    }

    pub fn equivalent(&self, a: &Covering, b: &Covering) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Elements `m ≠ ⊤` such that `x > m` and `y > m` imply `x ∧ y > m`.
pub fn meet_irreducibles(l: &FiniteLattice) -> Vec<usize> {
    l.elements()
        .filter(|&m| m != l.top())
        .filter(|&m| {
            let above: Vec<usize> = l.up_set(m).ones().filter(|&x| x != m).collect();
            above.iter().all(|&x| above.iter().all(|&y| l.meet(x, y) != m))
        })
        .collect()
}

/// Whether `x` is the meet of a finite set of meet-irreducible elements.
/// Always true in a finite lattice: `x` is the meet of the meet-irreducibles
/// above it (the empty meet being `⊤`).
pub fn is_finitely_decomposable(l: &FiniteLattice, x: usize) -> bool {
    let above = meet_irreducibles(l).into_iter().filter(|&m| l.leq(x, m));
    l.meet_all(above) == x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{boolean, chain, m5, n5};

    fn c(a: usize, b: usize) -> Covering {
        Covering::new(a, b)
    }

    #[test]
    fn covering_counts() {
        assert_eq!(coverings(&m5()).len(), 6);
        assert_eq!(coverings(&chain(4).unwrap()).len(), 4);
        assert_eq!(coverings(&boolean(2).unwrap()).len(), 4);
    }

    #[test]
    fn transposes() {
        let l = m5();
        assert!(transposes_up(&l, &c(0, 1), &c(2, 4)));
        for cov in coverings(&l) {
            assert!(transposes_up(&l, &cov, &cov));
        }
        let sq = boolean(2).unwrap();
        assert!(!transposes_up(&sq, &c(0, 1), &c(1, 3)));
        assert!(transposes_up(&sq, &c(0, 1), &c(2, 3)));
        // general pairs: ⟨⊥,pq⟩ ↗ ⟨r,pqr⟩ in the cube, neither a covering
        let cube = boolean(3).unwrap();
        assert!(transposes_up(&cube, &c(0, 3), &c(4, 7)));
        assert!(!coverings_transpose_up(&cube, &c(0, 3), &c(4, 7)));
    }

    #[test]
    fn classes_of_small_lattices() {
        let k = projective_classes(&m5());
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].members.len(), 6);

        let sq = projective_classes(&boolean(2).unwrap());
        assert_eq!(
            sq,
            vec![
                CoveringClass { id: 0, members: vec![c(0, 1), c(2, 3)] },
                CoveringClass { id: 1, members: vec![c(0, 2), c(1, 3)] },
            ]
        );

        let ch = projective_classes(&chain(3).unwrap());
        assert_eq!(ch.len(), 3);
        assert!(ch.iter().all(|k| k.members.len() == 1));
    }

    #[test]
    fn pentagon_classes() {
        // ⊥=0 x=1 y=2 z=3 ⊤=4
        let k = projective_classes(&n5());
        let sets: Vec<Vec<Covering>> = k.into_iter().map(|k| k.members).collect();
        assert_eq!(sets, vec![vec![c(0, 1), c(2, 4)], vec![c(0, 2), c(3, 4)], vec![c(1, 3)]]);
    }

    #[test]
    fn meet_irreducible_elements() {
        assert_eq!(meet_irreducibles(&m5()), vec![1, 2, 3]);
        assert_eq!(meet_irreducibles(&boolean(2).unwrap()), vec![1, 2]);
        assert_eq!(meet_irreducibles(&chain(2).unwrap()), vec![0, 1]);
    }

    #[test]
    fn meet_irreducible_iff_unique_upper_cover() {
        for l in [m5(), n5(), boolean(3).unwrap(), crate::fixtures::subspace_lattice(2, 3).unwrap()] {
            let by_cover: Vec<usize> = l.elements().filter(|&m| l.upper_covers(m).len() == 1).collect();
            assert_eq!(meet_irreducibles(&l), by_cover);
        }
    }

    #[test]
    fn decomposability() {
        let l = m5();
        assert!(is_finitely_decomposable(&l, 0));
        assert!(is_finitely_decomposable(&l, l.top()));
        let cube = boolean(3).unwrap();
        for atom in [1, 2, 4] {
            assert!(is_finitely_decomposable(&cube, atom));
        }
        assert!(cube.elements().all(|x| is_finitely_decomposable(&cube, x)));
    }
}
