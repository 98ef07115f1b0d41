//! Finite lattice toolkit for coverings, projective equivalence, chain
//! multiplicities and filter/ideal completions of modular lattices, plus a
//! proof-step calculus over finite free boolean algebras.
//!
//! Elements of a [`FiniteLattice`] are dense indices `0..n`; labels are
//! metadata. Every structure is immutable after construction.

pub mod chains;
pub mod completions;
pub mod coverings;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod omega;
pub mod proof;
mod unionfind;
pub mod verdict;

pub use error::{Error, Result};
pub use lattice::{FiniteLattice, Interval, LatticeFile};
pub use verdict::Verdict;
