use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice has no elements")]
    Empty,
    #[error("{0} elements exceeds the supported maximum of {max}", max = crate::lattice::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("cover pair ({0}, {1}) refers to an element outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("order has no unique {0} element")]
    NoBoundedOrder(&'static str),
    #[error("elements {a} and {b} have no unique {op}")]
    NotALattice { a: usize, b: usize, op: &'static str },
    #[error("element {0} is not below element {1}")]
    NotComparable(usize, usize),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("covering class {0} is not weakly regular")]
    NotWeaklyRegular(usize),
    #[error("multiplicity of class {class} varies across chains of the interval: {counts:?}")]
    ConstancyViolated { class: usize, counts: Vec<usize> },
    #[error("lattice is not modular")]
    NotModular,
    #[error("filter generator set is empty")]
    EmptyGeneratorSet,
    #[error("{0} is not a covering")]
    NotACovering(String),
    #[error("{0} is not a covering of the ladder")]
    NotALadderCovering(String),
    #[error("unknown chain descriptor {0}")]
    UnknownChainDescriptor(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("{0} generators exceeds the supported maximum of {max}", max = crate::proof::MAX_GENERATORS)]
    TooManyGenerators(usize),
    #[error("invalid input: {0}")]
    Input(String),
}
