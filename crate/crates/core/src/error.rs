use thiserror::Error;

use crate::atoms::{Atom, AtomSet};

/// Errors raised while building or evaluating programs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family member {member} is not a subset of the base {base}")]
    FamilyNotSubset { member: AtomSet, base: AtomSet },

    #[error("cardinality bounds {lo}..{hi} are reversed")]
    CardBounds { lo: usize, hi: usize },

    #[error("order mentions {set}, which is not in the family")]
    OrderOutsideFamily { set: AtomSet },

    #[error("a chain lists {set} twice")]
    ChainRepeats { set: AtomSet },

    #[error("measure weight given for {set}, which is not in the family")]
    WeightOutsideFamily { set: AtomSet },

    #[error("measure refers to atom {atom}, which is not in the base")]
    MeasureAtomOutsideBase { atom: Atom },

    #[error("program mixes pre-ordered and measure preference heads (rule {rule})")]
    MixedKinds { rule: usize },

    #[error("exhaustive search over {support} atoms exceeds the cap of {cap}")]
    CapExceeded { support: usize, cap: usize },

    #[error("{model} does not satisfy the preference atom over {base}")]
    NotAModel { model: AtomSet, base: AtomSet },

    #[error("{projection} lies outside the family of the preference atom over {base}")]
    OrderDomain { projection: AtomSet, base: AtomSet },

    #[error("sum mixes +inf and -inf")]
    MixedInfinity,

    #[error("order mode {mode} does not apply to a {kind} program")]
    ModeMismatch { mode: String, kind: String },

    #[error("strong negation of {atom} in the generating program")]
    StrongNegInGen { atom: Atom },

    #[error("width {width} exceeds the materialization limit of {limit}")]
    WidthExceeded { width: usize, limit: usize },

    #[error("pivot {pivot} is not a vertex of the graph")]
    PivotNotInGraph { pivot: Atom },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
