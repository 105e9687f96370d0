use thiserror::Error;

/// Errors raised by the solver pipeline, the oracle and the generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate direction: apex and target coincide")]
    DegenerateDirection,

    #[error("{0} must be non-empty")]
    EmptySet(&'static str),

    #[error("non-finite coordinate in {set}[{index}]")]
    NonFinite { set: &'static str, index: usize },

    #[error("P and S must be disjoint: P[{terminal}] coincides with S[{steiner}]")]
    NotDisjoint { terminal: usize, steiner: usize },

    #[error("threshold must be positive")]
    NonPositiveThreshold,

    #[error("component {component} not feasible at lambda")]
    ComponentNotFeasible { component: usize },

    #[error("max_gap of an empty sequence")]
    EmptySequence,

    #[error("degenerate sequence: all values are equal")]
    DegenerateSequence,

    #[error("terminal count must be even and at least 2, got {0}")]
    OddTerminalCount(usize),

    #[error("need at least {need} values, got {got}")]
    TooFewValues { need: usize, got: usize },

    #[error("f({index}) = {value} is outside 1..={m}")]
    MapOutOfRange { index: usize, value: usize, m: usize },

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("tree does not match instance: {0}")]
    TreeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
