use thiserror::Error;

/// Errors surfaced by the exact-arithmetic kernel and the proof pipeline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("equation singular at origin")]
    SingularAtOrigin,
    #[error("insufficient initial conditions at index {0}")]
    InsufficientInitials(usize),
    #[error("no formal power series solution: {0}")]
    NoFormalSolution(String),
    #[error("recursion branches; a leading coefficient must be supplied")]
    BranchingSolution,
    #[error("zero polynomial has every integer as a root")]
    EveryIndexIsARoot,
    #[error("subsequence elimination degenerated (zero pivot for all k)")]
    DegenerateContraction,
    #[error("quotient denominators violate the singularity containment bound")]
    SingularityContainment,
    #[error("order cap {0} exceeded while searching for a remainder recurrence")]
    OrderCapExceeded(usize),
    #[error("{0}")]
    Unsupported(String),
}
