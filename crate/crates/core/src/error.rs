use thiserror::Error;

/// Errors surfaced by the finite-model operations.
///
/// `InternalInvariantViolation` is special: every decision procedure that has
/// more than one route to the same answer computes all routes and compares
/// them. A disagreement is a bug in this crate (or a refuted theorem), never
/// a property of the input, so it gets its own variant instead of a panic to
/// keep sweeps running and reporting.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum Error {
    #[error("table entry at ({row},{col}) is {value}, outside 0..{order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    /// First associativity violation in lexicographic (a, b, c) order.
    #[error("associativity fails at ({a},{b},{c}): ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    AssociativityFailure {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },

    #[error("{what} of {requested} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("generator families must consist of nonempty sets")]
    EmptyGenerator,

    #[error("ground-set size mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
