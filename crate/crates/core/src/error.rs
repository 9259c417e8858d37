use thiserror::Error;

/// Errors raised by the automaton algebra and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} states, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state {state} out of range for {n} states")]
    StateOutOfRange { state: usize, n: usize },

    #[error("letter index {index} out of range for {count} letters")]
    LetterOutOfRange { index: usize, count: usize },

    #[error("an automaton needs at least one state")]
    NoStates,

    #[error("an automaton needs at least one letter")]
    NoLetters,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceExceeded { what: String, cap: u128 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
