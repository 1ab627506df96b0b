use thiserror::Error;

/// Errors raised by the monad, presentation, evaluation and law-checking layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monad kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("invalid monad parameters: {0}")]
    InvalidKind(String),

    #[error("invalid monadic value: {0}")]
    InvalidValue(String),

    #[error("arity mismatch for {what}: expected {expected}, got {got}")]
    ArityMismatch {
        what: String,
        expected: usize,
        got: usize,
    },

    #[error("arity {arity} exceeds the cap of {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("operation {op} is not in the signature of {kind}")]
    Signature { op: String, kind: String },

    #[error("invalid injection: {0}")]
    InvalidInjection(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("open term: cannot apply free variable `{0}`")]
    OpenTerm(String),

    #[error("unknown law `{0}`")]
    UnknownLaw(String),

    #[error("malformed serialization: {0}")]
    Decode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
