use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid magma: {0}")]
    InvalidMagma(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("element {element} out of range 1..={order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("not a congruence: {0}")]
    NotACongruence(String),

    #[error("not a quasigroup: {0}")]
    NotAQuasigroup(String),

    #[error("decomposition not found for an entropic quasigroup (this indicates a bug)")]
    DecompositionNotFound,

    #[error("not entropic: ({a}*{b})*({c}*{d}) != ({a}*{c})*({b}*{d})")]
    NotEntropic { a: usize, b: usize, c: usize, d: usize },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("incompatible family: {0}")]
    IncompatibleFamily(String),

    #[error("order bound exceeded: {requested} > {limit}")]
    OrderBoundExceeded { requested: usize, limit: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("empty diagram: no crossings and no circles")]
    EmptyDiagram,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrder(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("sampled value set ({sampled} of {total} orderings); refusing to build a congruence from it")]
    SamplingRefused { sampled: usize, total: String },

    #[error("chain level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("invalid level {level}: {reason}")]
    InvalidLevel { level: usize, reason: String },

    #[error("coefficient vector has length {found}, expected {expected}")]
    NuLengthMismatch { expected: usize, found: usize },

    #[error("no qualifying four for k = {k} at level {n}")]
    NoQualifyingFour { n: usize, k: usize },

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),

    #[error("image not inside kernel: {0}")]
    ImageNotInKernel(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
