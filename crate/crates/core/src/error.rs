use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant has a stable kebab-case [`kind`](Error::kind) used as the
/// machine-readable tag on CLI failure lines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("element {element} out of range 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("invalid ordered partition: {0}")]
    InvalidPartition(String),
    #[error("ordered partition is trivial")]
    TrivialPartition,
    #[error("order {n} outside supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("vertex {0} is not in the graph")]
    VertexNotFound(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("invalid edge {a} {b}: {reason}")]
    InvalidEdge { a: String, b: String, reason: String },
    #[error("not isometric: {a} {b} path={path} inversion={inversion}")]
    IsometryViolation {
        a: String,
        b: String,
        path: String,
        inversion: usize,
    },
    #[error("separation property fails for {a} {b}")]
    SeparationViolation { a: String, b: String },
    #[error("not a discrete piecewise linear function on edge {a} {b}")]
    NotDpl { a: String, b: String },
    #[error("value {value} out of range 1..={n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("empty family of sets")]
    EmptyFamily,
    #[error("empty set in family")]
    EmptySet,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("name `{0}` declared twice")]
    DuplicateName(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("components {0} and {1} are identical")]
    DuplicateComponents(usize, usize),
    #[error("domain has empty interior")]
    EmptyInterior,
    #[error("region limit of {0} exceeded")]
    RegionLimit(usize),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("region with witness {0} is not covered by any piece")]
    UncoveredRegion(String),
    #[error("pieces {first} and {second} disagree at {point}")]
    AmbiguousAssignment {
        first: String,
        second: String,
        point: String,
    },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::OrderMismatch { .. } => "order-mismatch",
            Error::ElementOutOfRange { .. } => "element-out-of-range",
            Error::InvalidPartition(_) => "invalid-partition",
            Error::TrivialPartition => "trivial-partition",
            Error::OrderOutOfRange { .. } => "order-out-of-range",
            Error::VertexNotFound(_) => "vertex-not-found",
            Error::DuplicateVertex(_) => "duplicate-vertex",
            Error::InvalidEdge { .. } => "invalid-edge",
            Error::IsometryViolation { .. } => "isometry-violation",
            Error::SeparationViolation { .. } => "separation-violation",
            Error::NotDpl { .. } => "not-dpl",
            Error::ValueOutOfRange { .. } => "value-out-of-range",
            Error::EmptyFamily => "empty-family",
            Error::EmptySet => "empty-set",
            Error::TooLarge(_) => "too-large",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable(_) => "unknown-variable",
            Error::DuplicateName(_) => "duplicate-name",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::DuplicateComponents(..) => "duplicate-components",
            Error::EmptyInterior => "empty-interior",
            Error::RegionLimit(_) => "region-limit",
            Error::Inconsistent(_) => "internal",
            Error::UncoveredRegion(_) => "uncovered-region",
            Error::AmbiguousAssignment { .. } => "ambiguous-assignment",
        }
    }

    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
