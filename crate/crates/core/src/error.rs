use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("containment fails: not a subspace")]
    NotASubspace,
    #[error("{name}: declared flavor {flavor} violated: {detail}")]
    FlavorViolation {
        name: String,
        flavor: String,
        detail: String,
    },
    #[error("map is not a nonabelian embedding tensor: {0}")]
    NotAnEmbeddingTensor(String),
    #[error("not a Leibniz-Lie algebra: {0}")]
    NotLeibnizLie(String),
    #[error("quotient action is ill-defined: {0}")]
    ActionIllDefined(String),
    #[error("left multiplication is not a coherent derivation: {0}")]
    NotCoherentDerivation(String),
    #[error("not a Nijenhuis element: {0}")]
    NotNijenhuis(String),
    #[error("cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("degree {degree} out of range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("arity {arity} exceeds the configured cap {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved reference to {category} {name:?}")]
    UnresolvedReference { category: String, name: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Errors caused by malformed input rather than by a failed law.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnresolvedReference { .. }
                | Error::Io(_)
                | Error::Usage(_)
                | Error::DimensionMismatch(_)
                | Error::FlavorViolation { .. }
                | Error::DegreeOutOfRange { .. }
                | Error::ArityCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
