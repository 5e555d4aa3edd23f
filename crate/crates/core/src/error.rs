use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,

    #[error("segment endpoints coincide")]
    DegenerateSegment,

    #[error("hyperplane normal is the zero vector")]
    ZeroNormal,

    #[error("need at least {needed} vertices, found {found}")]
    TooFewVertices { needed: usize, found: usize },

    #[error("at most {max} vertices are supported, found {found}")]
    TooManyVertices { max: usize, found: usize },

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("functional takes equal values on vertices {0} and {1}")]
    NonGenericFunctional(usize, usize),

    #[error("apex assignment is inconsistent: {0}")]
    ApexInconsistency(String),

    #[error("point lies on the affine hull of simplex {0:?}")]
    NonGenericPoint(Vec<usize>),

    #[error("vertex {0} is not in the complex")]
    VertexNotInComplex(usize),

    #[error("partition failed verification: {0}")]
    InvalidPartition(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),

    #[error("unknown sequence method {0:?}")]
    UnknownMethod(String),

    #[error("method {method} is not available: {reason}")]
    MethodUnavailable { method: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
