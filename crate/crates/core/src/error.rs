use thiserror::Error;

/// Domain errors raised by the geometric operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no primitive representative: zero vector")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not strictly convex: the cone contains a line")]
    NotStrictlyConvex,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan is not complete")]
    NotComplete,

    #[error("not a subfan: {0}")]
    NotSubfan(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("invalid Kato fan: {0}")]
    InvalidKatoFan(String),

    #[error("invalid polynomial support: {0}")]
    InvalidSupport(String),

    #[error("empty tropical hypersurface: the support is a single monomial")]
    EmptyHypersurface,

    #[error("tropical fan has lineality of dimension {0}; quotient by it")]
    Lineality(usize),

    #[error("prevariety of nothing is everything")]
    EmptyPrevariety,

    #[error("tropical dimension {dim} exceeds the declared dimension {bound} of the variety")]
    DimensionBound { dim: usize, bound: usize },

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("postcondition violated: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
