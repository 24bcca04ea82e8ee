use thiserror::Error;

/// Which consistency condition a category file violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsistencyKind {
    UnitLaw,
    Duality,
    Associativity,
    Invertibility,
    Pentagon,
    Hexagon,
    Sphericality,
    Dimension,
    Rigidity,
}

impl std::fmt::Display for ConsistencyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConsistencyKind::UnitLaw => "unit-law",
            ConsistencyKind::Duality => "duality",
            ConsistencyKind::Associativity => "associativity",
            ConsistencyKind::Invertibility => "invertibility",
            ConsistencyKind::Pentagon => "pentagon",
            ConsistencyKind::Hexagon => "hexagon",
            ConsistencyKind::Sphericality => "sphericality",
            ConsistencyKind::Dimension => "dimension",
            ConsistencyKind::Rigidity => "rigidity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{kind} check failed (residual {residual:.3e})")]
    Consistency { kind: ConsistencyKind, residual: f64 },
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad tree position: {0}")]
    BadPosition(String),
    #[error("category has no braiding data")]
    NotBraided,
    #[error("category is not modular (smallest singular value of S is {0:.3e})")]
    NotModular(f64),
    #[error("not a half-braiding (residual {0:.3e})")]
    NotHalfBraiding(f64),
    #[error("tube algebra decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("could not split idempotent: {0}")]
    SplitFailed(String),
    #[error("ill-conditioned pairing (condition number {0:.3e})")]
    IllConditioned(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}
