use thiserror::Error;

/// Errors produced by the polytope pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("inequality {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("dimension must be at least 2, got {0}")]
    DimTooSmall(usize),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("feasible region is empty")]
    Empty,
    #[error("inequality {0} is redundant: supported by fewer than d vertices")]
    RedundantInequality(usize),
    #[error("vertex solutions merge ambiguously near {0:?}")]
    Degenerate(Vec<f64>),
    #[error("polytope is not simple")]
    NotSimple,
    #[error("vertex normal matrix is singular at vertex {0}")]
    SingularNormalMatrix(usize),
    #[error("expanded polynomial would exceed the term cap of {0}")]
    ExpansionTooLarge(usize),
    #[error("interpolation matrix is singular at k = {0}")]
    SingularMatrix(u32),
    #[error("weight solve produced a nonpositive weight at k = {0}")]
    NotAccepted(u32),
    #[error("no accepted exponent k up to kMax = {0}")]
    ExhaustedKMax(u32),
    #[error("delta = {0} is nonpositive; polytope outside the supported parameter range")]
    NonpositiveDelta(f64),
    #[error("surface export supports dimensions 2 and 3, got {0}")]
    UnsupportedDim(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
