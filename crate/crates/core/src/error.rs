use thiserror::Error;

/// Errors raised by the geometry, ellipsoid, decomposition and search routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: points span an affine subspace of dimension {rank} (need {dim})")]
    DegenerateInput { rank: usize, dim: usize },
    #[error("origin is not interior: facet {facet} has offset {offset:.3e}")]
    OriginNotInterior { facet: usize, offset: f64 },
    #[error("basis is rank deficient: rank {rank} of {expected}")]
    RankDeficientBasis { rank: usize, expected: usize },
    #[error("parameter {name} = {value} out of range ({range})")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("point set is not symmetric: no antipode for point {index}")]
    NotSymmetric { index: usize },
    #[error("point set is rank deficient: rank {rank} in dimension {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("solver hit {iterations} iterations with duality gap {gap:.3e}")]
    MaxIterations { iterations: usize, gap: f64 },
    #[error("body is not contained in the (1+tol) unit ball: vertex norm {norm}")]
    NotContainedInBall { norm: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{count} subsets exceed the enumeration cap {cap}")]
    CombinatorialBlowup { count: u128, cap: u128 },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("unknown witness {0:?}")]
    UnknownWitness(String),
    #[error("body is not in Behrend position (decomposition residual {residual:.3e})")]
    NotInBehrendPosition { residual: f64 },
    #[error("singular linear map (det = {det:.3e})")]
    SingularMap { det: f64 },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
