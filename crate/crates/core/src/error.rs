use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// Validation errors carry the point indices that witness the violation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not a max-plus value: {0}")]
    NotMaxPlus(String),

    #[error("temperature h must be positive and finite, got {0}")]
    NonPositiveTemperature(f64),

    #[error("space must have at least one point")]
    EmptySpace,

    #[error("distance matrix has {rows} rows but {points} point labels")]
    ShapeMismatch { points: usize, rows: usize },

    #[error("duplicate point label {label:?} at indices {first} and {second}")]
    DuplicateLabel { label: String, first: usize, second: usize },

    #[error("distance at ({i}, {j}) is not a nonnegative finite number: {value}")]
    InvalidDistance { i: usize, j: usize, value: f64 },

    #[error("nonzero diagonal at ({i}, {i}): {value}")]
    NonzeroDiagonal { i: usize, value: f64 },

    #[error("asymmetric at ({i}, {j}): {forward} vs {backward}")]
    Asymmetric { i: usize, j: usize, forward: f64, backward: f64 },

    #[error("distinct points {i} and {j} are at distance 0")]
    Indistinct { i: usize, j: usize },

    #[error("triangle inequality violated at ({i}, {j}, {k}): rho(i,k) = {direct} > {via}")]
    Triangle { i: usize, j: usize, k: usize, direct: f64, via: f64 },

    #[error("unknown point label {0:?}")]
    UnknownPoint(String),

    #[error("expected {expected} values indexed by the space, got {actual}")]
    IndexMismatch { expected: usize, actual: usize },

    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("density at point {index} is {value}, above 0")]
    DensityAboveZero { index: usize, value: f64 },

    #[error("density is not normalised: max is {max}, expected 0")]
    NotNormalised { max: String },

    #[error("point sets {first} and {second} overlap at point {point}")]
    OverlappingSets { first: usize, second: usize, point: usize },

    #[error("step function needs {sets} levels, got {levels}")]
    LevelCountMismatch { sets: usize, levels: usize },

    #[error("step level {0} must be nonpositive")]
    PositiveLevel(f64),

    #[error("map image index {image} at source point {source_point} is out of range")]
    MapOutOfRange { source_point: usize, image: usize },

    #[error("coupling is not admissible: {0}")]
    NotAdmissible(crate::coupling::Violation),

    #[error("middle marginals differ at point {0}; cannot glue")]
    MiddleMismatch(usize),

    #[error("oracle guard exceeded: {pairs} support pairs > limit {limit}; use the fast method")]
    OracleGuard { pairs: usize, limit: usize },

    #[error("cover set {0} does not meet the support of the center")]
    CoverMissesSupport(usize),

    #[error("cover does not contain support point {0}")]
    CoverIncomplete(usize),

    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("no admissible witness inside the pair set: {0}")]
    Infeasible(crate::convergence::Blocker),

    #[error("sequence has {len} terms; need more than {needed} for the schedule")]
    SequenceTooShort { len: usize, needed: usize },
}
