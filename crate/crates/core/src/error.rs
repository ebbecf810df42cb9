use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice points need at least one coordinate")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("box is empty along axis {axis} (lo > hi)")]
    EmptyBox { axis: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter function: {0}")]
    InvalidParam(String),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("part label {label} outside 1..={part_count}")]
    LabelOutOfRange { label: u32, part_count: u32 },
    #[error("dimension must be at least 1")]
    NonPositiveDimension,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("box volume {volume} exceeds the exhaustive cap {cap}; a sampling seed is required")]
    SeedRequired { volume: u128, cap: u128 },
    #[error("box has dimension {found} but the oracle expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid verification options: {0}")]
    InvalidOptions(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("start point has dimension {found}, walk expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("walk needs at least one step")]
    NoSteps,
    #[error("sequence of length {len} is too short for {k}-grams (need at least {needed})")]
    InsufficientLength { len: usize, k: usize, needed: usize },
    #[error("k-gram length {0} is outside the tabulated range 1..=6")]
    UnsupportedGram(usize),
    #[error("no critical value tabulated for significance {0}")]
    UnsupportedAlpha(f64),
    #[error("invalid bias {num}/{den}")]
    InvalidBias { num: u64, den: u64 },
}
