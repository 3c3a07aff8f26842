use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("base must be between 2 and {max}, got {base}")]
    InvalidBase { base: u32, max: u32 },

    #[error("digit ({x}, {y}, {z}) out of range for base {base}")]
    DigitOutOfRange { x: u32, y: u32, z: u32, base: u32 },

    #[error("a digit set needs at least 2 and fewer than {limit} digits, got {count}")]
    DigitCount { count: usize, limit: usize },

    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),

    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(u32, u32),

    #[error("depth {depth} exceeds the packing limit {max} for base {base}")]
    DepthLimit { depth: u32, max: u32, base: u32 },

    #[error("cell budget exceeded: {required} cells requested, budget is {budget}")]
    CellBudget { required: u128, budget: u64 },

    #[error("invalid binary word {0:?}: letters must be 0 or 1")]
    InvalidWord(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("voxel set is empty")]
    EmptySet,

    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),

    #[error("tolerance {tol} not reached within {budget} refinements")]
    ToleranceNotReached { tol: f64, budget: usize },

    #[error("words must differ")]
    IdenticalWords,

    #[error("words must have equal length, got {0} and {1}")]
    WordLength(usize, usize),

    #[error("density {0} outside [0, 1]")]
    Lambda(String),

    #[error("degenerate series: {0}")]
    DegenerateSeries(&'static str),

    #[error("labeling does not belong to this voxel set")]
    LabelingMismatch,

    #[error("wrap detection needs a torus-mode labeling")]
    NotTorus,

    #[error("generated count {generated} disagrees with product formula {formula}")]
    CountMismatch { generated: usize, formula: String },

    #[error("word length {len} exceeds the depth limit {limit}")]
    DepthBudget { len: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
