use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace {trace} differs from the expected {expected}")]
    BadTrace { trace: f64, expected: f64 },

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("epsilon must lie in (0, 1], got {0}")]
    BadEpsilon(f64),

    #[error("invalid measurement projectors (defect {defect:e})")]
    InvalidProjectors { defect: f64 },

    #[error("witness coefficients must be unit vectors (defect {defect:e})")]
    BadWitnessCoefficients { defect: f64 },

    #[error("unphysical Bell-diagonal coefficients (min eigenvalue {min_eigenvalue})")]
    UnphysicalBellDiagonal { min_eigenvalue: f64 },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("negative rate {0}")]
    NegativeRate(f64),

    #[error("unsupported channel: {0}")]
    UnsupportedChannel(String),

    #[error("channel output is not positive (min eigenvalue {min_eigenvalue:e})")]
    ChannelBrokePositivity { min_eigenvalue: f64 },

    #[error("times must be non-negative and sorted ascending")]
    UnsortedTimes,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("phase sweep must span at least 2*pi with 16 or more points")]
    InsufficientSweep,

    #[error("empty grid")]
    EmptyGrid,

    #[error("invalid optimizer configuration: {0}")]
    BadOptimizerConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
