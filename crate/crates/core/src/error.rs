use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("input contains a non-finite value at index {0}")]
    NonFinite(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("grid size P = {grid} is smaller than the number of samples N = {samples}")]
    GridTooSmall { samples: usize, grid: usize },
    #[error("frequency grid must be strictly increasing inside [0, 1)")]
    InvalidGrid,
    #[error("frequency {0} is outside the admissible range")]
    FrequencyOutOfRange(f64),
    #[error("penalty coefficient {index} is negative ({value})")]
    NegativeCoefficient { index: usize, value: f64 },
    #[error("degenerate penalty: every coefficient is zero")]
    DegeneratePenalty,
    #[error("penalty is not Hermitian: eigenvalue {index} has imaginary part {imag}")]
    NonHermitianPenalty { index: usize, imag: f64 },
    #[error("penalty is indefinite: eigenvalue {index} equals {value}")]
    IndefinitePenalty { index: usize, value: f64 },
    #[error("regularization parameter must be nonnegative, got {0}")]
    NegativeLambda(f64),
    #[error("penalty normalization undefined: eigenvalue {0} is zero")]
    NormalizationUndefined(usize),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("data are identically zero")]
    DegenerateData,
    #[error("frequencies are not in the required order")]
    UnorderedFrequencies,
    #[error("improper prior: eigenvalue {0} is zero")]
    ImproperPrior(usize),
    #[error("unknown window `{0}`")]
    UnknownWindow(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },
    #[error("window bank is empty")]
    EmptyBank,
    #[error("spectra are defined on different grids ({0} vs {1} points)")]
    GridMismatch(usize, usize),
    #[error("dense oracle limited to size {limit}, got {size}")]
    OracleTooLarge { size: usize, limit: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
