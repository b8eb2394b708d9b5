use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}` in frame")]
    DuplicateLabel(String),
    #[error("frame has {n} elements, the cap is {cap}")]
    FrameTooLarge { n: usize, cap: usize },
    #[error("frame must have at least one element")]
    EmptyFrame,
    #[error("empty label at position {0}")]
    EmptyLabel(usize),
    #[error("label `{0}` is not in the frame")]
    UnknownLabel(String),
    #[error("subset index {index} out of range for a frame with {len} elements")]
    SubsetOutOfRange { index: usize, len: usize },
    #[error("negative mass {mass} on subset index {subset}")]
    NegativeMass { subset: usize, mass: f64 },
    #[error("mass total {sum} deviates from one by more than {tol}")]
    MassSumViolation { sum: f64, tol: f64 },
    #[error("weight {0} outside [0, 1]")]
    WeightOutOfRange(f64),
    #[error("invalid refinement: {0}")]
    InvalidRefinement(String),
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("frame has {n} elements; the quadratic combination oracle is capped at {cap}")]
    FrameTooLargeForOracle { n: usize, cap: usize },
    #[error("frame has {n} elements; dense matrices are capped at {cap}")]
    FrameTooLargeForMatrix { n: usize, cap: usize },
    #[error("set function is not the image of a mass function: {0}")]
    NotAMassImage(String),
    #[error("no diameter normalization for family `{0}`")]
    UnsupportedFamily(String),
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("norm order k must be at least 1")]
    InvalidNormOrder,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("exhaustive corpus too large: {0}")]
    CorpusTooLarge(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateLabel(_) => "duplicate-label",
            Error::FrameTooLarge { .. } => "frame-too-large",
            Error::EmptyFrame => "empty-frame",
            Error::EmptyLabel(_) => "empty-label",
            Error::UnknownLabel(_) => "unknown-label",
            Error::SubsetOutOfRange { .. } => "subset-out-of-range",
            Error::NegativeMass { .. } => "negative-mass",
            Error::MassSumViolation { .. } => "mass-sum-violation",
            Error::WeightOutOfRange(_) => "weight-out-of-range",
            Error::InvalidRefinement(_) => "invalid-refinement",
            Error::FrameMismatch => "frame-mismatch",
            Error::FrameTooLargeForOracle { .. } => "frame-too-large-for-oracle",
            Error::FrameTooLargeForMatrix { .. } => "frame-too-large-for-matrix",
            Error::NotAMassImage(_) => "not-a-mass-image",
            Error::UnsupportedFamily(_) => "unsupported-family",
            Error::AlphaOutOfRange(_) => "alpha-out-of-range",
            Error::InvalidNormOrder => "invalid-norm-order",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::InvalidConfig(_) => "invalid-config",
            Error::CorpusTooLarge(_) => "corpus-too-large",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
