use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. Variants map one-to-one onto the
/// stable error codes exposed through the C ABI (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("pole of order > 1 at {0}")]
    UnsupportedPoleOrder(String),
    #[error("Cauchy kernel evaluated on the diagonal")]
    PoleOnDiagonal,
    #[error("evaluation at divisor point {0}")]
    PoleAtDivisor(String),
    #[error("function is not in L(D): {0}")]
    NotInLD(String),
    #[error("fiber over {0} is ramified")]
    RamifiedFiber(String),
    #[error("base plane is singular: gamma(V) is not invertible")]
    SingularBasePlane,
    #[error("no transversal slice found after {0} trials")]
    TransversalityFailure(usize),
    #[error("parametrization has a base point near {0}")]
    BasePoint(String),
    #[error("curve lies in a hyperplane (coefficient rank {rank} < {expected})")]
    DegenerateSpan { rank: usize, expected: usize },
    #[error("coordinate normalization failed after {0} attempts")]
    NormalizationFailure(usize),
    #[error("hyperplane section is not totally real")]
    SectionNotReal,
    #[error("curve is not normalized: {0}")]
    NotNormalized(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("tensor is not Hermitian (entry {0})")]
    NotHermitian(String),
    #[error("inconsistent verdicts: {0}")]
    Inconsistency(String),
    #[error("sign calibration failed: {0}")]
    Calibration(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Stable numeric code, shared with the C header.
    pub fn code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) => 1,
            Error::UnsupportedPoleOrder(_) => 2,
            Error::PoleOnDiagonal => 3,
            Error::PoleAtDivisor(_) => 4,
            Error::NotInLD(_) => 5,
            Error::RamifiedFiber(_) => 6,
            Error::SingularBasePlane => 7,
            Error::TransversalityFailure(_) => 8,
            Error::BasePoint(_) => 9,
            Error::DegenerateSpan { .. } => 10,
            Error::NormalizationFailure(_) => 11,
            Error::SectionNotReal => 12,
            Error::NotNormalized(_) => 13,
            Error::UnknownExample(_) => 14,
            Error::NotHermitian(_) => 15,
            Error::Inconsistency(_) => 16,
            Error::Calibration(_) => 17,
        }
    }
}
