use thiserror::Error;

/// Errors raised across the library. Variant names double as the stable
/// identifiers reported by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot add polynomials scaled by sqrt({left}) and sqrt({right})")]
    IncompatibleRadicand { left: u64, right: u64 },

    #[error("point has {supplied} coordinates but the polynomial uses x{needed}")]
    MissingVariable { needed: u32, supplied: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("coordinates sum to {sum}, not 0")]
    NotInHyperplane { sum: String },

    #[error("weight coordinates {coords} are not all non-negative")]
    NotDominant { coords: String },

    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("invalid Dyck path: {0}")]
    InvalidPath(String),

    #[error("the empty path has no first return")]
    EmptyPath,

    #[error("invalid gamma indices d={d}, i={i}: need 1 <= i <= d")]
    InvalidIndices { d: usize, i: usize },

    #[error("expected dimension {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// The variant name, e.g. `"NotDominant"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::IncompatibleRadicand { .. } => "IncompatibleRadicand",
            Error::MissingVariable { .. } => "MissingVariable",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotInHyperplane { .. } => "NotInHyperplane",
            Error::NotDominant { .. } => "NotDominant",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::InvalidPath(_) => "InvalidPath",
            Error::EmptyPath => "EmptyPath",
            Error::InvalidIndices { .. } => "InvalidIndices",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
