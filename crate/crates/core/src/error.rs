use thiserror::Error;

/// Errors raised by the exact-algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed coefficient domains: {0} and {1}")]
    MixedDomains(String, String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric of even size")]
    NotSkewSymmetric,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("ideal has infinite colength")]
    InfiniteColength,

    #[error("ideal is not primary to the maximal ideal at the origin")]
    NotPrimaryAtOrigin,

    #[error("characteristic {p} divides {n}")]
    CharacteristicDivides { p: u64, n: usize },

    #[error("degree {degree} is not below the characteristic {p}")]
    CharacteristicBound { degree: u32, p: u64 },

    #[error("input is not homogeneous")]
    NotHomogeneous,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,

    #[error("duplicate point in point set")]
    DuplicatePoint,

    #[error("evaluation determinant vanishes; the points do not lie in this chart")]
    SingularChart,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("colength {0} is outside the supported range (at most 8)")]
    ColengthOutOfRange(usize),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("quadrics are linearly dependent")]
    DependentQuadrics,

    #[error("quadrics do not span all cubics; the ideal requires a cubic generator")]
    RequiresCubicGenerator,

    #[error("wrong Hilbert function: expected {expected}, found {found}")]
    WrongHilbertFunction { expected: String, found: String },

    #[error("root finding is not supported over {0}")]
    UnsupportedRootFinding(String),

    #[error("characteristic {0} is not supported here (needs characteristic other than 2 and 3)")]
    UnsupportedCharacteristic(u64),

    #[error("indeterminate: support not rational")]
    SupportNotRational,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
