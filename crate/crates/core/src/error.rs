use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("RootsOfUnityMissing: {ell}^{n} does not divide q - 1 = {}", q - 1)]
    RootsOfUnityMissing { q: u32, ell: u32, n: u32 },
    #[error("BadCharacteristic: ell = {ell} divides q = {q}")]
    BadCharacteristic { q: u32, ell: u32 },
    #[error("DepthUnsupported: depth {0} exceeds the cap of 3")]
    DepthUnsupported(usize),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("FieldTooLarge: finite field of size {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("FieldMismatch")]
    FieldMismatch,
    #[error("NotAUnit: valuation {0} is nonzero")]
    NotAUnit(i64),
    #[error("DegreeUnsupported: degree {0}")]
    DegreeUnsupported(usize),
    #[error("DepthZero: the field has no residue map")]
    DepthZero,
    #[error("NotUnramified: class has nonzero residue")]
    NotUnramified,
    #[error("NotAField: the Kummer generator is an ell-th power")]
    NotAField,
    #[error("UnsupportedShape: {0}")]
    UnsupportedShape(String),
    #[error("UnsupportedField: {0}")]
    UnsupportedField(String),
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("InternalVerificationFailed: {0}")]
    InternalVerificationFailed(String),
    #[error("ZeroEntry: quadratic form entries must be nonzero")]
    ZeroEntry,
    #[error("OddDimension: similarity factors need an even-dimensional form")]
    OddDimension,
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::RootsOfUnityMissing { .. } => "RootsOfUnityMissing",
            Error::BadCharacteristic { .. } => "BadCharacteristic",
            Error::DepthUnsupported(_) => "DepthUnsupported",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NotAUnit(_) => "NotAUnit",
            Error::DegreeUnsupported(_) => "DegreeUnsupported",
            Error::DepthZero => "DepthZero",
            Error::NotUnramified => "NotUnramified",
            Error::NotAField => "NotAField",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InternalVerificationFailed(_) => "InternalVerificationFailed",
            Error::ZeroEntry => "ZeroEntry",
            Error::OddDimension => "OddDimension",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
