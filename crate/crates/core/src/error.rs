use alloc::string::String;
use core::fmt;

/// Errors raised anywhere in the algebra stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrimeCharacteristic(u64),
    FieldTooLarge {
        p: u64,
        e: u32,
    },
    MissingModulus,
    UnexpectedModulus,
    ModulusDegreeMismatch {
        expected: u32,
        found: usize,
    },
    NonMonicModulus,
    ReducibleModulus,
    ResidueOutOfRange {
        value: u64,
        p: u32,
    },
    MixedFields,
    DivisionByZero,
    BothZero,
    NonUnitConstantTerm,
    InnerConstantNonzero,
    /// A coefficient at or past the truncation order was requested.
    OrderUnderflow {
        index: usize,
        order: usize,
    },
    ExponentOverflow,
    /// A Carlitz quantity past the context's cache bound was requested.
    BeyondCache {
        index: usize,
        bound: usize,
    },
    IndexTooLargeForLiteralEnumeration {
        m: usize,
        cap: usize,
    },
    IndexTooLarge {
        m: usize,
        cap: usize,
    },
    /// The lambda series of a family does not start with 1.
    Normalization,
    MethodNotApplicable {
        method: &'static str,
        reason: &'static str,
    },
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeCharacteristic(p) => write!(f, "NonPrimeCharacteristic: {p} is not prime"),
            Error::FieldTooLarge { p, e } => {
                write!(f, "FieldTooLarge: {p}^{e} does not fit the packed element representation")
            }
            Error::MissingModulus => write!(f, "MissingModulus: extension degree >= 2 needs a modulus"),
            Error::UnexpectedModulus => write!(f, "UnexpectedModulus: prime fields take no modulus"),
            Error::ModulusDegreeMismatch { expected, found } => {
                write!(f, "ModulusDegreeMismatch: expected degree {expected}, found {found}")
            }
            Error::NonMonicModulus => write!(f, "NonMonicModulus: modulus must be monic"),
            Error::ReducibleModulus => write!(f, "ReducibleModulus: modulus is not irreducible"),
            Error::ResidueOutOfRange { value, p } => {
                write!(f, "ResidueOutOfRange: {value} is not in [0, {p})")
            }
            Error::MixedFields => write!(f, "MixedFields: operands live in different fields"),
            Error::DivisionByZero => write!(f, "DivisionByZero"),
            Error::BothZero => write!(f, "BothZero: gcd(0, 0) is undefined"),
            Error::NonUnitConstantTerm => write!(f, "NonUnitConstantTerm: series constant term is zero"),
            Error::InnerConstantNonzero => {
                write!(f, "InnerConstantNonzero: inner series of a composition must vanish at 0")
            }
            Error::OrderUnderflow { index, order } => {
                write!(f, "OrderUnderflow: index {index} is not below truncation order {order}")
            }
            Error::ExponentOverflow => write!(f, "ExponentOverflow: exponent exceeds 2^62"),
            Error::BeyondCache { index, bound } => {
                write!(f, "BeyondCache: index {index} exceeds Carlitz cache bound {bound}")
            }
            Error::IndexTooLargeForLiteralEnumeration { m, cap } => {
                write!(f, "IndexTooLargeForLiteralEnumeration: m = {m} exceeds {cap}")
            }
            Error::IndexTooLarge { m, cap } => write!(f, "IndexTooLarge: m = {m} exceeds {cap}"),
            Error::Normalization => write!(f, "NormalizationError: lambda_0 must equal 1"),
            Error::MethodNotApplicable { method, reason } => {
                write!(f, "MethodNotApplicable: {method} {reason}")
            }
            Error::Parse(msg) => write!(f, "ParseError: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
