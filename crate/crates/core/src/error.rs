use std::fmt;

/// Error type shared by the whole calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A rational function or rational number was built with denominator zero.
    ZeroDenominator,
    /// Two operands live over different geometries (generators or truncation differ).
    GeometryMismatch,
    /// `exp` requires the constant term to vanish.
    NonzeroConstantTerm,
    /// `log`, `pow` and `invert` require constant term one.
    ConstantTermNotOne,
    /// A class lies outside the truncation ideal bound.
    OutOfTruncation { omega: u64, bound: u64 },
    /// A table or series key violates the slope constraint of the ambient context.
    InadmissibleKey(String),
    /// A primitive table contains a key with Euler characteristic different from one.
    BadPrimitiveTable(String),
    /// The adjoint-exponential input carries a term of degree zero.
    NonPositiveSupport,
    /// A subspace datum is not a proper subspace (dimension zero or full).
    NotProperSubspace,
    /// A filtration violates monotonicity or does not end at the totals.
    MalformedFiltration(String),
    /// A stratified model carries structurally inconsistent data.
    MalformedModel(String),
    /// Input text could not be parsed.
    Parse(String),
    /// Any other structural validation failure.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "denominator is zero"),
            Error::GeometryMismatch => write!(f, "operands have different geometries"),
            Error::NonzeroConstantTerm => write!(f, "constant term must be zero"),
            Error::ConstantTermNotOne => write!(f, "constant term must be one"),
            Error::OutOfTruncation { omega, bound } => {
                write!(
                    f,
                    "class of degree {omega} exceeds truncation bound {bound}"
                )
            }
            Error::InadmissibleKey(key) => write!(f, "inadmissible key: {key}"),
            Error::BadPrimitiveTable(key) => {
                write!(
                    f,
                    "primitive table requires Euler characteristic 1, got key: {key}"
                )
            }
            Error::NonPositiveSupport => {
                write!(f, "adjoint exponent must be supported on positive classes")
            }
            Error::NotProperSubspace => write!(f, "subspace datum is not proper"),
            Error::MalformedFiltration(msg) => write!(f, "malformed filtration: {msg}"),
            Error::MalformedModel(msg) => write!(f, "malformed model: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
