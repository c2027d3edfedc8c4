use std::fmt;

/// Errors surfaced by the toolkit.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate vector does not fit the group's factor list.
    ShapeMismatch { expected: usize, got: usize },
    /// Two values built over different groups were combined.
    GroupMismatch,
    /// Cyclic factors must be at least 2.
    InvalidFactor(u64),
    /// Probability masses must be nonnegative and sum to one.
    InvalidMass(String),
    /// A characteristic-function input is not hermitian or not normalized at zero.
    NotHermitian,
    /// Scalar argument outside the operation's domain.
    Domain { what: &'static str, value: f64 },
    /// A rational is not a member of the dual group or of the active window.
    NotInDual(String),
    /// The base sequence violates a precondition of the operation.
    InvalidBase(String),
    /// A subgroup description is invalid for the given base.
    InvalidSubgroup(String),
    /// A coefficient assignment violates its constraints.
    InvalidCoefficients(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { expected, got } => {
                write!(f, "coordinate shape mismatch: expected {expected} coordinates, got {got}")
            }
            Error::GroupMismatch => write!(f, "values belong to different groups"),
            Error::InvalidFactor(n) => write!(f, "cyclic factor must be at least 2, got {n}"),
            Error::InvalidMass(msg) => write!(f, "invalid probability masses: {msg}"),
            Error::NotHermitian => {
                write!(f, "input is not a hermitian characteristic function with value 1 at zero")
            }
            Error::Domain { what, value } => write!(f, "{what}: argument {value} outside domain"),
            Error::NotInDual(msg) => write!(f, "not a member: {msg}"),
            Error::InvalidBase(msg) => write!(f, "invalid base sequence: {msg}"),
            Error::InvalidSubgroup(msg) => write!(f, "invalid subgroup: {msg}"),
            Error::InvalidCoefficients(msg) => write!(f, "invalid coefficients: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
