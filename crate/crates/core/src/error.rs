use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic routines in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `n!!` requested for `n < -1`.
    NegativeDoubleFactorial(i64),
    /// Two series over different alphabets were combined.
    AlphabetMismatch,
    /// Variable names in an alphabet must be unique and weights positive.
    InvalidAlphabet(String),
    /// A monomial exponent vector does not match the alphabet length.
    ArityMismatch { expected: usize, found: usize },
    /// `(1 - u)^r` needs `u` without constant term.
    NonzeroConstantTerm,
    /// A substitution image has lower degree than the variable it replaces.
    DegreeDroppingImage { var: String },
    /// A substitution was given the wrong number of images.
    ImageCountMismatch { expected: usize, found: usize },
    /// A coefficient above the truncation order cannot be determined.
    BeyondTruncation { degree: u32, order: u32 },
    /// A basis label `(k, p)` with `2p > k` (or `2p + 2l > k`).
    InvalidIndex { k: u32, p: u32 },
    /// The operation expects an element in a different basis.
    WrongBasis {
        expected: &'static str,
        found: &'static str,
    },
    /// The curvature parameter is zero or otherwise not invertible.
    SingularCurvature,
    /// A square root required for exact evaluation is irrational.
    IrrationalRoot,
    /// Malformed textual input.
    Parse(String),
    /// A variable name not present in the alphabet.
    UnknownVariable(String),
    /// No verification suite with this name.
    UnknownSuite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeDoubleFactorial(n) => write!(f, "double factorial undefined for {n}"),
            Error::AlphabetMismatch => f.write_str("series are over different alphabets"),
            Error::InvalidAlphabet(msg) => write!(f, "invalid alphabet: {msg}"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} exponents, found {found}")
            }
            Error::NonzeroConstantTerm => f.write_str("series has a nonzero constant term"),
            Error::DegreeDroppingImage { var } => {
                write!(f, "image of `{var}` has degree below the variable weight")
            }
            Error::ImageCountMismatch { expected, found } => {
                write!(f, "expected {expected} substitution images, found {found}")
            }
            Error::BeyondTruncation { degree, order } => {
                write!(f, "degree {degree} exceeds truncation order {order}")
            }
            Error::InvalidIndex { k, p } => write!(f, "invalid basis index ({k}, {p})"),
            Error::WrongBasis { expected, found } => {
                write!(f, "expected an element in basis {expected}, found {found}")
            }
            Error::SingularCurvature => f.write_str("curvature must be nonzero and invertible"),
            Error::IrrationalRoot => f.write_str("exact value requires an irrational square root"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::UnknownSuite(name) => write!(f, "unknown verification suite `{name}`"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
