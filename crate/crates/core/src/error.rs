use std::fmt;

/// Errors reported by the exact-algebra and fiber-analysis layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector dimensions do not match the operation's contract.
    DimensionMismatch { expected: usize, got: usize },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Exact inversion of a singular matrix was requested.
    Singular,
    /// A unimodular integer matrix was required (determinant must be ±1).
    NotUnimodular,
    /// Generators of a set do not share dimension, grid, or window layout.
    IncompatibleGenerators(String),
    /// The residue class of the origin does not meet the requested window.
    EmptyZeroClass,
    /// A modulation sample does not belong to the subgroup under test.
    SampleNotInSubgroup(String),
    /// Malformed input document.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotUnimodular => write!(f, "matrix is not unimodular"),
            Error::IncompatibleGenerators(msg) => write!(f, "incompatible generators: {msg}"),
            Error::EmptyZeroClass => {
                write!(f, "the residue class of 0 does not meet the window")
            }
            Error::SampleNotInSubgroup(v) => {
                write!(f, "modulation sample {v} is not a member of the subgroup")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
