use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("alphabet size mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("letter {letter} out of range for alphabet of size {d}")]
    LetterOutOfRange { letter: u8, d: usize },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("undefined state name `{name}` at line {line}")]
    UndefinedState { name: String, line: usize },

    #[error("output row of state `{state}` is not a permutation of the alphabet")]
    NonPermutation { state: String },

    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: u64, modulus: u64 },

    #[error("state budget of {budget} exceeded")]
    StateBudget { budget: usize },

    #[error("degree bound of {bound} exceeded")]
    DegreeBound { bound: i64 },

    #[error("input is not spherically homogeneous")]
    NotSphericallyHomogeneous,

    #[error("element does not lie in the index-d subgroup H")]
    NotInSubgroup,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal defect: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
