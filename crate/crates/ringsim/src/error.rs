use thiserror::Error;

use crate::states::ModalState;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid modulus polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("ring construction failed: {0}")]
    ConstructionFailure(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
    #[error("invalid threshold {t} (must be in 1..={r})")]
    InvalidThreshold { t: u32, r: u32 },
    #[error("width mismatch: {0}")]
    WidthMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("UNIF needs 2 to be a unit; modulus {0} is even")]
    NotInvertibleModulus(u64),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate is not invertible: {0}")]
    NotInvertible(String),
    #[error("witness construction does not apply (conj(eps) != -eps); sigma witness returned")]
    WitnessInapplicable { sigma: Box<ModalState> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("circuit contains a prep operation")]
    ContainsPrep,
    #[error("state of {bits} bits exceeds the cap of {cap} bits")]
    WidthOverflow { bits: usize, cap: usize },
    #[error("state support of {size} entries exceeds the cap of {cap}")]
    SupportOverflow { size: usize, cap: usize },
    #[error("invalid wire {wire} (width {width})")]
    InvalidWire { wire: usize, width: usize },
    #[error("too many branches: B = {b} exceeds the cap {cap}")]
    TooManyBranches { b: usize, cap: usize },
    #[error("too many variables: {n} exceeds the cap {cap}")]
    TooManyVariables { n: usize, cap: usize },
    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),
    #[error("cannot lower gate {0}")]
    CannotLower(String),
    #[error("gate {0} is not a permutation of basis states")]
    NotPermutation(String),
    #[error("invalid bit string `{0}`")]
    InvalidBits(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
