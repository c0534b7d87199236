use thiserror::Error;

use crate::words::Word;

/// Errors raised across the crate.
///
/// The CLI maps variants onto stable exit codes through [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size {0} outside 1..={max}", max = crate::words::MAX_ALPHABET)]
    AlphabetSize(usize),

    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(char),

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),

    #[error("k must be at least 1")]
    ZeroK,

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("word {word} has length {len}, expected {expected}")]
    WrongLength { word: String, len: usize, expected: usize },

    #[error("enumeration of {requested} items exceeds the limit of {limit}")]
    BoundExceeded { requested: u128, limit: u128 },

    #[error("not a partition of A^k: {0}")]
    NotAPartition(String),

    #[error("closure violation: {u} and {v} are related but {u}{letter} and {v}{letter} are not")]
    ClosureViolation { u: String, v: String, letter: char },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("set is not closed under {0}")]
    NotClosed(&'static str),

    #[error("not a semaphore code: {0}")]
    NotSemaphore(String),

    #[error("code does not cover A^{k}: {word} has no suffix in it")]
    NotCovering { word: String, k: usize },

    #[error("code word {0} is longer than k")]
    CodeTooLong(String),

    #[error("word {0} is not in the code")]
    NotInCode(String),

    #[error("the code {{ε}} has no right action on nonempty words")]
    EpsilonCode,

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("graph is not {0}-reset: {1} is not a reset word")]
    NotKReset(usize, String),

    #[error("graph has {0} vertices, above the limit of {1}")]
    GraphTooLarge(usize, usize),

    #[error("alphabet must have at least two letters")]
    UnaryAlphabet,

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("lumpability violated at states {s} and {t}")]
    NotLumpable { s: String, t: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::UnknownLetter(_)
            | Error::DuplicateLetter(_)
            | Error::AlphabetSize(_) => 2,
            Error::Internal(_) | Error::NotLumpable { .. } => 3,
            Error::BoundExceeded { .. } | Error::GraphTooLarge(..) => 4,
            _ => 1,
        }
    }

    pub(crate) fn wrong_length(word: &Word, expected: usize) -> Self {
        Error::WrongLength {
            word: word.to_string(),
            len: word.len(),
            expected,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
