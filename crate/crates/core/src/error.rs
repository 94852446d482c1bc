use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Product of two tropical weights left the 64-bit range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("arithmetic overflow in semiring product")]
pub struct Overflow;

/// Location-carrying parse failure for the text formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: Option<PathBuf>,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            file: None,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn in_file(mut self, file: impl Into<PathBuf>) -> Self {
        if self.file.is_none() {
            self.file = Some(file.into());
        }
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(p) => write!(f, "{}:{}:{}: {}", p.display(), self.line, self.column, self.message),
            None => write!(f, "{}:{}: {}", self.line, self.column, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("operands live in different semirings ({left} vs {right})")]
    SemiringMismatch { left: String, right: String },
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("element is not in the carrier of {0}")]
    NotInCarrier(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid semiring table: {0}")]
    TableShape(String),
    #[error("table does not satisfy the semiring axioms: {0}")]
    TableAxioms(String),
    #[error("semiring {semiring} is not supported by {operation}: {reason}")]
    UnsupportedSemiring {
        semiring: String,
        operation: &'static str,
        reason: &'static str,
    },
    #[error("certificate does not verify: {0}")]
    InvalidCertificate(String),
    #[error("chain is malformed: {0}")]
    MalformedChain(String),
    #[error("middle automata of the composed simulations differ")]
    MiddleMismatch,
    #[error("emitted evidence failed re-verification: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
