use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} refused: n = {n} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("meet-in-the-middle refused: about {estimated} bytes needed, limit is {limit} bytes")]
    MemoryLimit { estimated: u128, limit: u64 },

    #[error("refused: {0}")]
    Refused(String),

    #[error("budget exhausted after {nodes} nodes ({seconds:.3} s)")]
    BudgetExhausted { nodes: u64, seconds: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse error classes; the command-line tool maps each to its own exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-range input.
    Validation,
    /// A size cap or memory guard refused the work.
    Refusal,
    /// A search budget ran out before an exact answer was reached.
    Budget,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::Input(_) | Error::Json(_) | Error::Io(_) => {
                ErrorKind::Validation
            }
            Error::CapExceeded { .. } | Error::MemoryLimit { .. } | Error::Refused(_) => {
                ErrorKind::Refusal
            }
            Error::BudgetExhausted { .. } => ErrorKind::Budget,
        }
    }
}
