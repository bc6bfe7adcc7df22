use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("budget exceeded for {what}: need {needed}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("operands belong to different fields or groups")]
    SpecMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not an element of the group")]
    ElementNotInGroup,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("no conjugacy class with the requested data")]
    NoSuchClass,

    #[error("matrix is not semisimple")]
    NotSemisimple,

    #[error("simultaneous diagonalization failed to separate characters after {attempts} attempts: {detail}")]
    EigensolverDegeneracy { attempts: u32, detail: String },

    #[error("value {value} is not within tolerance of an integer (residual {residual:e})")]
    RoundingFailure { value: f64, residual: f64 },

    #[error("bad prime {0}: need a prime congruent to 1 mod 3")]
    BadPrime(u64),

    #[error("argument out of range: {0}")]
    BadRange(String),

    #[error("no decomposition witness for {0}")]
    NoWitness(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn budget(what: &'static str, needed: u128, budget: u128) -> Self {
        Error::BudgetExceeded {
            what,
            needed,
            budget,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::EigensolverDegeneracy { .. }
            | Error::RoundingFailure { .. }
            | Error::NoWitness(_) => 4,
            Error::Io(_) | Error::Json(_) | Error::Cache(_) => 1,
            _ => 2,
        }
    }
}
