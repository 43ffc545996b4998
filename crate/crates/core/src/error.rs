use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown construction `{0}`")]
    UnknownName(String),

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("{op} requires a loopless graph")]
    LoopsNotAllowed { op: &'static str },

    #[error("{op} supports at most {max} vertices, got {n}")]
    TooLarge { op: &'static str, n: usize, max: usize },

    #[error("order t = {t} outside the supported range {min}..={max}")]
    OrderOutOfRange { t: usize, min: usize, max: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("enumeration of {required} items exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("degenerate stationary state: {0}")]
    Degenerate(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("type error: {0}")]
    Type(String),

    #[error("catalogue: {0}")]
    Catalogue(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn params(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}
