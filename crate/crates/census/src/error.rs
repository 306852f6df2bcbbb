use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Algebra(#[from] polyprime_core::Error),

    #[error(
        "enumeration needs {needed} checks but the budget is {budget}; \
         use Monte Carlo estimation (mc) instead"
    )]
    BudgetExceeded { needed: String, budget: u128 },

    #[error("unknown property {0:?}")]
    UnknownProperty(String),

    #[error("unknown formula {0:?}")]
    UnknownFormula(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("rejection sampling found no admissible sample in {0} draws")]
    RejectionExhausted(u64),

    #[error("report output failed: {0}")]
    Io(#[from] std::io::Error),

    #[error("report encoding failed: {0}")]
    Encoding(String),
}

pub type Result<T, E = CensusError> = std::result::Result<T, E>;
