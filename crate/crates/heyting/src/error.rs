pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] heyting_core::Error),
    #[error("invalid input: {0}")]
    Format(String),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Process exit status: 3 for exhausted budgets, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        use heyting_core::Error as E;
        match self {
            Error::Algebra(E::BudgetExceeded(_) | E::NotFoundWithinBudget(_) | E::ClassificationBudgetExceeded(_)) => 3,
            _ => 2,
        }
    }
}
