use alloc::string::String;

/// Failures shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A stated hypothesis of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The work needed exceeds the granted budget.
    #[error("budget exceeded: need {needed}, budget {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
