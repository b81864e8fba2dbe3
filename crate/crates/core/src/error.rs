use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// A parameter lies outside the region where the closed forms converge.
    #[error("parameter `{param}` = {value} out of domain: {reason}")]
    Domain {
        param: &'static str,
        value: String,
        reason: &'static str,
    },
    /// An integer index (cycle length, uncle bound, ...) is below the minimum
    /// the formula is defined for.
    #[error("`{param}` = {value} is below the minimum {min}")]
    IndexTooSmall {
        param: &'static str,
        value: i64,
        min: i64,
    },
    #[error("invalid protocol parameters: {0}")]
    Params(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

pub(crate) fn require_at_least(param: &'static str, value: i64, min: i64) -> Result<()> {
    if value < min {
        Err(ModelError::IndexTooSmall { param, value, min })
    } else {
        Ok(())
    }
}
