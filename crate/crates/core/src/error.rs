use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    /// Layouts, dimensions or registers that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),
    /// Arguments outside the domain of a formula or construction.
    #[error("domain error: {0}")]
    Domain(String),
    /// Requests beyond the desk-scale limits of the simulator.
    #[error("limit exceeded: {what} = {value} (max {max})")]
    Limit {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn structural(msg: impl Into<String>) -> LabError {
    LabError::Structural(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> LabError {
    LabError::Domain(msg.into())
}
