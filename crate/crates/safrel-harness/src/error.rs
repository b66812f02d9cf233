//! Harness error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid scenario configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Sut(#[from] safrel::SutError),
    #[error(transparent)]
    Policy(#[from] safrel::PolicyIoError),
    #[error("I/O failure at {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("CSV failure at {0}: {1}")]
    Csv(String, #[source] csv::Error),
}
