use thiserror::Error;

use crate::backends::BackendError;
use crate::ccd::CcdError;
use crate::config::ConfigError;
use crate::metrics::MetricsError;
use crate::text::TokenizeError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Top-level error for the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Tokenize(#[from] TokenizeError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Ccd(#[from] CcdError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("malformed trace record: {0}")]
    Trace(String),
}
