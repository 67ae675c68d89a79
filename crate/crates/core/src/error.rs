// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the numerical kernels, the channel algebra and the models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("singular parameters: {0}")]
    Singular(String),

    #[error("no decay: {0}")]
    NoDecay(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("at t = {t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Attach the evaluation time to an error raised while building a channel.
    pub fn at_time(self, t: f64) -> Self {
        Error::AtTime {
            t,
            source: Box::new(self),
        }
    }

    /// The innermost error, with any time context removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtTime { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
