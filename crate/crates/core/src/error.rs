// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested orbit step lies beyond what the point's ternary depth
    /// can certify.
    #[error("precision exhausted: step {requested} requested but depth {depth} certifies at most step {max_safe}")]
    PrecisionExhausted {
        requested: u64,
        max_safe: u64,
        depth: usize,
    },

    #[error("invalid ternary digit {digit:?} at position {position}: Cantor digits must be 0 or 2")]
    InvalidDigit { position: usize, digit: char },

    #[error("enumeration too large: {what} (limit {limit})")]
    Resource { what: String, limit: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate bump: support 2*{outer} covers the whole circle")]
    DegenerateBump { outer: f64 },

    #[error("target sequence has {available} entries but step {requested} was requested")]
    TargetsExhausted { available: usize, requested: u64 },

    #[error("target file: {0}")]
    TargetFile(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Parameters or literals that were malformed or out of range.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_) | Error::InvalidDigit { .. } | Error::DegenerateBump { .. }
        )
    }

    /// Precision and resource failures, as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. } | Error::Resource { .. })
    }
}
