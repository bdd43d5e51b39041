// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite state encountered at t = {time_ps} ps")]
    NonFinite { time_ps: f64 },

    #[error("no oscillation detected")]
    NoOscillation,

    #[error("outside oracle validity: {0}")]
    OracleValidity(String),

    #[error("fit failed: {0}")]
    FitFailed(String),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonFinite { .. } | Error::NoOscillation | Error::FitFailed(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
