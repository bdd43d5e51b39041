// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use crate::model::SystemParams;
use crate::signal::FWHM_PER_SIGMA;
use crate::{Error, Result};

/// Half-width of the interval, in standard deviations, outside which the
/// pulse is treated as exactly zero. exp(−72) ≈ 5e−32 of the peak.
pub const PUMP_SUPPORT_SIGMAS: f64 = 12.0;

/// Gaussian incoherent pump `P0/(τ√2π)·exp(−(t−t0)²/2τ²)` with unit-free area P0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpPulse {
    p0: f64,
    t0: f64,
    sigma: f64,
}

impl PumpPulse {
    pub fn new(p0: f64, t0: f64, tau_fwhm: f64) -> Result<Self> {
        if !(tau_fwhm > 0.0 && tau_fwhm.is_finite()) {
            return Err(Error::InvalidParameter(format!("pulse FWHM must be positive, got {tau_fwhm}")));
        }
        if !(p0 >= 0.0 && p0.is_finite()) {
            return Err(Error::InvalidParameter(format!("pump area must be >= 0, got {p0}")));
        }
        Ok(Self { p0, t0, sigma: tau_fwhm / FWHM_PER_SIGMA })
    }

    pub fn from_params(params: &SystemParams) -> Result<Self> {
        Self::new(params.p0, params.t0, params.tau_fwhm)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_off(&self) -> bool {
        self.p0 == 0.0
    }

    /// Instantaneous G → U rate, 1/ps.
    pub fn rate(&self, t: f64) -> f64 {
        if self.p0 == 0.0 {
            return 0.0;
        }
        let x = (t - self.t0) / self.sigma;
        self.p0 / (self.sigma * (2.0 * PI).sqrt()) * (-0.5 * x * x).exp()
    }

    /// Interval outside which [`rate`](Self::rate) is negligible.
    pub fn support(&self) -> (f64, f64) {
        let half = PUMP_SUPPORT_SIGMAS * self.sigma;
        (self.t0 - half, self.t0 + half)
    }
}

pub fn pump_rate(t: f64, p0: f64, t0: f64, tau_fwhm: f64) -> Result<f64> {
    Ok(PumpPulse::new(p0, t0, tau_fwhm)?.rate(t))
}
