// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Physical rates and energies of the coupled QD–cavity model (μeV, ps).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Emitter–cavity coupling g.
    pub g: f64,
    /// Cavity field decay κ.
    pub kappa: f64,
    /// Spontaneous emission E → G.
    pub gamma: f64,
    /// Incoherent relaxation U → E.
    pub gamma_r: f64,
    /// Pure dephasing of the emitter.
    pub gamma_ph: f64,
    /// Cavity–QD detuning ω_c − (ω_E − ω_G).
    pub delta: f64,
    /// Time-integrated pump area (dimensionless).
    pub p0: f64,
    /// Pump pulse center, ps.
    pub t0: f64,
    /// Pump pulse FWHM, ps.
    pub tau_fwhm: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            g: 18.0,
            kappa: 16.0,
            gamma: 0.13,
            gamma_r: 38.0,
            gamma_ph: 2.6,
            delta: 0.0,
            p0: 0.1,
            t0: 5.0,
            tau_fwhm: 1.0,
        }
    }
}

impl SystemParams {
    /// All dissipative rates and the pump switched off.
    pub fn closed(g: f64, delta: f64) -> Self {
        Self { g, kappa: 0.0, gamma: 0.0, gamma_r: 0.0, gamma_ph: 0.0, delta, p0: 0.0, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("g", self.g),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("gamma_r", self.gamma_r),
            ("gamma_ph", self.gamma_ph),
            ("p0", self.p0),
        ];
        for (name, v) in named {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if !self.delta.is_finite() || !self.t0.is_finite() {
            return Err(Error::InvalidParameter("delta and t0 must be finite".into()));
        }
        if !(self.tau_fwhm > 0.0 && self.tau_fwhm.is_finite()) {
            return Err(Error::InvalidParameter(format!("tau_fwhm must be positive, got {}", self.tau_fwhm)));
        }
        Ok(())
    }
}
