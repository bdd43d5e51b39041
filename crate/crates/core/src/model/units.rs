// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use crate::{Error, Result};

/// Reduced Planck constant in μeV·ps.
pub const HBAR_UEV_PS: f64 = 658.2119569;

/// Conversion between energies (μeV) and angular rates (1/ps).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { hbar: HBAR_UEV_PS }
    }
}

impl UnitSystem {
    pub fn rate(&self, energy_uev: f64) -> f64 {
        energy_uev / self.hbar
    }

    pub fn energy(&self, rate_per_ps: f64) -> f64 {
        rate_per_ps * self.hbar
    }
}

/// Angular rate in 1/ps for an energy in μeV.
pub fn energy_to_rate(energy_uev: f64) -> f64 {
    energy_uev / HBAR_UEV_PS
}

/// Angular rate expressed in units of 10⁹ rad/s ("GHz" as quoted alongside μeV).
pub fn rate_to_ghz(rate_per_ps: f64) -> f64 {
    1000.0 * rate_per_ps
}

/// Cavity energy decay rate κ = E_c / Q, in the units of `cavity_energy`.
pub fn kappa_from_q(cavity_energy: f64, q: f64) -> Result<f64> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("Q must be positive, got {q}")));
    }
    if !(cavity_energy > 0.0 && cavity_energy.is_finite()) {
        return Err(Error::InvalidParameter(format!("cavity energy must be positive, got {cavity_energy}")));
    }
    Ok(cavity_energy / q)
}
