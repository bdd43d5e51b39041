// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::curve::DecayCurve;
use crate::{Error, Result};

/// Slowly decaying bare-cavity emission `A_i·exp(−(t−t0)/T)` plus offset `y0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlowComponent {
    /// A_i, curve units.
    pub amplitude: f64,
    /// T, ps.
    pub decay_ps: f64,
    /// y0, curve units. Added after IRF convolution by [`compose_model`](super::compose_model).
    pub offset: f64,
    /// Onset; the component is zero before it.
    pub onset_ps: f64,
}

impl SlowComponent {
    pub fn validate(&self) -> Result<()> {
        if !(self.decay_ps > 0.0 && self.decay_ps.is_finite()) {
            return Err(Error::InvalidParameter(format!("slow decay T must be positive, got {}", self.decay_ps)));
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::InvalidParameter(format!("A_i must be >= 0, got {}", self.amplitude)));
        }
        if !(self.offset >= 0.0 && self.offset.is_finite()) {
            return Err(Error::InvalidParameter(format!("y0 must be >= 0, got {}", self.offset)));
        }
        if !self.onset_ps.is_finite() {
            return Err(Error::InvalidParameter("slow-component onset must be finite".into()));
        }
        Ok(())
    }

    pub fn value(&self, t: f64) -> f64 {
        if t < self.onset_ps {
            0.0
        } else {
            self.amplitude * (-(t - self.onset_ps) / self.decay_ps).exp()
        }
    }
}

/// The exponential part on `times`, without `y0`.
pub fn slow_component(times: &[f64], sc: &SlowComponent) -> Result<DecayCurve> {
    sc.validate()?;
    DecayCurve::new(times.to_vec(), times.iter().map(|&t| sc.value(t)).collect())
}
