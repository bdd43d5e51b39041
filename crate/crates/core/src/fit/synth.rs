// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Poisson};

use super::decay::{model_curve, DecayFitParams, FrozenParams};
use crate::signal::DecayCurve;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SyntheticCurve {
    /// Poisson-distributed counts.
    pub counts: DecayCurve,
    /// Noise-free mean, peaking at `peak_counts`.
    pub expected: DecayCurve,
    /// Input parameters with the curve-unit ones rescaled to counts.
    pub truth: DecayFitParams,
}

/// Scales the model so that its maximum equals `peak_counts` and draws each
/// bin from a Poisson distribution with that mean.
///
/// The generator is ChaCha20 (`rand_chacha` 0.9) seeded through
/// `seed_from_u64`, and bins are drawn in time order, so a seed fixes the
/// output bit for bit.
pub fn synthesize(
    theta_true: &DecayFitParams,
    frozen: &FrozenParams,
    times: &[f64],
    peak_counts: f64,
    seed: u64,
) -> Result<SyntheticCurve> {
    if !(peak_counts > 1.0 && peak_counts.is_finite()) {
        return Err(Error::InvalidParameter(format!("peak_counts must exceed 1, got {peak_counts}")));
    }
    let model = model_curve(theta_true, frozen, times)?;
    let peak = model.peak().1;
    if !(peak > 0.0) {
        return Err(Error::InvalidParameter("model curve has no positive values to scale".into()));
    }
    let factor = peak_counts / peak;
    let expected = model.scaled(factor);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let counts = expected
        .values()
        .iter()
        .map(|&mean| {
            if mean > 0.0 {
                let draw: f64 = Poisson::new(mean)
                    .map_err(|e| Error::InvalidParameter(format!("Poisson mean {mean}: {e}")))?
                    .sample(&mut rng);
                Ok(draw)
            } else {
                Ok(0.0)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SyntheticCurve { counts: expected.with_values(counts)?, expected, truth: theta_true.with_curve_scale(factor) })
}
