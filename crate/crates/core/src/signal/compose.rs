// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use super::curve::DecayCurve;
use super::irf::convolve_irf;
use super::slow::SlowComponent;
use crate::dynamics::{evolve, photon_trace, TimeGrid};
use crate::model::{DensityMatrix, HilbertSpace, SystemParams};
use crate::Result;

/// Everything between the cavity emission rate and the recorded histogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector {
    /// Curve units per (photon/ps).
    pub scale: f64,
    pub slow: SlowComponent,
    pub irf_fwhm_ps: f64,
}

/// `IRF ⊗ [s·(κ/ħ)·⟨a†a⟩(t) + A_i·exp(−(t−t0)/T)] + y0`, starting from |G,0⟩.
pub fn compose_model(
    params: &SystemParams,
    space: HilbertSpace,
    grid: &TimeGrid,
    detector: &Detector,
) -> Result<DecayCurve> {
    detector.slow.validate()?;
    let traj = evolve(&DensityMatrix::ground(space), params, grid)?;
    let emission = photon_trace(&traj, params.kappa)?;
    compose_from_emission(&emission, detector)
}

/// Detector chain applied to a precomputed emission curve.
pub fn compose_from_emission(emission: &DecayCurve, detector: &Detector) -> Result<DecayCurve> {
    let raw: Vec<f64> = emission
        .times()
        .iter()
        .zip(emission.values())
        .map(|(&t, &e)| detector.scale * e + detector.slow.value(t))
        .collect();
    let convolved = convolve_irf(&emission.with_values(raw)?, detector.irf_fwhm_ps)?;
    let y0 = detector.slow.offset;
    let (times, values) = convolved.into_parts();
    DecayCurve::new(times, values.into_iter().map(|v| v + y0).collect())
}
