// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::problem::{FitOptions, FitProblem, FitResult};
use super::residuals::{residuals, Weighting};
use super::trf::least_squares_trf;
use crate::dynamics::{evolve, photon_trace, TimeGrid};
use crate::model::{DensityMatrix, HilbertSpace, SystemParams, HBAR_UEV_PS};
use crate::signal::{
    compose_from_emission, fit_exponential_tail, late_tail_start, DecayCurve, Detector, SlowComponent,
};
use crate::{Error, Result};

/// Free parameters of a decay-curve fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayFitParams {
    /// Cavity-emitter detuning, μeV.
    pub delta: f64,
    pub gamma_r: f64,
    pub gamma_ph: f64,
    /// Slow-component amplitude, curve units.
    #[serde(rename = "A_i")]
    pub a_i: f64,
    pub y0: f64,
    /// Curve units per (photon/ps).
    pub scale: f64,
    pub t0_shift: f64,
}

impl DecayFitParams {
    pub const NAMES: [&'static str; 7] = ["delta", "gamma_r", "gamma_ph", "A_i", "y0", "scale", "t0_shift"];

    pub fn to_vec(&self) -> Vec<f64> {
        vec![self.delta, self.gamma_r, self.gamma_ph, self.a_i, self.y0, self.scale, self.t0_shift]
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        match *v {
            [delta, gamma_r, gamma_ph, a_i, y0, scale, t0_shift] => {
                Ok(Self { delta, gamma_r, gamma_ph, a_i, y0, scale, t0_shift })
            }
            _ => Err(Error::DimensionMismatch { expected: 7, found: v.len() }),
        }
    }

    /// Same physics with the curve-unit parameters multiplied by `factor`.
    pub fn with_curve_scale(&self, factor: f64) -> Self {
        Self { a_i: self.a_i * factor, y0: self.y0 * factor, scale: self.scale * factor, ..*self }
    }
}

/// Parameters held fixed during a decay fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrozenParams {
    pub g: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub slow_decay_ps: f64,
    pub irf_fwhm_ps: f64,
    pub p0: f64,
    pub tau_fwhm_ps: f64,
    pub t0_ps: f64,
    pub n_max: usize,
    pub dt_internal_ps: f64,
}

impl Default for FrozenParams {
    fn default() -> Self {
        Self {
            g: 18.0,
            kappa: 16.0,
            gamma: 0.13,
            slow_decay_ps: 360.0,
            irf_fwhm_ps: 25.6,
            p0: 0.1,
            tau_fwhm_ps: 1.0,
            t0_ps: 5.0,
            n_max: 1,
            dt_internal_ps: 0.02,
        }
    }
}

impl FrozenParams {
    pub fn system(&self, theta: &DecayFitParams) -> SystemParams {
        SystemParams {
            g: self.g,
            kappa: self.kappa,
            gamma: self.gamma,
            gamma_r: theta.gamma_r,
            gamma_ph: theta.gamma_ph,
            delta: theta.delta,
            p0: self.p0,
            t0: self.t0_ps + theta.t0_shift,
            tau_fwhm: self.tau_fwhm_ps,
        }
    }

    pub fn detector(&self, theta: &DecayFitParams) -> Detector {
        Detector {
            scale: theta.scale,
            slow: SlowComponent {
                amplitude: theta.a_i,
                decay_ps: self.slow_decay_ps,
                offset: theta.y0,
                onset_ps: self.t0_ps + theta.t0_shift,
            },
            irf_fwhm_ps: self.irf_fwhm_ps,
        }
    }

    /// Expected Rabi period for a given detuning, ps.
    pub fn rabi_period_ps(&self, delta: f64) -> f64 {
        std::f64::consts::PI * HBAR_UEV_PS / (self.g * self.g + delta * delta / 4.0).sqrt()
    }
}

/// Cavity emission for θ on the given sample times.
fn emission(theta: &DecayFitParams, frozen: &FrozenParams, times: &[f64]) -> Result<DecayCurve> {
    let params = frozen.system(theta);
    let space = HilbertSpace::new(frozen.n_max)?;
    let grid = TimeGrid::matching(times, frozen.dt_internal_ps)?;
    let traj = evolve(&DensityMatrix::ground(space), &params, &grid)?;
    photon_trace(&traj, params.kappa)
}

/// Full detector-level model `IRF ⊗ (s·emission + slow) + y0` on `times`.
pub fn model_curve(theta: &DecayFitParams, frozen: &FrozenParams, times: &[f64]) -> Result<DecayCurve> {
    compose_from_emission(&emission(theta, frozen, times)?, &frozen.detector(theta))
}

/// Emission curves keyed by the parameters that require a new evolution, so
/// that derivatives along the linear parameters reuse them.
struct EmissionCache {
    entries: Mutex<VecDeque<([u64; 4], Arc<DecayCurve>)>>,
}

impl EmissionCache {
    const CAPACITY: usize = 16;

    fn new() -> Self {
        Self { entries: Mutex::new(VecDeque::with_capacity(Self::CAPACITY)) }
    }

    fn get(&self, theta: &DecayFitParams, frozen: &FrozenParams, times: &[f64]) -> Result<Arc<DecayCurve>> {
        let key = [theta.delta, theta.gamma_r, theta.gamma_ph, theta.t0_shift].map(f64::to_bits);
        if let Some((_, e)) = self.lock().iter().find(|(k, _)| *k == key) {
            return Ok(e.clone());
        }
        let curve = Arc::new(emission(theta, frozen, times)?);
        let mut entries = self.lock();
        if entries.len() == Self::CAPACITY {
            entries.pop_front();
        }
        entries.push_back((key, curve.clone()));
        Ok(curve)
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, VecDeque<([u64; 4], Arc<DecayCurve>)>> {
        self.entries.lock().unwrap_or_else(|p| p.into_inner())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayBounds {
    pub lower: DecayFitParams,
    pub upper: DecayFitParams,
}

impl Default for DecayBounds {
    fn default() -> Self {
        let inf = f64::INFINITY;
        Self {
            lower: DecayFitParams {
                delta: -200.0,
                gamma_r: 0.0,
                gamma_ph: 0.0,
                a_i: 0.0,
                y0: 0.0,
                scale: 0.0,
                t0_shift: -50.0,
            },
            upper: DecayFitParams {
                delta: 200.0,
                gamma_r: 500.0,
                gamma_ph: 500.0,
                a_i: inf,
                y0: inf,
                scale: inf,
                t0_shift: 50.0,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DecayFitOptions {
    pub bounds: DecayBounds,
    pub weighting: Weighting,
    pub fit: FitOptions,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayFitReport {
    pub params: DecayFitParams,
    /// 1σ uncertainties, same layout as `params`.
    pub std_errors: DecayFitParams,
    pub frozen: FrozenParams,
    pub weighting: Weighting,
    /// Data span covers fewer than five expected oscillation periods.
    pub short_data: bool,
    pub fit: FitResult,
}

/// Starting point: fixed rates, Δ = 0, slow component and offset from the
/// late tail, scale from a linear match of the unit-scale model.
pub fn initial_guess(data: &DecayCurve, frozen: &FrozenParams) -> Result<DecayFitParams> {
    let onset = frozen.t0_ps;
    let tail = fit_exponential_tail(data, frozen.slow_decay_ps, onset, late_tail_start(data, onset))?;
    let mut theta = DecayFitParams {
        delta: 0.0,
        gamma_r: 30.0,
        gamma_ph: 3.0,
        a_i: tail.amplitude.max(0.0),
        y0: tail.offset.max(0.0),
        scale: 0.0,
        t0_shift: 0.0,
    };
    let background = model_curve(&theta, frozen, data.times())?;
    let unit = model_curve(&DecayFitParams { scale: 1.0, a_i: 0.0, y0: 0.0, ..theta }, frozen, data.times())?;
    let (mut num, mut den) = (0.0, 0.0);
    for ((u, b), y) in unit.values().iter().zip(background.values()).zip(data.values()) {
        num += u * (y - b);
        den += u * u;
    }
    if !(den > 0.0) {
        return Err(Error::InvalidParameter("model emission is identically zero; check p0".into()));
    }
    theta.scale = (num / den).max(1e-12 * data.peak().1.abs().max(1.0) / unit.peak().1);
    Ok(theta)
}

/// Least-squares fit of the detector-level model to a measured decay curve.
pub fn fit_decay(
    data: &DecayCurve,
    frozen: &FrozenParams,
    theta0: &DecayFitParams,
    options: &DecayFitOptions,
) -> Result<DecayFitReport> {
    if data.len() <= 7 {
        return Err(Error::InvalidParameter(format!("{} samples cannot constrain 7 parameters", data.len())));
    }
    // The model depends on δ only through δ², so the search runs over
    // u = δ² ≥ 0. Resonance is then a plain bound rather than a stationary
    // point that traps the optimizer, and the sign is set from the bounds.
    let (lo, hi) = (options.bounds.lower.delta, options.bounds.upper.delta);
    if !(lo <= hi) {
        return Err(Error::InvalidParameter(format!("delta bounds [{lo}, {hi}] are empty")));
    }
    let (abs_lo, abs_hi) = match (lo, hi) {
        _ if lo >= 0.0 => (lo, hi),
        _ if hi <= 0.0 => (-hi, -lo),
        _ => (0.0, hi.max(-lo)),
    };
    let unfold = |t: &[f64]| -> Result<DecayFitParams> {
        let mut theta = DecayFitParams::from_slice(t)?;
        theta.delta = theta.delta.max(0.0).sqrt();
        Ok(theta)
    };

    let weights = options.weighting.weights(data);
    let cache = EmissionCache::new();
    let model = |t: &[f64]| -> Result<DecayCurve> {
        let theta = unfold(t)?;
        let e = cache.get(&theta, frozen, data.times())?;
        compose_from_emission(&e, &frozen.detector(&theta))
    };
    let residual = |t: &[f64]| residuals(t, data, model, &weights);

    let peak = data.peak().1.abs().max(f64::MIN_POSITIVE);
    let typical = vec![
        100.0,
        1.0,
        1.0,
        theta0.a_i.abs().max(1e-2 * peak),
        theta0.y0.abs().max(1e-3 * peak),
        theta0.scale.abs().max(f64::MIN_POSITIVE),
        1.0,
    ];
    let (mut lower, mut upper) = (options.bounds.lower, options.bounds.upper);
    lower.delta = abs_lo * abs_lo;
    upper.delta = abs_hi * abs_hi;
    let start = theta0.delta.abs().clamp(abs_lo, abs_hi);
    let start = DecayFitParams { delta: start * start, ..*theta0 };
    let problem = FitProblem::new(residual, start.to_vec())
        .with_bounds(lower.to_vec(), upper.to_vec())?
        .with_typical(typical)?
        .with_options(options.fit);
    let mut fit = least_squares_trf(&problem)?;

    // Back to δ. The delta-method σ_u / 2|δ| diverges at resonance, where the
    // half-width of the |δ| interval is √σ_u; report the smaller of the two.
    let u = fit.theta[0].max(0.0);
    let abs_delta = u.sqrt();
    let sign = if abs_delta > hi { -1.0 } else { 1.0 };
    let sigma_u = fit.std_errors[0];
    let sigma_delta = if sigma_u.is_finite() {
        let root = sigma_u.sqrt();
        if abs_delta > 0.0 {
            (sigma_u / (2.0 * abs_delta)).min(root)
        } else {
            root
        }
    } else {
        sigma_u
    };
    let factor = if sigma_u > 0.0 && sigma_u.is_finite() { sign * sigma_delta / sigma_u } else { f64::NAN };
    if let Some(cov) = fit.covariance.as_mut() {
        cov.row_mut(0).scale_mut(factor);
        cov.column_mut(0).scale_mut(factor);
    }
    fit.theta[0] = sign * abs_delta;
    fit.std_errors[0] = sigma_delta;
    let params = DecayFitParams::from_slice(&fit.theta)?;
    let std_errors = DecayFitParams::from_slice(&fit.std_errors)?;
    let short_data = data.t_end() - data.t_start() < 5.0 * frozen.rabi_period_ps(params.delta);
    Ok(DecayFitReport { params, std_errors, frozen: *frozen, weighting: options.weighting, short_data, fit })
}
