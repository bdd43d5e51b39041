// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Complex, DVector};

use super::grid::TimeGrid;
use super::pump::PumpPulse;
use crate::model::{CMatrix, DensityMatrix, HilbertSpace, Level, Liouvillian, SystemParams, UnitSystem};
use crate::signal::DecayCurve;
use crate::{Error, Result};

type CVector = DVector<Complex<f64>>;

/// How the fixed-step RK4 map is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Propagation {
    /// Step-by-step RK4 on the vectorized state while the pulse is on; when
    /// the generator is time independent, the RK4 step for the linear system
    /// is the degree-4 Taylor polynomial of `h·L`, raised once to the number
    /// of steps per output sample.
    #[default]
    Propagator,
    /// RK4 on the density matrix itself with the operator-form generator at
    /// every step. Slow; kept as the reference path.
    Direct,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EvolveOptions {
    pub propagation: Propagation,
    /// Compute the minimum eigenvalue of ρ at every output sample.
    pub track_positivity: bool,
}

/// Observables of one run, sampled on the output grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// ⟨a†a⟩.
    pub photon_number: Vec<f64>,
    /// (G, E, U) populations summed over photon number.
    pub populations: Vec<[f64; 3]>,
    /// max |tr ρ − 1| over the output samples.
    pub trace_error: f64,
    /// max ‖ρ − ρ†‖ of the propagated state before re-Hermitization.
    pub hermiticity_drift: f64,
    /// min eigenvalue over the output samples, when tracked.
    pub min_eigenvalue: Option<f64>,
    pub final_state: DensityMatrix,
}

impl Trajectory {
    pub fn population(&self, level: Level) -> Vec<f64> {
        self.populations.iter().map(|p| p[level as usize]).collect()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

pub fn evolve(rho0: &DensityMatrix, params: &SystemParams, grid: &TimeGrid) -> Result<Trajectory> {
    evolve_with(rho0, params, grid, &EvolveOptions::default())
}

pub fn evolve_with(
    rho0: &DensityMatrix,
    params: &SystemParams,
    grid: &TimeGrid,
    options: &EvolveOptions,
) -> Result<Trajectory> {
    params.validate()?;
    let pulse = PumpPulse::from_params(params)?;
    if !pulse.is_off() && grid.step() > params.tau_fwhm / 20.0 * (1.0 + 1e-12) {
        return Err(Error::InvalidGrid(format!(
            "internal step {} ps does not resolve the {} ps pulse (need <= FWHM/20)",
            grid.step(),
            params.tau_fwhm
        )));
    }
    let space = rho0.space();
    let liouvillian = Liouvillian::new(params, space)?;
    let mut recorder = Recorder::new(space, grid.n_outputs(), options.track_positivity);
    recorder.record(rho0.matrix().clone(), grid.t_start())?;

    let last = match options.propagation {
        Propagation::Direct => run_direct(rho0, &liouvillian, &pulse, grid, &mut recorder)?,
        Propagation::Propagator => run_propagator(rho0, &liouvillian, &pulse, grid, &mut recorder)?,
    };
    Ok(recorder.finish(DensityMatrix::from_matrix_unchecked(space, last)))
}

fn run_direct(
    rho0: &DensityMatrix,
    l: &Liouvillian,
    pulse: &PumpPulse,
    grid: &TimeGrid,
    recorder: &mut Recorder,
) -> Result<CMatrix> {
    let h = grid.step();
    let mut rho = rho0.matrix().clone();
    for k in 1..grid.n_outputs() {
        let t_a = grid.output_time(k - 1);
        for s in 0..grid.steps_per_output() {
            let t = t_a + s as f64 * h;
            let k1 = l.apply(&rho, pulse.rate(t));
            let k2 = l.apply(&(&rho + k1.scale(h / 2.0)), pulse.rate(t + h / 2.0));
            let k3 = l.apply(&(&rho + k2.scale(h / 2.0)), pulse.rate(t + h / 2.0));
            let k4 = l.apply(&(&rho + k3.scale(h)), pulse.rate(t + h));
            rho += (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
            if s + 1 < grid.steps_per_output() {
                rho = (&rho + rho.adjoint()).scale(0.5);
            }
        }
        rho = recorder.record(rho, grid.output_time(k))?;
    }
    Ok(rho)
}

fn run_propagator(
    rho0: &DensityMatrix,
    l: &Liouvillian,
    pulse: &PumpPulse,
    grid: &TimeGrid,
    recorder: &mut Recorder,
) -> Result<CMatrix> {
    let d = l.space().dim();
    let h = grid.step();
    let fixed = l.fixed_superoperator();
    let pump = l.pump_superoperator();
    let sample_map = matrix_power(&rk4_linear_step(&fixed, h), grid.steps_per_output());
    let (on, off) = pulse.support();

    let mut v = CVector::from_column_slice(rho0.matrix().as_slice());
    for k in 1..grid.n_outputs() {
        let t_a = grid.output_time(k - 1);
        let t_b = grid.output_time(k);
        if !pulse.is_off() && t_b >= on && t_a <= off {
            let rhs = |t: f64, x: &CVector| -> CVector {
                let p = pulse.rate(t);
                let mut out = &fixed * x;
                if p != 0.0 {
                    out.axpy(Complex::new(p, 0.0), &(&pump * x), Complex::new(1.0, 0.0));
                }
                out
            };
            for s in 0..grid.steps_per_output() {
                let t = t_a + s as f64 * h;
                let k1 = rhs(t, &v);
                let k2 = rhs(t + h / 2.0, &(&v + k1.scale(h / 2.0)));
                let k3 = rhs(t + h / 2.0, &(&v + k2.scale(h / 2.0)));
                let k4 = rhs(t + h, &(&v + k3.scale(h)));
                v += (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
                if s + 1 < grid.steps_per_output() {
                    hermitize_vec(&mut v, d);
                }
            }
        } else {
            v = &sample_map * &v;
        }
        let rho = CMatrix::from_column_slice(d, d, v.as_slice());
        let rho = recorder.record(rho, t_b)?;
        v.copy_from_slice(rho.as_slice());
    }
    Ok(CMatrix::from_column_slice(d, d, v.as_slice()))
}

/// `I + hL + (hL)²/2 + (hL)³/6 + (hL)⁴/24`, the exact RK4 map of `ẋ = Lx`.
fn rk4_linear_step(generator: &CMatrix, h: f64) -> CMatrix {
    let n = generator.nrows();
    let a = generator.scale(h);
    let id = CMatrix::identity(n, n);
    let mut m = &id + a.scale(0.25);
    m = &id + (&a * m).scale(1.0 / 3.0);
    m = &id + (&a * m).scale(0.5);
    &id + &a * m
}

fn matrix_power(m: &CMatrix, mut k: usize) -> CMatrix {
    let n = m.nrows();
    let mut result = CMatrix::identity(n, n);
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    result
}

fn hermitize_vec(v: &mut CVector, d: usize) {
    for j in 0..d {
        for i in j..d {
            let a = v[i + j * d];
            let b = v[j + i * d];
            let avg = (a + b.conj()) * 0.5;
            v[i + j * d] = avg;
            v[j + i * d] = avg.conj();
        }
    }
}

struct Recorder {
    space: HilbertSpace,
    times: Vec<f64>,
    photon_number: Vec<f64>,
    populations: Vec<[f64; 3]>,
    trace_error: f64,
    hermiticity_drift: f64,
    min_eigenvalue: Option<f64>,
}

impl Recorder {
    fn new(space: HilbertSpace, capacity: usize, track_positivity: bool) -> Self {
        Self {
            space,
            times: Vec::with_capacity(capacity),
            photon_number: Vec::with_capacity(capacity),
            populations: Vec::with_capacity(capacity),
            trace_error: 0.0,
            hermiticity_drift: 0.0,
            min_eigenvalue: track_positivity.then_some(f64::INFINITY),
        }
    }

    /// Stores observables of the re-Hermitized state and returns it.
    fn record(&mut self, rho: CMatrix, t: f64) -> Result<CMatrix> {
        if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { time_ps: t });
        }
        let d = rho.nrows();
        let mut drift = 0.0f64;
        for j in 0..d {
            for i in j..d {
                drift = drift.max((rho[(i, j)] - rho[(j, i)].conj()).norm());
            }
        }
        self.hermiticity_drift = self.hermiticity_drift.max(drift);
        let rho = (&rho + rho.adjoint()).scale(0.5);
        let state = DensityMatrix::from_matrix_unchecked(self.space, rho);
        self.trace_error = self.trace_error.max((state.trace() - 1.0).abs());
        if let Some(min) = self.min_eigenvalue.as_mut() {
            *min = min.min(state.min_eigenvalue());
        }
        self.times.push(t);
        self.photon_number.push(state.photon_number());
        self.populations.push(state.populations());
        Ok(state.into_matrix())
    }

    fn finish(self, final_state: DensityMatrix) -> Trajectory {
        Trajectory {
            times: self.times,
            photon_number: self.photon_number,
            populations: self.populations,
            trace_error: self.trace_error,
            hermiticity_drift: self.hermiticity_drift,
            min_eigenvalue: self.min_eigenvalue,
            final_state,
        }
    }
}

/// Cavity emission rate `(κ/ħ)·⟨a†a⟩(t)` in photons/ps.
pub fn photon_trace(traj: &Trajectory, kappa: f64) -> Result<DecayCurve> {
    let rate = UnitSystem::default().rate(kappa);
    DecayCurve::new(traj.times.clone(), traj.photon_number.iter().map(|n| rate * n).collect())
}
