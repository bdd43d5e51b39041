// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form single-excitation dynamics, independent of the density-matrix
//! integrator. Valid without pump and pure dephasing: the states |E,0⟩ and
//! |G,1⟩ then evolve under a 2×2 non-Hermitian generator and every decay
//! channel empties into |G,0⟩, which never feeds back.

use nalgebra::{Complex, Matrix2, Vector2};

use super::grid::TimeGrid;
use crate::model::{SystemParams, UnitSystem};
use crate::signal::DecayCurve;
use crate::{Error, Result};

type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExcitationStart {
    /// c_E(0) = 1.
    #[default]
    Emitter,
    /// c_1(0) = 1.
    Photon,
}

#[derive(Debug, Clone)]
pub struct SingleExcitationTrace {
    pub times: Vec<f64>,
    /// |c_1|² = ⟨a†a⟩.
    pub photon_number: Vec<f64>,
    /// |c_E|².
    pub emitter_population: Vec<f64>,
}

impl SingleExcitationTrace {
    /// `(κ/ħ)|c_1|²` in photons/ps.
    pub fn emission(&self, kappa: f64) -> Result<DecayCurve> {
        let rate = UnitSystem::default().rate(kappa);
        DecayCurve::new(self.times.clone(), self.photon_number.iter().map(|n| rate * n).collect())
    }
}

pub fn single_excitation_oracle(
    params: &SystemParams,
    grid: &TimeGrid,
    start: ExcitationStart,
) -> Result<SingleExcitationTrace> {
    params.validate()?;
    if params.p0 != 0.0 {
        return Err(Error::OracleValidity("pump must be off (p0 = 0)".into()));
    }
    if params.gamma_ph != 0.0 {
        return Err(Error::OracleValidity("pure dephasing must be off".into()));
    }
    let u = UnitSystem::default();
    let (g, k, gm, d) = (u.rate(params.g), u.rate(params.kappa), u.rate(params.gamma), u.rate(params.delta));
    let generator =
        Matrix2::new(C64::new(-gm / 2.0, 0.0), C64::new(0.0, -g), C64::new(0.0, -g), C64::new(-k / 2.0, -d));
    let step = expm_2x2(&generator, grid.dt_output());
    let mut amp = match start {
        ExcitationStart::Emitter => Vector2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        ExcitationStart::Photon => Vector2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
    };
    let n = grid.n_outputs();
    let mut trace = SingleExcitationTrace {
        times: grid.output_times(),
        photon_number: Vec::with_capacity(n),
        emitter_population: Vec::with_capacity(n),
    };
    for _ in 0..n {
        trace.emitter_population.push(amp[0].norm_sqr());
        trace.photon_number.push(amp[1].norm_sqr());
        amp = step * amp;
    }
    Ok(trace)
}

/// exp(M t) = e^{mt}[cosh(st)·I + sinh(st)/s·(M − mI)], m = tr M/2, s² = det-free discriminant.
fn expm_2x2(m: &Matrix2<C64>, t: f64) -> Matrix2<C64> {
    let mean = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let half_diff = (m[(0, 0)] - m[(1, 1)]) * 0.5;
    let s = (half_diff * half_diff + m[(0, 1)] * m[(1, 0)]).sqrt();
    let st = s * t;
    let sinh_over_s =
        if st.norm() < 1e-6 { C64::new(t, 0.0) * (C64::new(1.0, 0.0) + st * st / 6.0) } else { st.sinh() / s };
    let shifted = m - Matrix2::identity() * mean;
    (Matrix2::identity() * st.cosh() + shifted * sinh_over_s) * (mean * t).exp()
}
