// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Rabi period against cavity detuning, next to the closed-form law.

use cqed_rabi::dynamics::{evolve, photon_trace, TimeGrid};
use cqed_rabi::model::{DensityMatrix, HilbertSpace, SystemParams};
use cqed_rabi::signal::{extract_period, PeriodBand};
use cqed_rabi::spectral::rabi_period_ps;

fn main() -> cqed_rabi::Result<()> {
    let grid = TimeGrid::new(0.0, 1500.0, 0.02, 1.0)?;
    let rho0 = DensityMatrix::ground(HilbertSpace::default());
    println!("delta_uev  period_ps  law_ps");
    for k in -4..=4 {
        let delta = 15.0 * k as f64;
        let params = SystemParams { delta, ..SystemParams::default() };
        let emission = photon_trace(&evolve(&rho0, &params, &grid)?, params.kappa)?;
        let period = extract_period(&emission, PeriodBand::default())?;
        println!("{delta:9.1}  {period:9.2}  {:6.2}", rabi_period_ps(params.g, delta));
    }
    Ok(())
}
