// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure dephasing washes out the vacuum Rabi oscillation.

use cqed_rabi::dynamics::{evolve, photon_trace, TimeGrid};
use cqed_rabi::model::{DensityMatrix, HilbertSpace, SystemParams};
use cqed_rabi::signal::{convolve_irf, oscillation_contrast};

fn main() -> cqed_rabi::Result<()> {
    let grid = TimeGrid::new(0.0, 1000.0, 0.02, 2.0)?;
    let rho0 = DensityMatrix::ground(HilbertSpace::default());
    println!("gamma_ph_uev  contrast");
    for gamma_ph in [0.0, 1.0, 2.6, 4.0, 6.4, 10.0] {
        let params = SystemParams { gamma_ph, ..SystemParams::default() };
        let emission = photon_trace(&evolve(&rho0, &params, &grid)?, params.kappa)?;
        let seen = convolve_irf(&emission, 25.6)?;
        match oscillation_contrast(&seen) {
            Some(c) => println!("{gamma_ph:12.1}  {c:.3}"),
            None => println!("{gamma_ph:12.1}  none"),
        }
    }
    Ok(())
}
