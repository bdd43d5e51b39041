// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Detector-level decay curve for the default quantum-dot/cavity parameters.

use cqed_rabi::dynamics::TimeGrid;
use cqed_rabi::model::{HilbertSpace, SystemParams};
use cqed_rabi::signal::{compose_model, extract_period, oscillation_contrast, Detector, PeriodBand, SlowComponent};

fn main() -> cqed_rabi::Result<()> {
    let params = SystemParams::default();
    let grid = TimeGrid::new(0.0, 1500.0, 0.02, 2.0)?;
    let detector = Detector {
        scale: 1.0,
        slow: SlowComponent { amplitude: 1.4e-4, decay_ps: 360.0, offset: 9.4e-6, onset_ps: params.t0 },
        irf_fwhm_ps: 25.6,
    };
    let curve = compose_model(&params, HilbertSpace::default(), &grid, &detector)?;

    let (i, peak) = curve.peak();
    println!("peak {peak:.3e} at {} ps", curve.times()[i]);
    println!("period {:.2} ps", extract_period(&curve, PeriodBand::default())?);
    if let Some(c) = oscillation_contrast(&curve) {
        println!("contrast {c:.3}");
    }
    for (t, v) in curve.times().iter().zip(curve.values()).step_by(25) {
        println!("{t:7.1} {v:.4e}");
    }
    Ok(())
}
