// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Period of a damped oscillation riding on a decaying background.

use cqed_rabi::signal::{extract_period, DecayCurve, PeriodBand};

fn main() -> cqed_rabi::Result<()> {
    let values = (0..1000)
        .map(|k| {
            let t = k as f64;
            (-t / 300.0).exp() * (1.0 + 0.6 * (-t / 250.0).exp() * (std::f64::consts::TAU * t / 87.0).cos())
        })
        .collect();
    let curve = DecayCurve::uniform(0.0, 1.0, values)?;
    println!("true 87.00 ps, estimated {:.2} ps", extract_period(&curve, PeriodBand::default())?);

    // Restricting the band to exclude the oscillation leaves nothing to find.
    match extract_period(&curve, PeriodBand::new(150.0, 300.0)?) {
        Ok(p) => println!("150..300 ps band: {p:.2} ps"),
        Err(e) => println!("150..300 ps band: {e}"),
    }
    Ok(())
}
