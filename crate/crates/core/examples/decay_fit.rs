// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Synthesize a noisy decay curve with known parameters and fit it back.

use cqed_rabi::fit::{
    fit_decay, initial_guess, model_curve, synthesize, DecayFitOptions, DecayFitParams, FrozenParams,
};

fn main() -> cqed_rabi::Result<()> {
    let frozen = FrozenParams::default();
    let times: Vec<f64> = (0..=750).map(|k| 2.0 * k as f64).collect();

    let unit =
        DecayFitParams { delta: 0.0, gamma_r: 38.0, gamma_ph: 2.6, a_i: 0.0, y0: 0.0, scale: 1.0, t0_shift: 0.0 };
    let peak = model_curve(&unit, &frozen, &times)?.peak().1;
    let truth = DecayFitParams { a_i: 0.15 * peak, y0: 0.01 * peak, ..unit };
    let data = synthesize(&truth, &frozen, &times, 1e4, 42)?;

    let start = initial_guess(&data.counts, &frozen)?;
    let report = fit_decay(&data.counts, &frozen, &start, &DecayFitOptions::default())?;
    println!("status {:?} after {} iterations", report.fit.status, report.fit.iterations);
    let (p, e, t) = (report.params.to_vec(), report.std_errors.to_vec(), data.truth.to_vec());
    for (k, name) in DecayFitParams::NAMES.iter().enumerate() {
        println!("{name:>9} {:12.5} +- {:<10.3e} truth {:.5}", p[k], e[k], t[k]);
    }
    Ok(())
}
