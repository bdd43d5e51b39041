// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded Poisson counts from the model. Same seed, same bytes.

use cqed_rabi::fit::{synthesize, DecayFitParams, FrozenParams};

fn main() -> cqed_rabi::Result<()> {
    let frozen = FrozenParams::default();
    let times: Vec<f64> = (0..=750).map(|k| 2.0 * k as f64).collect();
    let theta =
        DecayFitParams { delta: 0.0, gamma_r: 38.0, gamma_ph: 2.6, a_i: 1.4e-4, y0: 9.4e-6, scale: 1.0, t0_shift: 0.0 };

    let a = synthesize(&theta, &frozen, &times, 1e4, 7)?;
    let b = synthesize(&theta, &frozen, &times, 1e4, 7)?;
    let c = synthesize(&theta, &frozen, &times, 1e4, 8)?;
    println!("seed 7 twice identical: {}", a.counts == b.counts);
    println!("seed 8 differs: {}", a.counts != c.counts);
    println!("peak counts {} (expected {:.0})", a.counts.peak().1, a.expected.peak().1);
    println!("rescaled truth: {:?}", a.truth);
    Ok(())
}
