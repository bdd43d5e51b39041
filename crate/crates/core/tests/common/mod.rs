// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use cqed_rabi::fit::{model_curve, DecayFitParams, FrozenParams};

/// 0..=1500 ps at 2 ps.
pub fn tcspc_times() -> Vec<f64> {
    (0..=750).map(|k| 2.0 * k as f64).collect()
}

/// Decay-fit truth with the slow component at 15 % and the offset at 1 % of
/// the convolved photon peak.
pub fn reference_truth(frozen: &FrozenParams, times: &[f64], gamma_ph: f64) -> DecayFitParams {
    let unit = DecayFitParams { delta: 0.0, gamma_r: 38.0, gamma_ph, a_i: 0.0, y0: 0.0, scale: 1.0, t0_shift: 0.0 };
    let peak = model_curve(&unit, frozen, times).unwrap().peak().1;
    DecayFitParams { a_i: 0.15 * peak, y0: 0.01 * peak, ..unit }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
