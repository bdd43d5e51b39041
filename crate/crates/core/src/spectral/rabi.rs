// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use crate::model::HBAR_UEV_PS;

/// `Ω = sqrt(g² + δ²/4)` in μeV, damping neglected.
pub fn rabi_frequency(g: f64, delta: f64) -> f64 {
    g.hypot(delta / 2.0)
}

/// `πħ/Ω` in ps.
pub fn rabi_period_ps(g: f64, delta: f64) -> f64 {
    std::f64::consts::PI * HBAR_UEV_PS / rabi_frequency(g, delta)
}

/// Lower and upper dressed-state energies for bare emitter and cavity energies.
pub fn polariton_energies(e_qd: f64, e_cav: f64, g: f64) -> (f64, f64) {
    let mean = 0.5 * (e_qd + e_cav);
    let half = rabi_frequency(g, e_cav - e_qd);
    (mean - half, mean + half)
}
