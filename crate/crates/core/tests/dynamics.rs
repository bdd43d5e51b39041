// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use cqed_rabi::dynamics::{
    evolve, evolve_with, photon_trace, single_excitation_oracle, EvolveOptions, ExcitationStart, Propagation, TimeGrid,
};
use cqed_rabi::model::{DensityMatrix, HilbertSpace, Level, SystemParams};
use cqed_rabi::signal::{compose_from_emission, compose_model, Detector, SlowComponent};

fn damped(delta: f64) -> SystemParams {
    SystemParams { gamma_r: 0.0, gamma_ph: 0.0, p0: 0.0, delta, ..SystemParams::default() }
}

fn max_error_vs_oracle(dt: f64) -> f64 {
    let params = damped(-33.0);
    let grid = TimeGrid::new(0.0, 300.0, dt, 1.0).unwrap();
    let rho0 = DensityMatrix::pure(HilbertSpace::default(), Level::E, 0).unwrap();
    let traj = evolve(&rho0, &params, &grid).unwrap();
    let oracle = single_excitation_oracle(&params, &grid, ExcitationStart::Emitter).unwrap();
    traj.photon_number.iter().zip(&oracle.photon_number).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

#[test]
fn rk4_fourth_order() {
    let coarse = max_error_vs_oracle(0.5);
    let fine = max_error_vs_oracle(0.25);
    assert!(coarse > 1e-9, "coarse error {coarse} too small to measure order");
    assert!(coarse / fine >= 12.0, "error ratio {}", coarse / fine);
}

#[test]
fn photon_start_matches_oracle() {
    let params = damped(20.0);
    let grid = TimeGrid::new(0.0, 800.0, 0.02, 2.0).unwrap();
    let rho0 = DensityMatrix::pure(HilbertSpace::default(), Level::G, 1).unwrap();
    let traj = evolve(&rho0, &params, &grid).unwrap();
    let oracle = single_excitation_oracle(&params, &grid, ExcitationStart::Photon).unwrap();
    for (a, b) in traj.photon_number.iter().zip(&oracle.photon_number) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn conservation_over_long_run_at_fine_step() {
    let grid = TimeGrid::new(0.0, 2000.0, 0.01, 2.0).unwrap();
    let opts = EvolveOptions { track_positivity: true, ..EvolveOptions::default() };
    let traj =
        evolve_with(&DensityMatrix::ground(HilbertSpace::default()), &SystemParams::default(), &grid, &opts).unwrap();
    assert!(traj.trace_error < 1e-8);
    assert!(traj.min_eigenvalue.unwrap() > -1e-9);
    assert!(traj.hermiticity_drift < 1e-10);
}

#[test]
fn direct_and_propagator_paths_agree_with_all_rates() {
    let grid = TimeGrid::new(0.0, 400.0, 0.02, 2.0).unwrap();
    let rho0 = DensityMatrix::ground(HilbertSpace::default());
    let run = |propagation| {
        evolve_with(&rho0, &SystemParams::default(), &grid, &EvolveOptions { propagation, track_positivity: true })
            .unwrap()
    };
    let (fast, slow) = (run(Propagation::Propagator), run(Propagation::Direct));
    for (a, b) in fast.photon_number.iter().zip(&slow.photon_number) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!(slow.trace_error < 1e-8 && slow.min_eigenvalue.unwrap() > -1e-9);
}

#[test]
fn two_photon_truncation_is_adequate() {
    let grid = TimeGrid::new(0.0, 600.0, 0.02, 1.0).unwrap();
    let params = SystemParams::default();
    let n1 = evolve(&DensityMatrix::ground(HilbertSpace::new(1).unwrap()), &params, &grid).unwrap();
    let n2 = evolve(&DensityMatrix::ground(HilbertSpace::new(2).unwrap()), &params, &grid).unwrap();
    let first_max = (1..n1.len() - 1)
        .find(|&k| n1.photon_number[k] > n1.photon_number[k - 1] && n1.photon_number[k] >= n1.photon_number[k + 1])
        .unwrap();
    let (a, b) = (n1.photon_number[first_max], n2.photon_number[first_max]);
    assert!((a - b).abs() / a < 0.01, "n_max=1 {a} vs n_max=2 {b}");
}

#[test]
fn detuning_sign_symmetry() {
    let grid = TimeGrid::new(0.0, 1000.0, 0.02, 2.0).unwrap();
    let rho0 = DensityMatrix::ground(HilbertSpace::default());
    for delta in [7.0, 33.0, 55.0] {
        let plus = evolve(&rho0, &SystemParams { delta, ..SystemParams::default() }, &grid).unwrap();
        let minus = evolve(&rho0, &SystemParams { delta: -delta, ..SystemParams::default() }, &grid).unwrap();
        let (p, m) = (photon_trace(&plus, 16.0).unwrap(), photon_trace(&minus, 16.0).unwrap());
        for (a, b) in p.values().iter().zip(m.values()) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-12), "delta {delta}: {a} vs {b}");
        }
    }
}

#[test]
fn narrow_irf_recovers_unconvolved_signal() {
    let grid = TimeGrid::new(0.0, 800.0, 0.02, 0.2).unwrap();
    let params = SystemParams::default();
    let traj = evolve(&DensityMatrix::ground(HilbertSpace::default()), &params, &grid).unwrap();
    let emission = photon_trace(&traj, params.kappa).unwrap();
    let slow = SlowComponent { amplitude: 0.001, decay_ps: 360.0, offset: 0.0, onset_ps: params.t0 };
    let detector = Detector { scale: 1.0, slow, irf_fwhm_ps: 0.5 };
    let sharp = compose_from_emission(&emission, &detector).unwrap();
    let full = compose_model(&params, HilbertSpace::default(), &grid, &detector).unwrap();
    assert_eq!(sharp.values(), full.values());
    let peak = emission.peak().1;
    for (k, (&t, &v)) in sharp.times().iter().zip(sharp.values()).enumerate() {
        if (t - params.t0).abs() < 2.0 || k < 5 || k + 5 > sharp.len() {
            continue;
        }
        let raw = emission.values()[k] + slow.value(t);
        assert!((v - raw).abs() < 2e-3 * peak, "t = {t}: {v} vs {raw}");
    }
}
