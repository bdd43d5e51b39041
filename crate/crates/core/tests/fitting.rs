// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{reference_truth, rel, tcspc_times};
use cqed_rabi::fit::{
    fit_decay, initial_guess, jacobian_fd, model_curve, residuals, synthesize, DecayFitOptions, DecayFitParams,
    FitProblem, FrozenParams, Weighting,
};
use cqed_rabi::signal::DecayCurve;

fn poisson_options() -> DecayFitOptions {
    DecayFitOptions { weighting: Weighting::Poisson, ..DecayFitOptions::default() }
}

#[test]
fn reported_uncertainty_matches_scatter() {
    let frozen = FrozenParams { dt_internal_ps: 0.05, ..FrozenParams::default() };
    let times = tcspc_times();
    let truth = reference_truth(&frozen, &times, 2.6);
    let mut estimates = Vec::new();
    let mut sigmas = Vec::new();
    for seed in 0..50 {
        let s = synthesize(&truth, &frozen, &times, 1e4, 1000 + seed).unwrap();
        let theta0 = initial_guess(&s.counts, &frozen).unwrap();
        let report = fit_decay(&s.counts, &frozen, &theta0, &poisson_options()).unwrap();
        assert!(report.fit.status.converged(), "seed {seed}: {}", report.fit.message);
        estimates.push(report.params.gamma_ph);
        sigmas.push(report.std_errors.gamma_ph);
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let sd = (estimates.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let reported = sigmas.iter().sum::<f64>() / n;
    let ratio = sd / reported;
    assert!((0.5..=2.0).contains(&ratio), "empirical sd {sd:.3} vs reported {reported:.3}");
}

#[test]
fn fit_is_equivariant_under_count_scaling() {
    let frozen = FrozenParams::default();
    let times = tcspc_times();
    let truth = reference_truth(&frozen, &times, 4.0);
    let s = synthesize(&truth, &frozen, &times, 5e3, 3).unwrap();
    let fit = |data: &DecayCurve| {
        let theta0 = initial_guess(data, &frozen).unwrap();
        fit_decay(data, &frozen, &theta0, &DecayFitOptions::default()).unwrap().params
    };
    let base = fit(&s.counts);
    let scaled_data = s.counts.with_values(s.counts.values().iter().map(|v| 10.0 * v).collect()).unwrap();
    let scaled = fit(&scaled_data);
    for (a, b) in [(base.gamma_r, scaled.gamma_r), (base.gamma_ph, scaled.gamma_ph)] {
        assert!(rel(b, a) < 1e-3, "{a} vs {b}");
    }
    assert!((base.delta - scaled.delta).abs() < 0.05);
    for (a, b) in [(base.a_i, scaled.a_i), (base.y0, scaled.y0), (base.scale, scaled.scale)] {
        assert!(rel(b, 10.0 * a) < 1e-3, "{a} vs {b}");
    }
}

#[test]
fn rates_insensitive_to_frozen_pump_area() {
    let frozen = FrozenParams::default();
    let times = tcspc_times();
    let truth = reference_truth(&frozen, &times, 2.6);
    let s = synthesize(&truth, &frozen, &times, 1e4, 11).unwrap();
    for p0 in [0.05, 0.2] {
        let assumed = FrozenParams { p0, ..frozen };
        let theta0 = initial_guess(&s.counts, &assumed).unwrap();
        let p = fit_decay(&s.counts, &assumed, &theta0, &DecayFitOptions::default()).unwrap().params;
        assert!(rel(p.gamma_r, s.truth.gamma_r) < 0.2, "p0 {p0}: gamma_r {}", p.gamma_r);
        assert!(rel(p.gamma_ph, s.truth.gamma_ph) < 0.3, "p0 {p0}: gamma_ph {}", p.gamma_ph);
    }
}

#[test]
fn forward_jacobian_agrees_with_central_differences() {
    let frozen = FrozenParams::default();
    let times = tcspc_times();
    let theta = DecayFitParams { delta: 12.0, t0_shift: 1.5, ..reference_truth(&frozen, &times, 2.6) };
    let model = |t: &[f64]| -> cqed_rabi::Result<Vec<f64>> {
        Ok(model_curve(&DecayFitParams::from_slice(t)?, &frozen, &times)?.values().to_vec())
    };
    let typical = vec![1.0, 1.0, 1.0, theta.a_i, theta.y0, theta.scale, 1.0];
    let problem = FitProblem::new(model, theta.to_vec()).with_typical(typical.clone()).unwrap();
    let x = theta.to_vec();
    let r0 = problem.evaluate(&x).unwrap();
    let jac = jacobian_fd(&problem, &x, &r0).unwrap();
    for j in 0..x.len() {
        let h = 2.0 * 1e-6 * x[j].abs().max(typical[j]);
        let (mut up, mut down) = (x.clone(), x.clone());
        up[j] += h;
        down[j] -= h;
        let (ru, rd) = (problem.evaluate(&up).unwrap(), problem.evaluate(&down).unwrap());
        let central: Vec<f64> = ru.iter().zip(&rd).map(|(a, b)| (a - b) / (2.0 * h)).collect();
        let dominant = central.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(dominant > 0.0, "column {j} is identically zero");
        for (i, c) in central.iter().enumerate() {
            if c.abs() >= 0.1 * dominant {
                let f = jac[(i, j)];
                assert!((f - c).abs() <= 1e-3 * c.abs(), "J[{i},{j}] forward {f} vs central {c}");
            }
        }
    }
}

#[test]
fn poisson_weighted_round_trip() {
    let frozen = FrozenParams::default();
    let times = tcspc_times();
    let truth = reference_truth(&frozen, &times, 2.6);
    let s = synthesize(&truth, &frozen, &times, 1e4, 7).unwrap();
    let theta0 = initial_guess(&s.counts, &frozen).unwrap();
    let report = fit_decay(&s.counts, &frozen, &theta0, &poisson_options()).unwrap();
    assert!(report.fit.status.converged());
    assert_eq!(report.weighting, Weighting::Poisson);
    let p = report.params;
    assert!(rel(p.gamma_r, s.truth.gamma_r) < 0.2);
    assert!(rel(p.gamma_ph, s.truth.gamma_ph) < 0.3);
    assert!(rel(p.a_i, s.truth.a_i) < 0.15);
    assert!(!report.short_data);
}

#[test]
fn short_records_are_flagged() {
    let frozen = FrozenParams::default();
    let times: Vec<f64> = (0..=200).map(|k| 2.0 * k as f64).collect();
    let truth = reference_truth(&frozen, &times, 2.6);
    let s = synthesize(&truth, &frozen, &times, 1e4, 5).unwrap();
    let theta0 = initial_guess(&s.counts, &frozen).unwrap();
    let report = fit_decay(&s.counts, &frozen, &theta0, &DecayFitOptions::default()).unwrap();
    assert!(report.short_data);
}

#[test]
fn residual_vector_examples() {
    let data = DecayCurve::uniform(0.0, 1.0, vec![1.0, 4.0, 9.0]).unwrap();
    let model = |t: &[f64]| DecayCurve::uniform(0.0, 1.0, vec![t[0], 2.0 * t[0], 3.0 * t[0]]);
    let r = residuals(&[2.0], &data, model, &[1.0, 0.5, 1.0 / 3.0]).unwrap();
    assert_eq!(r, vec![1.0, 0.0, -1.0]);
    assert!(residuals(&[2.0], &data, model, &[1.0, 1.0]).is_err());
    let shifted = |_: &[f64]| DecayCurve::uniform(0.5, 1.0, vec![0.0; 3]);
    assert!(residuals(&[2.0], &data, shifted, &[1.0; 3]).is_err());
    let w = Weighting::Poisson.weights(&data);
    assert_eq!(w, vec![1.0, 0.5, 1.0 / 3.0]);
}
