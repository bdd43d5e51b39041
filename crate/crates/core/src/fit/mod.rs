// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Bounded nonlinear least squares and decay-curve parameter estimation.

mod decay;
mod jacobian;
mod problem;
mod residuals;
mod synth;
mod trf;

pub use decay::{
    fit_decay, initial_guess, model_curve, DecayBounds, DecayFitOptions, DecayFitParams, DecayFitReport, FrozenParams,
};
pub use jacobian::jacobian_fd;
pub use problem::{FitOptions, FitProblem, FitResult, FitStatus};
pub use residuals::{poisson_weights, residuals, Weighting};
pub use synth::{synthesize, SyntheticCurve};
pub use trf::least_squares_trf;
