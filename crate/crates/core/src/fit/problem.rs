// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitOptions {
    pub max_iter: usize,
    /// Relative cost reduction below which the fit stops.
    pub cost_tol: f64,
    /// Largest cosine between the residual and any free Jacobian column.
    pub grad_tol: f64,
    /// Forward-difference step relative to `max(|θ_j|, typical_j)`.
    pub fd_rel_step: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { max_iter: 200, cost_tol: 1e-8, grad_tol: 1e-8, fd_rel_step: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitStatus {
    ConvergedCost,
    ConvergedGrad,
    MaxIter,
    Failed,
}

impl FitStatus {
    pub fn converged(self) -> bool {
        matches!(self, FitStatus::ConvergedCost | FitStatus::ConvergedGrad)
    }
}

/// Residual function with a starting point, box bounds and FD scales.
pub struct FitProblem<F> {
    pub(crate) residual: F,
    pub(crate) theta0: Vec<f64>,
    pub(crate) lower: Vec<f64>,
    pub(crate) upper: Vec<f64>,
    pub(crate) typical: Vec<f64>,
    pub(crate) options: FitOptions,
}

impl<F> FitProblem<F>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    /// Unbounded problem with unit typical scales.
    pub fn new(residual: F, theta0: Vec<f64>) -> Self {
        let n = theta0.len();
        Self {
            residual,
            theta0,
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
            typical: vec![1.0; n],
            options: FitOptions::default(),
        }
    }

    pub fn with_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = self.theta0.len();
        if lower.len() != n || upper.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: lower.len().max(upper.len()) });
        }
        if let Some(j) = (0..n).find(|&j| lower[j].is_nan() || upper[j].is_nan() || lower[j] >= upper[j]) {
            return Err(Error::InvalidParameter(format!(
                "bounds for parameter {j} are empty: [{}, {}]",
                lower[j], upper[j]
            )));
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn with_typical(mut self, typical: Vec<f64>) -> Result<Self> {
        if typical.len() != self.theta0.len() {
            return Err(Error::DimensionMismatch { expected: self.theta0.len(), found: typical.len() });
        }
        self.typical = typical.into_iter().map(|t| if t.abs() > 0.0 { t.abs() } else { 1.0 }).collect();
        Ok(self)
    }

    pub fn with_options(mut self, options: FitOptions) -> Self {
        self.options = options;
        self
    }

    pub fn n_params(&self) -> usize {
        self.theta0.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn evaluate(&self, theta: &[f64]) -> Result<Vec<f64>> {
        (self.residual)(theta)
    }

    /// θ0 moved strictly inside the box.
    pub(crate) fn feasible_start(&self) -> Vec<f64> {
        self.theta0
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&x, (&lo, &hi))| {
                let inward = |b: f64| 1e-10 * b.abs().max(1.0);
                let mut x = x.clamp(lo, hi);
                if x <= lo {
                    x = (lo + inward(lo)).min(0.5 * (lo + hi.min(lo + 1.0)));
                }
                if x >= hi {
                    x = (hi - inward(hi)).max(0.5 * (hi + lo.max(hi - 1.0)));
                }
                x
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub theta: Vec<f64>,
    /// ½‖r‖².
    pub cost: f64,
    pub initial_cost: f64,
    /// `(JᵀJ)⁻¹·2cost/(m−n)`, pseudo-inverted when ill-conditioned.
    #[serde(skip)]
    pub covariance: Option<DMatrix<f64>>,
    /// 1σ per parameter; infinite when the data carry no information on it.
    pub std_errors: Vec<f64>,
    /// False when `JᵀJ` had to be pseudo-inverted.
    pub well_conditioned: bool,
    pub iterations: usize,
    pub evaluations: usize,
    /// Accepted steps where a reflected trial point was still infeasible and
    /// had to be projected onto the box.
    pub projected_steps: usize,
    pub status: FitStatus,
    pub message: String,
}
