// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::problem::FitProblem;
use crate::{Error, Result};

/// Forward-difference Jacobian of the residual at `theta`, given `r0 = r(θ)`.
///
/// Columns whose forward step would leave the box use a backward step.
/// Columns are evaluated in parallel and assembled in parameter order.
pub fn jacobian_fd<F>(problem: &FitProblem<F>, theta: &[f64], r0: &[f64]) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    let n = theta.len();
    if n != problem.n_params() {
        return Err(Error::DimensionMismatch { expected: problem.n_params(), found: n });
    }
    let m = r0.len();
    let columns: Vec<Result<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let h = fd_step(problem, theta, j);
            let mut shifted = theta.to_vec();
            shifted[j] = theta[j] + h;
            let r = problem.evaluate(&shifted)?;
            if r.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: r.len() });
            }
            let h = shifted[j] - theta[j];
            Ok(r.iter().zip(r0).map(|(a, b)| (a - b) / h).collect())
        })
        .collect();
    let mut jac = DMatrix::zeros(m, n);
    for (j, column) in columns.into_iter().enumerate() {
        let column = column?;
        if column.iter().any(|v| !v.is_finite()) {
            return Err(Error::FitFailed(format!("non-finite Jacobian column {j}")));
        }
        jac.column_mut(j).copy_from_slice(&column);
    }
    Ok(jac)
}

fn fd_step<F>(problem: &FitProblem<F>, theta: &[f64], j: usize) -> f64 {
    let (lo, hi) = (problem.lower[j], problem.upper[j]);
    let h = problem.options.fd_rel_step * theta[j].abs().max(problem.typical[j]);
    if theta[j] + h <= hi {
        h
    } else if theta[j] - h >= lo {
        -h
    } else if hi - theta[j] >= theta[j] - lo {
        hi - theta[j]
    } else {
        lo - theta[j]
    }
}
