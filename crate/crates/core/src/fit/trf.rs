// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::jacobian::jacobian_fd;
use super::problem::{FitProblem, FitResult, FitStatus};
use crate::{Error, Result};

const ACCEPT_RATIO: f64 = 1e-4;
const MAX_REJECTIONS: usize = 40;
const EIGEN_CUTOFF: f64 = 1e-12;
const WELL_CONDITIONED: f64 = 1e-10;
const SCALE_FLOOR: f64 = 1e-3;

/// Bounded trust-region Gauss-Newton with reflective bound handling.
///
/// Each iteration solves `min ‖Jp + r‖² + λ‖Dp‖²` over the parameters not
/// pinned by an active bound, with `D` from accumulated column norms and `λ`
/// chosen so that `‖Dp‖` fits the trust radius. A step that leaves the box is
/// either reflected off the bound or truncated onto it, whichever the linear
/// model prefers.
///
/// Returns `Err` only when the problem itself is malformed or the residual is
/// unusable at the starting point; optimizer breakdowns are reported through
/// [`FitStatus::Failed`].
pub fn least_squares_trf<F>(problem: &FitProblem<F>) -> Result<FitResult>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    let opts = problem.options;
    let n = problem.n_params();
    if n == 0 {
        return Err(Error::InvalidParameter("no free parameters".into()));
    }
    let (lo, hi) = (problem.lower(), problem.upper());
    let mut x = problem.feasible_start();
    let mut r = problem.evaluate(&x)?;
    let m = r.len();
    if m == 0 {
        return Err(Error::InvalidParameter("empty residual vector".into()));
    }
    if r.iter().any(|v| !v.is_finite()) {
        return Err(Error::FitFailed("non-finite residual at the starting point".into()));
    }
    let mut evaluations = 1;
    let initial_cost = half_sq(&r);
    let mut cost = initial_cost;
    let mut diag = vec![0.0_f64; n];
    let mut radius: Option<f64> = None;
    let mut iterations = 0;
    let mut projected_steps = 0;
    let mut status = FitStatus::MaxIter;
    let mut message = format!("reached max_iter = {}", opts.max_iter);
    let mut final_jac: Option<DMatrix<f64>> = None;

    'outer: while iterations < opts.max_iter {
        iterations += 1;
        let jac = match jacobian_fd(problem, &x, &r) {
            Ok(j) => j,
            Err(e) if e.is_numeric() => {
                status = FitStatus::Failed;
                message = format!("Jacobian evaluation failed: {e}");
                break;
            }
            Err(e) => return Err(e),
        };
        evaluations += n;
        let rv = DVector::from_column_slice(&r);
        let grad = jac.tr_mul(&rv);
        let col_norms: Vec<f64> = (0..n).map(|j| jac.column(j).norm()).collect();
        for j in 0..n {
            diag[j] = diag[j].max(col_norms[j]);
        }
        // A column that is tiny on its typical scale (a stationary direction of
        // the model) would otherwise get an almost free trust-region budget.
        let typ = &problem.typical;
        let floor = SCALE_FLOOR * (0..n).map(|j| diag[j] * typ[j]).fold(0.0, f64::max);
        let scale: Vec<f64> = (0..n)
            .map(|j| match diag[j].max(floor / typ[j]) {
                d if d > 0.0 => d,
                _ => 1.0,
            })
            .collect();
        let free: Vec<usize> =
            (0..n).filter(|&j| !((x[j] <= lo[j] && grad[j] > 0.0) || (x[j] >= hi[j] && grad[j] < 0.0))).collect();

        let rnorm = rv.norm();
        let cosine = free
            .iter()
            .filter(|&&j| col_norms[j] > 0.0)
            .map(|&j| grad[j].abs() / (col_norms[j] * rnorm))
            .fold(0.0, f64::max);
        if rnorm == 0.0 || cosine <= opts.grad_tol {
            status = FitStatus::ConvergedGrad;
            message = format!("projected gradient cosine {cosine:.3e} <= grad_tol");
            final_jac = Some(jac);
            break;
        }

        let delta = radius.get_or_insert_with(|| {
            let dx = x.iter().zip(&scale).map(|(a, d)| (a * d).powi(2)).sum::<f64>().sqrt();
            if dx > 0.0 {
                100.0 * dx
            } else {
                100.0
            }
        });
        let sub = Subproblem::new(&jac, &rv, &scale, &free);
        let mut rejections = 0;
        loop {
            let (step, lambda) = sub.solve(*delta, n);
            let (trial, projected) = choose_step(&x, &step, lo, hi, &jac, &rv);
            let s: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
            let snorm = s.iter().zip(&scale).map(|(a, d)| (a * d).powi(2)).sum::<f64>().sqrt();
            let pred = cost - model_cost(&jac, &rv, &s);
            if !(pred > 0.0) || snorm == 0.0 {
                *delta *= 0.25;
                rejections += 1;
                if rejections >= MAX_REJECTIONS {
                    status = FitStatus::ConvergedCost;
                    message = "no step predicts a cost decrease".into();
                    final_jac = Some(jac);
                    break 'outer;
                }
                continue;
            }

            evaluations += 1;
            let new_r = match problem.evaluate(&trial) {
                Ok(v) if v.len() != m => return Err(Error::DimensionMismatch { expected: m, found: v.len() }),
                Ok(v) if v.iter().all(|x| x.is_finite()) => Some(v),
                Ok(_) => None,
                Err(e) if e.is_numeric() => None,
                Err(e) => return Err(e),
            };
            let new_cost = new_r.as_deref().map(half_sq).unwrap_or(f64::INFINITY);
            let actual = cost - new_cost;
            let ratio = actual / pred;

            if !(ratio >= 0.25) {
                *delta = 0.25 * snorm.min(*delta);
            } else if ratio > 0.75 || lambda == 0.0 {
                *delta = delta.max(2.0 * snorm);
            }

            if ratio > ACCEPT_RATIO {
                let old = cost;
                x = trial;
                r = new_r.expect("accepted step has finite residuals");
                cost = new_cost;
                projected_steps += usize::from(projected);
                if actual <= opts.cost_tol * old && pred <= opts.cost_tol * old {
                    status = FitStatus::ConvergedCost;
                    message = "relative cost reduction below cost_tol".into();
                    break 'outer;
                }
                continue 'outer;
            }

            rejections += 1;
            if pred <= opts.cost_tol * cost {
                status = FitStatus::ConvergedCost;
                message = "predicted cost reduction below cost_tol".into();
                final_jac = Some(jac);
                break 'outer;
            }
            if rejections >= MAX_REJECTIONS {
                status = FitStatus::Failed;
                message = "trust region collapsed without an acceptable step".into();
                final_jac = Some(jac);
                break 'outer;
            }
        }
    }

    let jac = match final_jac {
        Some(j) => Some(j),
        None => {
            evaluations += n;
            jacobian_fd(problem, &x, &r).ok()
        }
    };
    let (covariance, std_errors, well_conditioned) = match jac {
        Some(j) => covariance(&j, cost, m),
        None => (None, vec![f64::NAN; n], false),
    };
    Ok(FitResult {
        theta: x,
        cost,
        initial_cost,
        covariance,
        std_errors,
        well_conditioned,
        iterations,
        evaluations,
        projected_steps,
        status,
        message,
    })
}

fn half_sq(r: &[f64]) -> f64 {
    0.5 * r.iter().map(|v| v * v).sum::<f64>()
}

fn model_cost(jac: &DMatrix<f64>, r: &DVector<f64>, s: &[f64]) -> f64 {
    let predicted = r + jac * DVector::from_column_slice(s);
    0.5 * predicted.norm_squared()
}

/// Scaled Gauss-Newton system restricted to the free parameters, diagonalized
/// once so that every trust radius is a cheap secular solve.
struct Subproblem {
    free: Vec<usize>,
    scale: Vec<f64>,
    eigvals: Vec<f64>,
    eigvecs: DMatrix<f64>,
    coeffs: Vec<f64>,
}

impl Subproblem {
    fn new(jac: &DMatrix<f64>, r: &DVector<f64>, scale: &[f64], free: &[usize]) -> Self {
        let k = free.len();
        let mut js = DMatrix::zeros(jac.nrows(), k);
        for (c, &j) in free.iter().enumerate() {
            js.set_column(c, &(jac.column(j) / scale[j]));
        }
        let eig = SymmetricEigen::new(js.tr_mul(&js));
        let b = js.tr_mul(r);
        let coeffs = eig.eigenvectors.tr_mul(&b);
        let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
        let eigvals = eig.eigenvalues.iter().map(|&e| if e > EIGEN_CUTOFF * top { e } else { 0.0 }).collect();
        Self {
            free: free.to_vec(),
            scale: free.iter().map(|&j| scale[j]).collect(),
            eigvals,
            eigvecs: eig.eigenvectors,
            coeffs: coeffs.iter().cloned().collect(),
        }
    }

    /// Scaled step `q(λ) = −(Λ + λ)⁻¹c` in the eigenbasis; null directions dropped.
    fn scaled(&self, lambda: f64) -> DVector<f64> {
        DVector::from_iterator(
            self.eigvals.len(),
            self.eigvals.iter().zip(&self.coeffs).map(|(&e, &c)| if e > 0.0 { -c / (e + lambda) } else { 0.0 }),
        )
    }

    fn solve(&self, radius: f64, n: usize) -> (Vec<f64>, f64) {
        let mut lambda = 0.0;
        let mut q = self.scaled(0.0);
        if q.norm() > radius {
            let mut lo = 0.0;
            let mut hi = self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt() / radius;
            q = self.scaled(hi);
            lambda = hi;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let qm = self.scaled(mid);
                let norm = qm.norm();
                if norm > radius {
                    lo = mid;
                } else {
                    hi = mid;
                    q = qm;
                    lambda = mid;
                    if norm >= 0.9 * radius {
                        break;
                    }
                }
            }
        }
        let p = &self.eigvecs * q;
        let mut step = vec![0.0; n];
        for (c, &j) in self.free.iter().enumerate() {
            step[j] = p[c] / self.scale[c];
        }
        (step, lambda)
    }
}

/// Reflected and truncated candidates for `x + p`; returns the one with the
/// lower model cost and whether a projection fallback was needed.
fn choose_step(x: &[f64], p: &[f64], lo: &[f64], hi: &[f64], jac: &DMatrix<f64>, r: &DVector<f64>) -> (Vec<f64>, bool) {
    let mut projected = false;
    let reflected: Vec<f64> = (0..x.len())
        .map(|j| {
            let mut y = x[j] + p[j];
            if y < lo[j] {
                y = 2.0 * lo[j] - y;
            } else if y > hi[j] {
                y = 2.0 * hi[j] - y;
            }
            if y < lo[j] || y > hi[j] {
                projected = true;
                y = y.clamp(lo[j], hi[j]);
            }
            y
        })
        .collect();

    let dir: Vec<f64> = (0..x.len())
        .map(|j| if (x[j] <= lo[j] && p[j] < 0.0) || (x[j] >= hi[j] && p[j] > 0.0) { 0.0 } else { p[j] })
        .collect();
    let mut alpha: f64 = 1.0;
    let mut hit = None;
    for j in 0..x.len() {
        let limit = if dir[j] < 0.0 {
            (lo[j] - x[j]) / dir[j]
        } else if dir[j] > 0.0 {
            (hi[j] - x[j]) / dir[j]
        } else {
            continue;
        };
        if limit < alpha {
            alpha = limit.max(0.0);
            hit = Some(j);
        }
    }
    let mut truncated: Vec<f64> = (0..x.len()).map(|j| (x[j] + alpha * dir[j]).clamp(lo[j], hi[j])).collect();
    if let Some(j) = hit {
        truncated[j] = if dir[j] < 0.0 { lo[j] } else { hi[j] };
    }

    let diff = |y: &[f64]| -> Vec<f64> { y.iter().zip(x).map(|(a, b)| a - b).collect() };
    if model_cost(jac, r, &diff(&truncated)) <= model_cost(jac, r, &diff(&reflected)) {
        (truncated, false)
    } else {
        (reflected, projected)
    }
}

/// `(JᵀJ)⁻¹·2cost/(m−n)` via a column-equilibrated eigen-decomposition.
fn covariance(jac: &DMatrix<f64>, cost: f64, m: usize) -> (Option<DMatrix<f64>>, Vec<f64>, bool) {
    let n = jac.ncols();
    if m <= n {
        return (None, vec![f64::INFINITY; n], false);
    }
    let norms: Vec<f64> = (0..n).map(|j| jac.column(j).norm()).collect();
    let inv: Vec<f64> = norms.iter().map(|&c| if c > 0.0 { 1.0 / c } else { 0.0 }).collect();
    let mut js = jac.clone();
    for (j, &w) in inv.iter().enumerate() {
        js.column_mut(j).scale_mut(w);
    }
    let eig = SymmetricEigen::new(js.tr_mul(&js));
    let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let bottom = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let well = top > 0.0 && bottom > WELL_CONDITIONED * top && norms.iter().all(|&c| c > 0.0);
    let mut pinv = DMatrix::zeros(n, n);
    for (k, &e) in eig.eigenvalues.iter().enumerate() {
        if e > EIGEN_CUTOFF * top {
            let v = eig.eigenvectors.column(k);
            pinv += (v * v.transpose()) / e;
        }
    }
    let s2 = 2.0 * cost / (m - n) as f64;
    let cov = DMatrix::from_fn(n, n, |i, j| inv[i] * pinv[(i, j)] * inv[j] * s2);
    let std = (0..n).map(|j| if norms[j] > 0.0 { cov[(j, j)].max(0.0).sqrt() } else { f64::INFINITY }).collect();
    (Some(cov), std, well)
}
