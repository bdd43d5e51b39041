// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use super::curve::DecayCurve;
use crate::{Error, Result};

/// 2√(2 ln 2): FWHM of a Gaussian in units of its standard deviation.
pub const FWHM_PER_SIGMA: f64 = 2.354_820_045_030_949_3;

/// Kernel half-width in standard deviations.
const KERNEL_SIGMAS: f64 = 6.0;

/// Discrete Gaussian instrument response, normalized to unit sum.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKernel {
    weights: Vec<f64>,
    half: usize,
}

impl GaussianKernel {
    pub fn new(spacing: f64, fwhm: f64) -> Result<Self> {
        if !(fwhm > 0.0 && fwhm.is_finite()) {
            return Err(Error::InvalidParameter(format!("IRF FWHM must be positive, got {fwhm}")));
        }
        let sigma = fwhm / FWHM_PER_SIGMA;
        if !(spacing > 0.0) || spacing > sigma {
            return Err(Error::InvalidGrid(format!(
                "bin spacing {spacing} ps is coarser than the IRF sigma {sigma:.4} ps"
            )));
        }
        let half = (KERNEL_SIGMAS * sigma / spacing).floor() as usize;
        let mut weights: Vec<f64> = (0..=2 * half)
            .map(|k| {
                let x = (k as f64 - half as f64) * spacing / sigma;
                (-0.5 * x * x).exp()
            })
            .collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self { weights, half })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn half_width(&self) -> usize {
        self.half
    }

    /// Zero-padded "same" convolution.
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        let n = values.len() as isize;
        let half = self.half as isize;
        (0..n)
            .map(|i| {
                let lo = (i - half).max(0);
                let hi = (i + half).min(n - 1);
                (lo..=hi).map(|j| values[j as usize] * self.weights[(i - j + half) as usize]).sum()
            })
            .collect()
    }
}

pub fn convolve_irf(curve: &DecayCurve, irf_fwhm: f64) -> Result<DecayCurve> {
    let kernel = GaussianKernel::new(curve.spacing(), irf_fwhm)?;
    curve.with_values(kernel.apply(curve.values()))
}
