// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use crate::{Error, Result};

/// Maximum deviation of any bin width from the nominal spacing, ps.
pub const SPACING_TOL_PS: f64 = 1e-9;

/// Uniformly binned time series: times in ps, intensity or counts per bin.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayCurve {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl DecayCurve {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidGrid(format!("{} times but {} values", times.len(), values.len())));
        }
        if times.len() < 2 {
            return Err(Error::InvalidGrid("a curve needs at least 2 samples".into()));
        }
        if let Some(i) = times.iter().chain(&values).position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite entry at position {}", i % times.len())));
        }
        let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
        if dt <= 0.0 {
            return Err(Error::InvalidGrid("times must be strictly ascending".into()));
        }
        for (i, w) in times.windows(2).enumerate() {
            if ((w[1] - w[0]) - dt).abs() > SPACING_TOL_PS {
                return Err(Error::InvalidGrid(format!(
                    "non-uniform spacing between samples {} and {} ({} ps vs {} ps)",
                    i,
                    i + 1,
                    w[1] - w[0],
                    dt
                )));
            }
        }
        Ok(Self { times, values })
    }

    pub fn uniform(t_start: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        let times = (0..values.len()).map(|k| t_start + k as f64 * dt).collect();
        Self::new(times, values)
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.times.clone(), values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_start(&self) -> f64 {
        self.times[0]
    }

    pub fn t_end(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end() - self.t_start()) / (self.len() - 1) as f64
    }

    /// Index and value of the maximum.
    pub fn peak(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { times: self.times.clone(), values: self.values.iter().map(|v| v * factor).collect() }
    }

    /// True when both grids coincide to `tol` ps at every sample.
    pub fn same_grid(&self, other: &DecayCurve, tol: f64) -> bool {
        self.len() == other.len() && self.times.iter().zip(&other.times).all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.times, self.values)
    }
}
