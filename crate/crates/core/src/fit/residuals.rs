// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::signal::DecayCurve;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    #[default]
    Uniform,
    /// `1/sqrt(max(y, 1))` per bin.
    Poisson,
}

pub fn poisson_weights(data: &DecayCurve) -> Vec<f64> {
    data.values().iter().map(|&y| 1.0 / y.max(1.0).sqrt()).collect()
}

impl Weighting {
    pub fn weights(self, data: &DecayCurve) -> Vec<f64> {
        match self {
            Weighting::Uniform => vec![1.0; data.len()],
            Weighting::Poisson => poisson_weights(data),
        }
    }
}

/// `w ⊙ (model(θ) − data)`. The model must be sampled on the data grid.
pub fn residuals<M>(theta: &[f64], data: &DecayCurve, model: M, weights: &[f64]) -> Result<Vec<f64>>
where
    M: Fn(&[f64]) -> Result<DecayCurve>,
{
    if weights.len() != data.len() {
        return Err(Error::DimensionMismatch { expected: data.len(), found: weights.len() });
    }
    let predicted = model(theta)?;
    if predicted.len() != data.len() {
        return Err(Error::DimensionMismatch { expected: data.len(), found: predicted.len() });
    }
    if !predicted.same_grid(data, 1e-9) {
        return Err(Error::InvalidGrid("model and data are sampled on different grids".into()));
    }
    Ok(predicted.values().iter().zip(data.values()).zip(weights).map(|((m, y), w)| w * (m - y)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_difference() {
        let data = DecayCurve::uniform(0.0, 1.0, vec![4.0, 0.0, 9.0]).unwrap();
        let w = poisson_weights(&data);
        assert_eq!(w, vec![0.5, 1.0, 1.0 / 3.0]);
        let r = residuals(&[1.0], &data, |t| data.with_values(vec![t[0]; 3]), &w).unwrap();
        assert_eq!(r, vec![-1.5, 1.0, -8.0 / 3.0]);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let data = DecayCurve::uniform(0.0, 1.0, vec![1.0; 3]).unwrap();
        let other = DecayCurve::uniform(0.5, 1.0, vec![1.0; 3]).unwrap();
        assert!(residuals(&[], &data, |_| Ok(other.clone()), &[1.0; 3]).is_err());
        assert!(residuals(&[], &data, |_| Ok(data.clone()), &[1.0; 2]).is_err());
    }
}
