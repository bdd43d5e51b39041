// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use crate::{Error, Result};

/// Intensities on a strictly ascending absolute energy axis (μeV).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    energies: Vec<f64>,
    intensities: Vec<f64>,
}

impl Spectrum {
    pub fn new(energies: Vec<f64>, intensities: Vec<f64>) -> Result<Self> {
        if energies.len() != intensities.len() {
            return Err(Error::DimensionMismatch { expected: energies.len(), found: intensities.len() });
        }
        if energies.len() < 3 {
            return Err(Error::InvalidGrid("a spectrum needs at least three points".into()));
        }
        if let Some(i) = energies.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(format!("energies not strictly ascending at index {}", i + 1)));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidGrid("non-finite energy".into()));
        }
        if let Some(i) = intensities.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "intensity at index {i} must be finite and non-negative, got {}",
                intensities[i]
            )));
        }
        Ok(Self { energies, intensities })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}
