// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::signal::FWHM_PER_SIGMA;
use crate::{Error, Result};

const TERMS: usize = 32;

/// A Lorentzian convolved with a Gaussian, normalized to `amplitude` area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoigtPeak {
    pub center: f64,
    pub fwhm_lorentz: f64,
    pub fwhm_gauss: f64,
    pub amplitude: f64,
}

impl VoigtPeak {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !self.center.is_finite() {
            return Err(Error::InvalidParameter("peak center must be finite".into()));
        }
        if !ok(self.fwhm_lorentz) || !ok(self.fwhm_gauss) {
            return Err(Error::InvalidParameter(format!(
                "widths must be non-negative, got L {} G {}",
                self.fwhm_lorentz, self.fwhm_gauss
            )));
        }
        if self.fwhm_lorentz == 0.0 && self.fwhm_gauss == 0.0 {
            return Err(Error::InvalidParameter("Lorentzian and Gaussian widths are both zero".into()));
        }
        if !ok(self.amplitude) {
            return Err(Error::InvalidParameter(format!("amplitude must be >= 0, got {}", self.amplitude)));
        }
        Ok(())
    }

    /// Profile value without validation.
    pub(crate) fn eval(&self, x: f64) -> f64 {
        let d = x - self.center;
        let gamma = 0.5 * self.fwhm_lorentz;
        let sigma = self.fwhm_gauss / FWHM_PER_SIGMA;
        if sigma == 0.0 {
            return self.amplitude * gamma / (PI * (d * d + gamma * gamma));
        }
        let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
        if gamma == 0.0 {
            return self.amplitude * norm * (-0.5 * (d / sigma).powi(2)).exp();
        }
        let z = Complex::new(d, gamma) / (sigma * SQRT_2);
        self.amplitude * norm * faddeeva(z).re
    }

    /// `center / fwhm_lorentz`.
    pub fn q_factor(&self) -> f64 {
        self.center / self.fwhm_lorentz
    }
}

pub fn voigt(x: f64, peak: &VoigtPeak) -> Result<f64> {
    peak.validate()?;
    Ok(peak.eval(x))
}

/// Approximate total FWHM of a Voigt profile (Olivero–Longbothum).
pub fn voigt_fwhm(fwhm_lorentz: f64, fwhm_gauss: f64) -> f64 {
    0.5346 * fwhm_lorentz + (0.2166 * fwhm_lorentz * fwhm_lorentz + fwhm_gauss * fwhm_gauss).sqrt()
}

struct Rational {
    l: f64,
    coeffs: [f64; TERMS],
}

fn rational() -> &'static Rational {
    static TABLE: OnceLock<Rational> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m = 2 * TERMS;
        let l = (TERMS as f64 / SQRT_2).sqrt();
        let mut f = vec![0.0; 2 * m];
        for (slot, k) in (-(m as i64) + 1..m as i64).enumerate() {
            let t = l * (k as f64 * PI / m as f64 / 2.0).tan();
            f[slot + 1] = (-t * t).exp() * (l * l + t * t);
        }
        f.rotate_left(m);
        let n = f.len();
        let mut coeffs = [0.0; TERMS];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let k = TERMS - i;
            *c = f.iter().enumerate().map(|(j, v)| v * (2.0 * PI * ((j * k) % n) as f64 / n as f64).cos()).sum::<f64>()
                / n as f64;
        }
        Rational { l, coeffs }
    })
}

/// Faddeeva function `w(z) = exp(−z²)·erfc(−iz)` for `Im z >= 0`, by
/// Weideman's 32-term rational expansion.
pub fn faddeeva(z: Complex<f64>) -> Complex<f64> {
    let r = rational();
    let iz = Complex::new(-z.im, z.re);
    let denom: Complex<f64> = Complex::new(r.l, 0.0) - iz;
    let big_z: Complex<f64> = (Complex::new(r.l, 0.0) + iz) / denom;
    let p = r.coeffs.iter().fold(Complex::new(0.0, 0.0), |acc: Complex<f64>, &c| acc * big_z + Complex::new(c, 0.0));
    (p * 2.0 + denom * (1.0 / PI.sqrt())) / (denom * denom)
}
