// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use super::curve::DecayCurve;
use crate::{Error, Result};

const MIN_SAMPLES: usize = 64;
const ZERO_PAD: usize = 8;
const PEAK_OVER_MEDIAN: f64 = 3.0;
const MAX_REFINEMENTS: usize = 8;
const CONVERGENCE: f64 = 1e-3;

/// Period search interval, ps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodBand {
    pub min_ps: f64,
    pub max_ps: f64,
}

impl Default for PeriodBand {
    fn default() -> Self {
        Self { min_ps: 40.0, max_ps: 300.0 }
    }
}

impl PeriodBand {
    pub fn new(min_ps: f64, max_ps: f64) -> Result<Self> {
        if !(min_ps > 0.0 && max_ps > min_ps && max_ps.is_finite()) {
            return Err(Error::InvalidParameter(format!("invalid period band [{min_ps}, {max_ps}] ps")));
        }
        Ok(Self { min_ps, max_ps })
    }
}

/// Dominant oscillation period of a curve, ps.
///
/// The analysis starts at the curve maximum. Non-negative curves are taken
/// to the log domain, so a decaying oscillation has a stationary amplitude.
/// A centered boxcar baseline is subtracted, the residual is Hann-windowed,
/// zero-padded 8× and Fourier transformed, and the in-band magnitude peak is
/// refined by a 3-point parabola. The first baseline window spans 1.5× the
/// longest period in the band; it is then matched to the current estimate
/// until the estimate is stable, which removes the oscillation from the
/// baseline while still tracking multi-rate decays.
pub fn extract_period(curve: &DecayCurve, band: PeriodBand) -> Result<f64> {
    let band = PeriodBand::new(band.min_ps, band.max_ps)?;
    let n = curve.len();
    let dt = curve.spacing();
    if n < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("period extraction needs >= {MIN_SAMPLES} samples, got {n}")));
    }
    if band.min_ps < 2.0 * dt || band.max_ps > dt * n as f64 {
        return Err(Error::InvalidParameter(format!(
            "band [{}, {}] ps not resolvable with {n} samples at {dt} ps",
            band.min_ps, band.max_ps
        )));
    }

    let (peak_index, _) = curve.peak();
    let segment = &curve.values()[peak_index..];
    if segment.len() < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "only {} samples after the curve maximum, need >= {MIN_SAMPLES}",
            segment.len()
        )));
    }
    let x = to_analysis_domain(segment);
    let n = x.len();
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs())) * n as f64;

    let n_fft = ZERO_PAD * n;
    let fft = FftPlanner::new().plan_fft_forward(n_fft);
    let k_lo = (n_fft as f64 * dt / band.max_ps).ceil() as usize;
    let k_hi = ((n_fft as f64 * dt / band.min_ps).floor() as usize).min(n_fft / 2 - 1);
    if k_hi <= k_lo + 2 {
        return Err(Error::InvalidParameter("period band narrower than the frequency resolution".into()));
    }

    let mut window_ps = 1.5 * band.max_ps;
    let mut previous: Option<f64> = None;
    for _ in 0..MAX_REFINEMENTS {
        let half = ((window_ps / dt).round() as usize / 2).min((n - 1) / 2);
        let baseline = symmetric_boxcar(&x, half);
        let mut buf = vec![Complex::new(0.0, 0.0); n_fft];
        for i in 0..n {
            let hann = 0.5 - 0.5 * (2.0 * PI * i as f64 / (n - 1) as f64).cos();
            buf[i] = Complex::new((x[i] - baseline[i]) * hann, 0.0);
        }
        fft.process(&mut buf);
        let mag: Vec<f64> = buf[..=k_hi + 1].iter().map(|z| z.norm()).collect();

        let in_band = &mag[k_lo..=k_hi];
        let (rel, &peak) = in_band.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty band");
        let k = k_lo + rel;
        let mut sorted = in_band.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[sorted.len() / 2];
        if rel == 0 || k == k_hi || peak < PEAK_OVER_MEDIAN * median || peak <= 1e-9 * scale {
            return Err(Error::NoOscillation);
        }
        let (a, b, c) = (mag[k - 1], mag[k], mag[k + 1]);
        let denom = a - 2.0 * b + c;
        let offset = if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
        let period = n_fft as f64 * dt / (k as f64 + offset);
        if previous.is_some_and(|p| (p - period).abs() <= CONVERGENCE * period) {
            return Ok(period);
        }
        previous = Some(period);
        window_ps = period;
    }
    Err(Error::NoOscillation)
}

fn to_analysis_domain(segment: &[f64]) -> Vec<f64> {
    if segment.iter().any(|&v| v < 0.0) {
        return segment.to_vec();
    }
    let floor = segment.iter().copied().filter(|&v| v > 0.0).fold(f64::INFINITY, f64::min);
    if !floor.is_finite() {
        return segment.to_vec();
    }
    segment.iter().map(|&v| v.max(floor).ln()).collect()
}

/// Boxcar mean whose half-width shrinks near the edges so the window stays
/// centered; linear trends are removed exactly.
fn symmetric_boxcar(v: &[f64], half: usize) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let h = half.min(i).min(n - 1 - i);
            v[i - h..=i + h].iter().sum::<f64>() / (2 * h + 1) as f64
        })
        .collect()
}
