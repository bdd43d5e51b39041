// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use super::curve::DecayCurve;
use crate::{Error, Result};

/// Centered boxcar mean; near the edges the window is truncated to the
/// available samples.
pub fn moving_average(curve: &DecayCurve, window: usize) -> Result<DecayCurve> {
    let v = curve.values();
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("moving-average window must be odd and >= 1, got {window}")));
    }
    if window > v.len() {
        return Err(Error::InvalidParameter(format!(
            "moving-average window {window} exceeds curve length {}",
            v.len()
        )));
    }
    curve.with_values(boxcar(v, window / 2))
}

pub(crate) fn boxcar(v: &[f64], half: usize) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            v[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// Sums groups of `factor` bins; each new bin is stamped with its left edge.
pub fn rebin(curve: &DecayCurve, factor: usize) -> Result<DecayCurve> {
    if factor == 0 || !curve.len().is_multiple_of(factor) {
        return Err(Error::InvalidParameter(format!(
            "rebin factor {factor} does not divide curve length {}",
            curve.len()
        )));
    }
    if curve.len() / factor < 2 {
        return Err(Error::InvalidParameter("rebinned curve would have fewer than 2 bins".into()));
    }
    let times = curve.times().iter().step_by(factor).copied().collect();
    let values = curve.values().chunks(factor).map(|c| c.iter().sum()).collect();
    DecayCurve::new(times, values)
}

/// Start of the window used for late-tail fits: 600 ps after `onset_ps`, or
/// the last third of the record when that leaves fewer than 20 samples.
pub fn late_tail_start(curve: &DecayCurve, onset_ps: f64) -> f64 {
    let from = onset_ps + 600.0;
    if curve.times().iter().filter(|&&t| t >= from).count() >= 20 {
        from
    } else {
        curve.t_end() - (curve.t_end() - curve.t_start()) / 3.0
    }
}

/// Linear least-squares amplitude and offset of `A·exp(−(t−onset)/T) + y0`
/// over samples with `t >= from_ps`, for a fixed decay constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub amplitude: f64,
    pub offset: f64,
}

pub fn fit_exponential_tail(curve: &DecayCurve, decay_ps: f64, onset_ps: f64, from_ps: f64) -> Result<TailFit> {
    let (mut see, mut se, mut s1, mut sey, mut sy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&t, &y) in curve.times().iter().zip(curve.values()) {
        if t < from_ps {
            continue;
        }
        let e = (-(t - onset_ps) / decay_ps).exp();
        see += e * e;
        se += e;
        s1 += 1.0;
        sey += e * y;
        sy += y;
    }
    let det = see * s1 - se * se;
    if s1 < 2.0 || det.abs() <= 1e-12 * see * s1 {
        return Err(Error::InvalidParameter(format!("not enough tail samples after {from_ps} ps")));
    }
    Ok(TailFit { amplitude: (sey * s1 - se * sy) / det, offset: (see * sy - se * sey) / det })
}

/// `(P₂ − D₁)/(P₂ + D₁)` from the first peak P₁, the following dip D₁ and the
/// second peak P₂. `None` when the curve has no second peak.
pub fn oscillation_contrast(curve: &DecayCurve) -> Option<f64> {
    let v = curve.values();
    let first_peak = (1..v.len() - 1).find(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1])?;
    let dip = (first_peak + 1..v.len() - 1).find(|&i| v[i] < v[i - 1] && v[i] <= v[i + 1])?;
    let second = (dip + 1..v.len() - 1).find(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1])?;
    let (p2, d1) = (v[second], v[dip]);
    Some((p2 - d1) / (p2 + d1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(values: Vec<f64>) -> DecayCurve {
        DecayCurve::uniform(0.0, 1.0, values).unwrap()
    }

    #[test]
    fn moving_average_examples() {
        let c = curve(vec![1.0, 5.0, 2.0, 7.0]);
        assert_eq!(moving_average(&c, 1).unwrap(), c);
        let flat = curve(vec![0.1; 20]);
        for (a, b) in moving_average(&flat, 5).unwrap().values().iter().zip(flat.values()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(moving_average(&curve(vec![0.0, 3.0, 0.0]), 3).unwrap().values()[1], 1.0);
        assert!(moving_average(&c, 2).is_err());
        assert!(moving_average(&c, 5).is_err());
        assert!(moving_average(&c, 0).is_err());
    }

    #[test]
    fn rebin_examples() {
        let c = curve(vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(rebin(&c, 1).unwrap(), c);
        let r = rebin(&c, 2).unwrap();
        assert_eq!(r.values(), &[2.0, 2.0]);
        assert_eq!(r.times(), &[0.0, 2.0]);
        assert_eq!(r.spacing(), 2.0);
        assert!(rebin(&c, 3).is_err());
        assert!(rebin(&c, 0).is_err());
    }

    #[test]
    fn tail_fit_exact() {
        let times: Vec<f64> = (0..500).map(|k| 2.0 * k as f64).collect();
        let values = times.iter().map(|t| 40.0 * (-(t - 5.0) / 360.0).exp() + 3.0).collect();
        let fit = fit_exponential_tail(&DecayCurve::new(times, values).unwrap(), 360.0, 5.0, 600.0).unwrap();
        assert!((fit.amplitude - 40.0).abs() < 1e-9);
        assert!((fit.offset - 3.0).abs() < 1e-9);
    }

    #[test]
    fn contrast() {
        let c = curve(vec![0.0, 4.0, 1.0, 3.0, 0.5]);
        assert_eq!(oscillation_contrast(&c), Some(0.5));
        assert_eq!(oscillation_contrast(&curve(vec![0.0, 2.0, 1.0, 0.5])), None);
    }
}
