// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::spectrum::Spectrum;
use super::voigt::{voigt_fwhm, VoigtPeak};
use crate::fit::{least_squares_trf, FitProblem, FitResult};
use crate::signal::boxcar;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct SinglePeakFit {
    pub peak: VoigtPeak,
    pub baseline: f64,
    pub q_factor: f64,
    /// 1σ on (center, fwhm_lorentz, amplitude, baseline).
    pub std_errors: [f64; 4],
    pub fit: FitResult,
}

/// Voigt + constant baseline fit with the Gaussian width held fixed.
pub fn fit_single_voigt(spec: &Spectrum, fixed_fwhm_gauss: f64) -> Result<SinglePeakFit> {
    check_gauss(fixed_fwhm_gauss)?;
    let e = spec.energies();
    let smooth = boxcar(spec.intensities(), 1);
    let imax = argmax(&smooth);
    if imax < 2 || imax + 3 > smooth.len() {
        return Err(Error::InvalidParameter(format!("peak maximum at spectrum edge ({} μeV)", e[imax])));
    }
    let base = smooth.iter().cloned().fold(f64::INFINITY, f64::min);
    let height = smooth[imax] - base;
    let fl0 = lorentz_from_total(half_max_width(e, &smooth, imax, base), fixed_fwhm_gauss);
    let unit = VoigtPeak { center: 0.0, fwhm_lorentz: fl0, fwhm_gauss: fixed_fwhm_gauss, amplitude: 1.0 };
    let amp0 = height / unit.eval(0.0);
    let reference = e[imax];

    let model = |t: &[f64], x: f64| {
        VoigtPeak { center: reference + t[0], fwhm_lorentz: t[1], fwhm_gauss: fixed_fwhm_gauss, amplitude: t[2] }
            .eval(x)
            + t[3]
    };
    let residual = |t: &[f64]| Ok(residual_vec(spec, |x| model(t, x)));
    let (e_lo, e_hi) = (e[0] - reference, e[e.len() - 1] - reference);
    let problem = FitProblem::new(residual, vec![0.0, fl0, amp0, base])
        .with_bounds(vec![e_lo, 0.0, 0.0, f64::NEG_INFINITY], vec![e_hi, f64::INFINITY, f64::INFINITY, f64::INFINITY])?
        .with_typical(vec![1.0, fl0, amp0, height])?;
    let fit = require_converged(least_squares_trf(&problem)?)?;
    let t = &fit.theta;
    if t[0] <= e_lo || t[0] >= e_hi {
        return Err(Error::InvalidParameter("fitted peak sits at the spectrum edge".into()));
    }
    if !(t[1] > 0.0) {
        return Err(Error::FitFailed("Lorentzian width collapsed to zero".into()));
    }
    let peak =
        VoigtPeak { center: reference + t[0], fwhm_lorentz: t[1], fwhm_gauss: fixed_fwhm_gauss, amplitude: t[2] };
    let s = &fit.std_errors;
    Ok(SinglePeakFit { peak, baseline: t[3], q_factor: peak.q_factor(), std_errors: [s[0], s[1], s[2], s[3]], fit })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripletOptions {
    pub fixed_fwhm_gauss: f64,
    /// Lorentzian width of the bare-cavity peak in the middle.
    pub fixed_center_fwhm_lorentz: f64,
    /// Lower, middle and upper starting energies; found from the data if absent.
    pub initial_centers: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripletFit {
    pub lower: VoigtPeak,
    pub center: VoigtPeak,
    pub upper: VoigtPeak,
    pub baseline: f64,
    /// `E₊ − E₋`.
    pub splitting: f64,
    pub g: f64,
    pub splitting_std: f64,
    pub fit: FitResult,
}

/// Three Voigt peaks on a shared baseline. Parameters are the three centers,
/// the two outer Lorentzian widths, the three amplitudes and the baseline.
pub fn fit_rabi_triplet(spec: &Spectrum, options: &TripletOptions) -> Result<TripletFit> {
    let fg = options.fixed_fwhm_gauss;
    check_gauss(fg)?;
    let fl_mid = options.fixed_center_fwhm_lorentz;
    if !(fl_mid >= 0.0 && fl_mid.is_finite()) {
        return Err(Error::InvalidParameter(format!("center Lorentzian width must be >= 0, got {fl_mid}")));
    }
    let e = spec.energies();
    let smooth = boxcar(spec.intensities(), 1);
    let centers = match options.initial_centers {
        Some(c) => c,
        None => guess_centers(e, &smooth, fg)?,
    };
    let base = smooth.iter().cloned().fold(f64::INFINITY, f64::min);
    let fl0 = if fl_mid > 0.0 { fl_mid } else { 0.5 * fg };
    let unit = VoigtPeak { center: 0.0, fwhm_lorentz: fl0, fwhm_gauss: fg, amplitude: 1.0 }.eval(0.0);
    let amp = |c: f64| {
        let i = nearest(e, c);
        ((smooth[i] - base).max(0.0) / unit).max(1e-6 * (smooth[argmax(&smooth)] - base) / unit)
    };
    let reference = centers[1];
    let height = (smooth[argmax(&smooth)] - base).max(f64::MIN_POSITIVE);
    let theta0 = vec![
        centers[0] - reference,
        0.0,
        centers[2] - reference,
        fl0,
        fl0,
        amp(centers[0]),
        amp(centers[1]),
        amp(centers[2]),
        base,
    ];
    let peaks = |t: &[f64]| {
        [
            VoigtPeak { center: reference + t[0], fwhm_lorentz: t[3], fwhm_gauss: fg, amplitude: t[5] },
            VoigtPeak { center: reference + t[1], fwhm_lorentz: fl_mid, fwhm_gauss: fg, amplitude: t[6] },
            VoigtPeak { center: reference + t[2], fwhm_lorentz: t[4], fwhm_gauss: fg, amplitude: t[7] },
        ]
    };
    let residual = |t: &[f64]| {
        let p = peaks(t);
        Ok(residual_vec(spec, |x| p.iter().map(|q| q.eval(x)).sum::<f64>() + t[8]))
    };
    let (e_lo, e_hi) = (e[0] - reference, e[e.len() - 1] - reference);
    let inf = f64::INFINITY;
    let typical = vec![1.0, 1.0, 1.0, fl0, fl0, theta0[5], theta0[6].max(theta0[5]), theta0[7], height];
    let problem = FitProblem::new(residual, theta0)
        .with_bounds(
            vec![e_lo, e_lo, e_lo, 0.0, 0.0, 0.0, 0.0, 0.0, -inf],
            vec![e_hi, e_hi, e_hi, inf, inf, inf, inf, inf, inf],
        )?
        .with_typical(typical)?;
    let fit = require_converged(least_squares_trf(&problem)?)?;
    let [lower, center, upper] = peaks(&fit.theta);
    if lower.center >= upper.center {
        return Err(Error::FitFailed(format!(
            "polariton ordering violated: E- = {} >= E+ = {}",
            lower.center, upper.center
        )));
    }
    let splitting = upper.center - lower.center;
    let splitting_std = match &fit.covariance {
        Some(c) => (c[(0, 0)] + c[(2, 2)] - 2.0 * c[(0, 2)]).max(0.0).sqrt(),
        None => f64::NAN,
    };
    Ok(TripletFit { lower, center, upper, baseline: fit.theta[8], splitting, g: splitting / 2.0, splitting_std, fit })
}

fn check_gauss(fg: f64) -> Result<()> {
    if fg > 0.0 && fg.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("fixed Gaussian FWHM must be > 0, got {fg}")))
    }
}

fn require_converged(fit: FitResult) -> Result<FitResult> {
    if fit.status.converged() {
        Ok(fit)
    } else {
        Err(Error::FitFailed(format!("{:?}: {}", fit.status, fit.message)))
    }
}

fn residual_vec(spec: &Spectrum, model: impl Fn(f64) -> f64) -> Vec<f64> {
    spec.energies().iter().zip(spec.intensities()).map(|(&x, &y)| model(x) - y).collect()
}

fn argmax(v: &[f64]) -> usize {
    v.iter().enumerate().fold(0, |best, (i, &x)| if x > v[best] { i } else { best })
}

fn nearest(e: &[f64], x: f64) -> usize {
    e.partition_point(|&v| v < x).min(e.len() - 1)
}

fn half_max_width(e: &[f64], s: &[f64], imax: usize, base: f64) -> f64 {
    let half = base + 0.5 * (s[imax] - base);
    let cross = |range: &mut dyn Iterator<Item = usize>, step: isize| -> f64 {
        for i in range {
            let j = (i as isize - step) as usize;
            if s[i] < half {
                let frac = (s[j] - half) / (s[j] - s[i]);
                return e[j] + frac * (e[i] - e[j]);
            }
        }
        if step > 0 {
            e[e.len() - 1]
        } else {
            e[0]
        }
    };
    let right = cross(&mut (imax + 1..s.len()), 1);
    let left = cross(&mut (0..imax).rev(), -1);
    right - left
}

/// Inverse of [`voigt_fwhm`] for the Lorentzian part.
fn lorentz_from_total(total: f64, fg: f64) -> f64 {
    if total <= fg * 1.001 {
        return 0.1 * fg;
    }
    let a = 0.5346 * 0.5346 - 0.2166;
    let b = -2.0 * 0.5346 * total;
    let c = total * total - fg * fg;
    let fl = (-b - (b * b - 4.0 * a * c).max(0.0).sqrt()) / (2.0 * a);
    debug_assert!((voigt_fwhm(fl, fg) - total).abs() < 1e-6 * total);
    fl.max(0.1 * fg)
}

/// The three tallest points that dominate their ±fG/2 neighborhood and rise
/// above a fifth of the peak height, or two plus their midpoint.
fn guess_centers(e: &[f64], s: &[f64], fg: f64) -> Result<[f64; 3]> {
    let base = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let floor = base + 0.2 * (s[argmax(s)] - base);
    let mut maxima: Vec<usize> = (1..s.len() - 1)
        .filter(|&i| s[i] >= floor)
        .filter(|&i| {
            let lo = e.partition_point(|&v| v < e[i] - 0.5 * fg);
            let hi = e.partition_point(|&v| v <= e[i] + 0.5 * fg);
            lo < i && hi > i + 1 && (lo..hi).all(|j| s[j] < s[i] || j == i)
        })
        .collect();
    maxima.sort_by(|&a, &b| s[b].total_cmp(&s[a]));
    maxima.truncate(3);
    maxima.sort_unstable();
    match maxima[..] {
        [a, b, c] => Ok([e[a], e[b], e[c]]),
        [a, c] => Ok([e[a], 0.5 * (e[a] + e[c]), e[c]]),
        _ => Err(Error::InvalidParameter("fewer than two resolvable peaks; supply initial centers".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use rand_distr::{Distribution, Normal};

    const E_CAV: f64 = 1_313_950.0;

    fn synth(peaks: &[VoigtPeak], baseline: f64, noise: f64, seed: u64) -> Spectrum {
        let energies: Vec<f64> = (-200..=200).map(|k| E_CAV + k as f64).collect();
        let clean: Vec<f64> =
            energies.iter().map(|&x| peaks.iter().map(|p| p.eval(x)).sum::<f64>() + baseline).collect();
        let top = clean.iter().cloned().fold(0.0, f64::max);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, noise * top).unwrap();
        let noisy = clean.iter().map(|&v| (v + normal.sample(&mut rng)).max(0.0)).collect();
        Spectrum::new(energies, noisy).unwrap()
    }

    fn cavity(fl: f64) -> VoigtPeak {
        VoigtPeak { center: E_CAV + 3.3, fwhm_lorentz: fl, fwhm_gauss: 21.0, amplitude: 1000.0 }
    }

    #[test]
    fn noiseless_single_peak_is_exact() {
        let truth = cavity(16.22);
        let fit = fit_single_voigt(&synth(&[truth], 2.0, 0.0, 0), 21.0).unwrap();
        assert!((fit.peak.center - truth.center).abs() < 1e-6 * 16.22);
        assert!((fit.peak.fwhm_lorentz / 16.22 - 1.0).abs() < 1e-6);
        assert!((fit.peak.amplitude / 1000.0 - 1.0).abs() < 1e-6);
        assert!((fit.baseline - 2.0).abs() < 1e-6);
    }

    #[test]
    fn q_factor_with_noise() {
        for (fl, q) in [(16.22, 81_000.0), (18.51, 71_000.0)] {
            for seed in 0..3 {
                let fit = fit_single_voigt(&synth(&[cavity(fl)], 0.5, 0.01, seed), 21.0).unwrap();
                assert!((fit.q_factor / q - 1.0).abs() < 0.02, "L {fl} seed {seed}: Q {}", fit.q_factor);
            }
        }
    }

    #[test]
    fn edge_peak_rejected() {
        let mut p = cavity(16.22);
        p.center = E_CAV - 200.0;
        assert!(fit_single_voigt(&synth(&[p], 0.0, 0.0, 0), 21.0).is_err());
        assert!(fit_single_voigt(&synth(&[cavity(16.22)], 0.0, 0.0, 0), 0.0).is_err());
    }

    fn triplet(splitting: f64, center_amp: f64, offset: f64) -> Vec<VoigtPeak> {
        let mid = E_CAV + offset;
        vec![
            VoigtPeak { center: mid - splitting / 2.0, fwhm_lorentz: 8.0, fwhm_gauss: 21.0, amplitude: 800.0 },
            VoigtPeak { center: E_CAV, fwhm_lorentz: 16.22, fwhm_gauss: 21.0, amplitude: center_amp },
            VoigtPeak { center: mid + splitting / 2.0, fwhm_lorentz: 8.0, fwhm_gauss: 21.0, amplitude: 700.0 },
        ]
    }

    fn options() -> TripletOptions {
        TripletOptions { fixed_fwhm_gauss: 21.0, fixed_center_fwhm_lorentz: 16.22, initial_centers: None }
    }

    #[test]
    fn triplet_splitting() {
        for seed in 0..3 {
            let fit = fit_rabi_triplet(&synth(&triplet(35.0, 300.0, 0.0), 0.5, 0.01, seed), &options()).unwrap();
            assert!((fit.g - 17.5).abs() < 0.5, "seed {seed}: g {}", fit.g);
            assert!((fit.center.center - E_CAV).abs() < 0.5 * 35.0);
        }
    }

    #[test]
    fn triplet_without_center_peak() {
        let fit = fit_rabi_triplet(&synth(&triplet(40.0, 0.0, 0.0), 0.5, 0.01, 4), &options()).unwrap();
        assert!((fit.splitting / 40.0 - 1.0).abs() < 0.02, "splitting {}", fit.splitting);
    }

    #[test]
    fn symmetric_triplet_center_is_midpoint() {
        let mut peaks = triplet(35.0, 300.0, 0.0);
        peaks[2].amplitude = peaks[0].amplitude;
        let fit = fit_rabi_triplet(&synth(&peaks, 0.5, 0.0, 0), &options()).unwrap();
        let mid = 0.5 * (fit.lower.center + fit.upper.center);
        assert!((fit.center.center - mid).abs() < 0.5);
    }

    #[test]
    fn ordering_violation_reported() {
        let spec = synth(&triplet(35.0, 300.0, 0.0), 0.5, 0.0, 0);
        let opts = TripletOptions { initial_centers: Some([E_CAV + 17.5, E_CAV, E_CAV - 17.5]), ..options() };
        assert!(matches!(fit_rabi_triplet(&spec, &opts), Err(Error::FitFailed(_))));
    }

    #[test]
    fn width_inversion() {
        for fl in [5.0, 16.22, 40.0] {
            assert!((lorentz_from_total(voigt_fwhm(fl, 21.0), 21.0) - fl).abs() < 1e-9);
        }
    }
}
