// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Voigt fits: cavity quality factor from one peak, coupling from a triplet.

use cqed_rabi::spectral::{fit_rabi_triplet, fit_single_voigt, voigt, Spectrum, TripletOptions, VoigtPeak};

fn spectrum(peaks: &[VoigtPeak]) -> cqed_rabi::Result<Spectrum> {
    let energies: Vec<f64> = (-200..=200).map(|k| 1_313_950.0 + k as f64).collect();
    let intensity = energies
        .iter()
        .map(|&x| peaks.iter().map(|p| voigt(x, p)).sum::<cqed_rabi::Result<f64>>().map(|v| v + 0.5))
        .collect::<cqed_rabi::Result<Vec<_>>>()?;
    Spectrum::new(energies, intensity)
}

fn main() -> cqed_rabi::Result<()> {
    let e0 = 1_313_950.0;
    let cavity = VoigtPeak { center: e0, fwhm_lorentz: 16.22, fwhm_gauss: 21.0, amplitude: 1000.0 };
    let single = fit_single_voigt(&spectrum(&[cavity])?, 21.0)?;
    println!("Lorentzian FWHM {:.2} ueV, Q = {:.0}", single.peak.fwhm_lorentz, single.q_factor);

    let peak = |center, fwhm_lorentz, amplitude| VoigtPeak { center, fwhm_lorentz, fwhm_gauss: 21.0, amplitude };
    let data = spectrum(&[peak(e0 - 17.5, 8.0, 800.0), peak(e0, 16.22, 300.0), peak(e0 + 17.5, 8.0, 700.0)])?;
    let options = TripletOptions { fixed_fwhm_gauss: 21.0, fixed_center_fwhm_lorentz: 16.22, initial_centers: None };
    let triplet = fit_rabi_triplet(&data, &options)?;
    println!("splitting {:.2} +- {:.2} ueV, g = {:.2} ueV", triplet.splitting, triplet.splitting_std, triplet.g);
    Ok(())
}
