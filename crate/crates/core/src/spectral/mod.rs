// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Line shapes, spectral peak fits and dressed-state relations.

mod fit;
mod rabi;
mod spectrum;
mod voigt;

pub use fit::{fit_rabi_triplet, fit_single_voigt, SinglePeakFit, TripletFit, TripletOptions};
pub use rabi::{polariton_energies, rabi_frequency, rabi_period_ps};
pub use spectrum::Spectrum;
pub use voigt::{faddeeva, voigt, voigt_fwhm, VoigtPeak};
