// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Detector-domain curves and their analysis.

mod analysis;
mod compose;
mod curve;
mod irf;
mod period;
mod slow;

pub(crate) use analysis::boxcar;
pub use analysis::{fit_exponential_tail, late_tail_start, moving_average, oscillation_contrast, rebin, TailFit};
pub use compose::{compose_from_emission, compose_model, Detector};
pub use curve::{DecayCurve, SPACING_TOL_PS};
pub use irf::{convolve_irf, GaussianKernel, FWHM_PER_SIGMA};
pub use period::{extract_period, PeriodBand};
pub use slow::{slow_component, SlowComponent};
