// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulation and parameter estimation for a quantum dot strongly coupled to
//! a nanocavity mode under incoherent pulsed pumping.
//!
//! The crate is organized bottom-up:
//!
//! - [`model`]: truncated emitter⊗photon Hilbert space, operators, the
//!   rotating-frame Hamiltonian and the Lindblad right-hand side.
//! - [`dynamics`]: Gaussian pump pulse, fixed-step RK4 evolution of the
//!   density matrix and an independent single-excitation oracle.
//! - [`signal`]: detector-domain curves (slow bare-cavity component, IRF
//!   convolution, offset), smoothing, rebinning and FFT period extraction.
//! - [`spectral`]: Voigt lineshapes, Q-factor and vacuum-Rabi triplet fits,
//!   dressed-state relations.
//! - [`fit`]: bounded trust-region least squares, decay-curve fitting and
//!   seeded Poisson data synthesis.
//! - [`cli`]: configuration, CSV/JSON exchange and the command workflows
//!   behind the `cqed-rabi` binary.
//!
//! All energies are carried in μeV and times in ps; angular rates in 1/ps are
//! obtained by dividing by ħ = 658.2119569 μeV·ps.

// `!(x > 0.0)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
mod error;
pub mod fit;
pub mod model;
pub mod signal;
pub mod spectral;

pub use error::{Error, Result};
