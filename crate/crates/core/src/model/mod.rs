// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! The cavity-QED model: units, basis, operators, Hamiltonian and the
//! Lindblad generator.

mod density;
mod liouvillian;
mod params;
mod space;
mod units;

pub use density::DensityMatrix;
pub use liouvillian::{hamiltonian, liouvillian_apply, Liouvillian};
pub use params::SystemParams;
pub use space::{operator_matrix, CMatrix, HilbertSpace, Level, OperatorKind};
pub use units::{energy_to_rate, kappa_from_q, rate_to_ghz, UnitSystem, HBAR_UEV_PS};
