// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Pump schedule and time integration of the master equation.

mod evolve;
mod grid;
mod oracle;
mod pump;

pub use evolve::{evolve, evolve_with, photon_trace, EvolveOptions, Propagation, Trajectory};
pub use grid::TimeGrid;
pub use oracle::{single_excitation_oracle, ExcitationStart, SingleExcitationTrace};
pub use pump::{pump_rate, PumpPulse, PUMP_SUPPORT_SIGMAS};
