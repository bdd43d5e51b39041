// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. [`run`] parses arguments, dispatches one
//! subcommand and returns the process exit code: 0 on success, 1 for invalid
//! input, 2 for numerical or convergence failures.

mod commands;
mod config;
mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{BoundsConfig, RunConfig};
pub use io::{format_curve, format_json, format_table, read_curve, read_spectrum, round9};

use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "cqed-rabi", version, about = "Vacuum Rabi oscillation modelling and fitting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a detector-level decay curve.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit the decay model to a measured curve.
    FitDecay {
        config: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a single Voigt peak or a vacuum Rabi triplet to a spectrum.
    FitSpectrum {
        config: Option<PathBuf>,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumMode::Single)]
        mode: SpectrumMode,
        /// Spectrometer Gaussian FWHM, μeV.
        #[arg(long, default_value_t = 21.0)]
        gauss_fwhm: f64,
        /// Lorentzian FWHM of the middle triplet peak, μeV; defaults to kappa_uev.
        #[arg(long)]
        center_lorentz: Option<f64>,
        /// Starting energies `lower,middle,upper` for the triplet, μeV.
        #[arg(long, value_parser = parse_list::<3>)]
        centers: Option<[f64; 3]>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oscillation period of a curve, printed as JSON.
    Period {
        config: Option<PathBuf>,
        #[arg(long)]
        data: PathBuf,
        /// Search band `min,max` in ps.
        #[arg(long, value_parser = parse_list::<2>, default_value = "40,300")]
        band: [f64; 2],
    },
    /// Poisson-noise synthetic curve from the configured model.
    Synth {
        config: PathBuf,
        #[arg(long)]
        peak_counts: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate and analyse across a parameter range.
    Sweep {
        config: PathBuf,
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    Single,
    Triplet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Delta,
    #[value(name = "gamma_ph", alias = "gamma-ph")]
    GammaPh,
    PowerProxy,
}

fn parse_list<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let values: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number")))
        .collect::<std::result::Result<_, _>>()?;
    values.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated values, found {}", v.len()))
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_numeric() {
        2
    } else {
        1
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
