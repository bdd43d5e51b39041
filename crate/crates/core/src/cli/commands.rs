// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::config::RunConfig;
use super::io::{format_curve, format_json, format_table, read_curve, read_spectrum, write_file};
use super::{Command, SpectrumMode, SweepParam};
use crate::fit::{fit_decay, initial_guess, synthesize, DecayFitOptions, FitOptions};
use crate::signal::{
    compose_model, extract_period, fit_exponential_tail, late_tail_start, oscillation_contrast, DecayCurve, PeriodBand,
};
use crate::spectral::{fit_rabi_triplet, fit_single_voigt, TripletOptions};
use crate::{Error, Result};

pub(super) fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Simulate { config, out } => simulate(&config, &out),
        Command::FitDecay { config, data, out } => fit_decay_cmd(&config, &data, out.as_deref()),
        Command::FitSpectrum { config, data, mode, gauss_fwhm, center_lorentz, centers, out } => {
            let config = optional_config(config.as_deref())?;
            fit_spectrum(&config, &data, mode, gauss_fwhm, center_lorentz, centers, out.as_deref())
        }
        Command::Period { config, data, band } => {
            optional_config(config.as_deref())?;
            period(&data, &band)
        }
        Command::Synth { config, peak_counts, seed, out } => synth(&config, peak_counts, seed, &out),
        Command::Sweep { config, param, from, to, steps, out } => sweep(&config, param, from, to, steps, &out),
    }
}

fn optional_config(path: Option<&Path>) -> Result<RunConfig> {
    path.map_or_else(|| Ok(RunConfig::default()), RunConfig::load)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn period_or_none(curve: &DecayCurve) -> Result<Option<f64>> {
    match extract_period(curve, PeriodBand::default()) {
        Ok(p) => Ok(Some(p)),
        Err(Error::NoOscillation) => Ok(None),
        Err(e) => Err(e),
    }
}

fn simulate_curve(config: &RunConfig) -> Result<DecayCurve> {
    compose_model(&config.system(), config.space()?, &config.grid()?, &config.detector())
}

fn simulate(config: &Path, out: &Path) -> Result<i32> {
    let config = RunConfig::load(config)?;
    let curve = simulate_curve(&config)?;
    write_file(out, &format_curve(&curve))?;
    let (i, peak) = curve.peak();
    let summary = json!({
        "samples": curve.len(),
        "peak_time_ps": curve.times()[i],
        "peak_value": peak,
        "period_ps": period_or_none(&curve)?,
        "contrast": oscillation_contrast(&curve),
    });
    print!("{}", format_json(&summary)?);
    Ok(0)
}

fn fit_decay_cmd(config: &Path, data: &Path, out: Option<&Path>) -> Result<i32> {
    let config = RunConfig::load(config)?;
    let data = read_curve(data)?;
    let frozen = config.frozen();
    let theta0 = initial_guess(&data, &frozen)?;
    let options = DecayFitOptions {
        bounds: config.decay_bounds()?,
        weighting: config.weights,
        fit: FitOptions { max_iter: config.max_iter, ..FitOptions::default() },
    };
    let report = fit_decay(&data, &frozen, &theta0, &options)?;
    if report.short_data {
        eprintln!("warning: data span shorter than five oscillation periods");
    }
    let f = &report.fit;
    let doc = json!({
        "status": f.status,
        "converged": f.status.converged(),
        "message": f.message,
        "cost": f.cost,
        "initial_cost": f.initial_cost,
        "iterations": f.iterations,
        "evaluations": f.evaluations,
        "well_conditioned": f.well_conditioned,
        "projected_steps": f.projected_steps,
        "short_data_warning": report.short_data,
        "weighting": report.weighting,
        "initial": theta0,
        "params": report.params,
        "std_errors": report.std_errors,
        "frozen": report.frozen,
    });
    emit(out, &format_json(&doc)?)?;
    Ok(if f.status.converged() { 0 } else { 2 })
}

#[derive(Serialize)]
struct PeakOut {
    center_uev: f64,
    fwhm_lorentz_uev: f64,
    fwhm_gauss_uev: f64,
    amplitude: f64,
}

impl From<crate::spectral::VoigtPeak> for PeakOut {
    fn from(p: crate::spectral::VoigtPeak) -> Self {
        Self {
            center_uev: p.center,
            fwhm_lorentz_uev: p.fwhm_lorentz,
            fwhm_gauss_uev: p.fwhm_gauss,
            amplitude: p.amplitude,
        }
    }
}

fn fit_spectrum(
    config: &RunConfig,
    data: &Path,
    mode: SpectrumMode,
    gauss_fwhm: f64,
    center_lorentz: Option<f64>,
    centers: Option<[f64; 3]>,
    out: Option<&Path>,
) -> Result<i32> {
    if !(gauss_fwhm > 0.0 && gauss_fwhm.is_finite()) {
        return Err(Error::InvalidParameter(format!("--gauss-fwhm must be > 0, got {gauss_fwhm}")));
    }
    let spec = read_spectrum(data)?;
    let doc = match mode {
        SpectrumMode::Single => {
            let r = fit_single_voigt(&spec, gauss_fwhm)?;
            json!({
                "mode": "single",
                "status": r.fit.status,
                "cost": r.fit.cost,
                "iterations": r.fit.iterations,
                "peak": PeakOut::from(r.peak),
                "baseline": r.baseline,
                "q_factor": r.q_factor,
                "std_errors": {
                    "center_uev": r.std_errors[0],
                    "fwhm_lorentz_uev": r.std_errors[1],
                    "amplitude": r.std_errors[2],
                    "baseline": r.std_errors[3],
                },
            })
        }
        SpectrumMode::Triplet => {
            let options = TripletOptions {
                fixed_fwhm_gauss: gauss_fwhm,
                fixed_center_fwhm_lorentz: center_lorentz.unwrap_or(config.kappa_uev),
                initial_centers: centers,
            };
            let r = fit_rabi_triplet(&spec, &options)?;
            json!({
                "mode": "triplet",
                "status": r.fit.status,
                "cost": r.fit.cost,
                "iterations": r.fit.iterations,
                "peaks": [PeakOut::from(r.lower), PeakOut::from(r.center), PeakOut::from(r.upper)],
                "baseline": r.baseline,
                "splitting_uev": r.splitting,
                "splitting_std_uev": r.splitting_std,
                "g_uev": r.g,
            })
        }
    };
    emit(out, &format_json(&doc)?)?;
    Ok(0)
}

fn period(data: &Path, band: &[f64; 2]) -> Result<i32> {
    let band = PeriodBand::new(band[0], band[1])?;
    let curve = read_curve(data)?;
    let p = extract_period(&curve, band)?;
    print!("{}", format_json(&json!({ "period_ps": p }))?);
    Ok(0)
}

fn synth(config: &Path, peak_counts: f64, seed: u64, out: &Path) -> Result<i32> {
    let config = RunConfig::load(config)?;
    let times = config.grid()?.output_times();
    let s = synthesize(&config.decay_params(), &config.frozen(), &times, peak_counts, seed)?;
    write_file(out, &format_curve(&s.counts))?;
    print!("{}", format_json(&json!({ "seed": seed, "peak_counts": peak_counts, "truth": s.truth }))?);
    Ok(0)
}

fn sweep(config: &Path, param: SweepParam, from: f64, to: f64, steps: usize, out: &Path) -> Result<i32> {
    let config = RunConfig::load(config)?;
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("--steps must be >= 2, got {steps}")));
    }
    if !(from.is_finite() && to.is_finite()) || from == to {
        return Err(Error::InvalidParameter(format!("bad sweep range {from}..{to}")));
    }
    let values: Vec<f64> = (0..steps).map(|k| from + (to - from) * k as f64 / (steps - 1) as f64).collect();
    let configs = values
        .iter()
        .map(|&v| {
            let mut c = config.clone();
            match param {
                SweepParam::Delta => c.delta_uev = v,
                SweepParam::GammaPh => c.gamma_ph_uev = v,
                SweepParam::PowerProxy => (c.gamma_ph_uev, c.a_i) = config.power_proxy(v)?,
            }
            c.validate()?;
            Ok(c)
        })
        .collect::<Result<Vec<RunConfig>>>()?;
    let rows = configs
        .par_iter()
        .zip(values.par_iter())
        .map(|(c, &v)| {
            let curve = simulate_curve(c)?;
            let tail = fit_exponential_tail(&curve, c.slow_t_ps, c.t0_ps, late_tail_start(&curve, c.t0_ps))?;
            Ok(vec![Some(v), period_or_none(&curve)?, oscillation_contrast(&curve), Some(tail.amplitude)])
        })
        .collect::<Result<Vec<_>>>()?;
    write_file(out, &format_table(&["value", "period_ps", "contrast", "tail_amplitude"], rows))?;
    Ok(0)
}
