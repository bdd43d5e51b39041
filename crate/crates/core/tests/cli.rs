// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cqed_rabi::spectral::{voigt, VoigtPeak};
use serde_json::Value;
use tempfile::TempDir;

const HBAR: f64 = 658.2119569;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqed-rabi")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

struct Work(TempDir);

impl Work {
    fn new() -> Self {
        Self(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_rows(p: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(p)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect()
}

fn curve_csv(points: impl Iterator<Item = (f64, f64)>) -> String {
    let mut text = String::from("time_ps,value\n");
    for (t, v) in points {
        text.push_str(&format!("{t},{v}\n"));
    }
    text
}

fn spectrum_csv(peaks: &[VoigtPeak]) -> String {
    let mut text = String::from("energy_uev,intensity\n");
    for k in -200..=200 {
        let x = 1_313_950.0 + k as f64;
        let y: f64 = peaks.iter().map(|p| voigt(x, p).unwrap()).sum::<f64>() + 0.5;
        text.push_str(&format!("{x},{y}\n"));
    }
    text
}

#[test]
fn simulate_resonant_curve() {
    let w = Work::new();
    let config = w.file("c.json", "{}");
    let out = w.path("sim.csv");
    let summary = ok_json(&["simulate", s(&config), "--out", s(&out)]);
    let law = std::f64::consts::PI * HBAR / 18.0;
    let period = summary["period_ps"].as_f64().unwrap();
    assert!((period - law).abs() <= 3.0, "{period}");
    let rows = read_rows(&out);
    assert_eq!(rows.len(), 751);
    assert_eq!(summary["samples"], 751);
    assert!(rows.iter().all(|r| r.len() == 2 && r[1] >= 0.0));
}

#[test]
fn simulate_without_pump_is_flat() {
    let w = Work::new();
    let config = w.file("c.json", r#"{"p0": 0.0, "y0": 0.25}"#);
    let out = w.path("sim.csv");
    let summary = ok_json(&["simulate", s(&config), "--out", s(&out)]);
    assert!(summary["period_ps"].is_null());
    assert!(read_rows(&out).iter().all(|r| (r[1] - 0.25).abs() < 1e-12));
}

#[test]
fn malformed_config_is_an_input_error() {
    let w = Work::new();
    let out = w.path("sim.csv");
    let typo = w.file("typo.json", r#"{"g_ueV": 18}"#);
    let result = run(&["simulate", s(&typo), "--out", s(&out)]);
    assert_eq!(result.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&result.stderr).contains("g_ueV"));
    let broken = w.file("broken.json", "{ \"g_uev\": ");
    assert_eq!(code(&["simulate", s(&broken), "--out", s(&out)]), 1);
    let negative = w.file("neg.json", r#"{"kappa_uev": -1}"#);
    assert_eq!(code(&["simulate", s(&negative), "--out", s(&out)]), 1);
    assert_eq!(code(&["simulate", "/nonexistent/config.json", "--out", s(&out)]), 1);
    assert_eq!(code(&["no-such-command"]), 1);
}

#[test]
fn synth_then_fit_recovers_rates() {
    let w = Work::new();
    let config = w.file("c.json", r#"{"A_i": 0.00014, "y0": 0.0000094, "gamma_ph_uev": 2.6}"#);
    let data = w.path("counts.csv");
    let synth = ok_json(&["synth", s(&config), "--peak-counts", "10000", "--seed", "42", "--out", s(&data)]);
    let truth = &synth["truth"];
    let fit_out = w.path("fit.json");
    let out = run(&["fit-decay", s(&config), "--data", s(&data), "--out", s(&fit_out)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&fit_out).unwrap()).unwrap();
    assert_eq!(report["converged"], true);
    let rel = |k: &str| {
        let (a, b) = (report["params"][k].as_f64().unwrap(), truth[k].as_f64().unwrap());
        (a - b).abs() / b
    };
    assert!(rel("gamma_r") < 0.2);
    assert!(rel("gamma_ph") < 0.3);
    assert!(rel("A_i") < 0.15);
    assert!(report["std_errors"]["gamma_ph"].as_f64().unwrap() > 0.0);
    assert_eq!(report["frozen"]["g"], 18.0);
}

#[test]
fn fit_decay_rejects_bad_data() {
    let w = Work::new();
    let config = w.file("c.json", "{}");
    let uneven = w.file("uneven.csv", &curve_csv([(0.0, 1.0), (2.0, 2.0), (5.0, 1.0), (6.0, 1.0)].into_iter()));
    assert_eq!(code(&["fit-decay", s(&config), "--data", s(&uneven)]), 1);
    let empty = w.file("empty.csv", "time_ps,value\n");
    assert_eq!(code(&["fit-decay", s(&config), "--data", s(&empty)]), 1);
    let wrong_header = w.file("hdr.csv", "t,v\n0,1\n2,1\n4,1\n");
    assert_eq!(code(&["fit-decay", s(&config), "--data", s(&wrong_header)]), 1);
    let text = w.file("text.csv", "time_ps,value\n0,1\n2,abc\n4,1\n");
    let out = run(&["fit-decay", s(&config), "--data", s(&text)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn fit_spectrum_single_and_triplet() {
    let w = Work::new();
    let cavity = VoigtPeak { center: 1_313_950.0, fwhm_lorentz: 16.22, fwhm_gauss: 21.0, amplitude: 1000.0 };
    let single = w.file("single.csv", &spectrum_csv(&[cavity]));
    let r = ok_json(&["fit-spectrum", "--data", s(&single), "--mode", "single"]);
    let q = r["q_factor"].as_f64().unwrap();
    assert!((q - 81_000.0).abs() / 81_000.0 < 0.02, "{q}");

    let e0 = 1_313_950.0;
    let peak = |center, fwhm_lorentz, amplitude| VoigtPeak { center, fwhm_lorentz, fwhm_gauss: 21.0, amplitude };
    let triplet = w.file(
        "triplet.csv",
        &spectrum_csv(&[peak(e0 - 17.5, 8.0, 800.0), peak(e0, 16.22, 300.0), peak(e0 + 17.5, 8.0, 700.0)]),
    );
    let r = ok_json(&["fit-spectrum", "--data", s(&triplet), "--mode", "triplet", "--center-lorentz", "16.22"]);
    let g = r["g_uev"].as_f64().unwrap();
    assert!((g - 17.5).abs() < 0.5, "{g}");

    assert_eq!(code(&["fit-spectrum", "--data", s(&single), "--mode", "single", "--gauss-fwhm", "0"]), 1);
    assert_eq!(code(&["fit-spectrum", "--data", s(&single), "--mode", "quartet"]), 1);
}

#[test]
fn period_command() {
    let w = Work::new();
    let cosine = w.file(
        "cos.csv",
        &curve_csv((0..1000).map(|k| {
            let t = k as f64;
            (t, (-t / 400.0).exp() * (1.2 + (2.0 * std::f64::consts::PI * t / 100.0).cos()))
        })),
    );
    let p = ok_json(&["period", "--data", s(&cosine)])["period_ps"].as_f64().unwrap();
    assert!((p - 100.0).abs() <= 1.0, "{p}");
    let flat = w.file("flat.csv", &curve_csv((0..500).map(|k| (k as f64, 3.0))));
    assert_eq!(code(&["period", "--data", s(&flat)]), 2);
    assert_eq!(code(&["period", "--data", s(&cosine), "--band", "300,40"]), 1);
    assert_eq!(code(&["period", "--data", s(&cosine), "--band", "40"]), 1);
}

#[test]
fn synth_is_seeded() {
    let w = Work::new();
    let config = w.file("c.json", r#"{"A_i": 0.00014, "y0": 0.0000094}"#);
    let gen = |seed: &str, name: &str| {
        let out = w.path(name);
        ok_json(&["synth", s(&config), "--peak-counts", "10000", "--seed", seed, "--out", s(&out)]);
        std::fs::read(out).unwrap()
    };
    let (a, b, c) = (gen("7", "a.csv"), gen("7", "b.csv"), gen("8", "c.csv"));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let rows = read_rows(&w.path("a.csv"));
    let peak = rows.iter().map(|r| r[1]).fold(0.0, f64::max);
    assert!((peak - 10_000.0).abs() <= 3.0 * 100.0 + 1.0, "{peak}");
    assert!(rows.iter().all(|r| r[1] >= 0.0 && r[1].fract() == 0.0));
    assert_eq!(code(&["synth", s(&config), "--peak-counts", "0.5", "--out", s(&w.path("d.csv"))]), 1);
}

#[test]
fn sweep_detuning_follows_the_rabi_law() {
    let w = Work::new();
    let config = w.file("c.json", "{}");
    let out = w.path("sweep.csv");
    assert_eq!(
        code(&["sweep", s(&config), "--param", "delta", "--from=-60", "--to", "60", "--steps", "13", "--out", s(&out)]),
        0
    );
    let rows = read_rows(&out);
    assert_eq!(rows.len(), 13);
    for r in rows {
        let law = std::f64::consts::PI * HBAR / 18f64.hypot(r[0] / 2.0);
        assert!((r[1] - law).abs() / law < 0.05, "delta {}: {} vs {law}", r[0], r[1]);
    }
}

#[test]
fn sweep_dephasing_washes_out_oscillations() {
    let w = Work::new();
    let config = w.file("c.json", "{}");
    let out = w.path("sweep.csv");
    assert_eq!(
        code(&[
            "sweep",
            s(&config),
            "--param",
            "gamma_ph",
            "--from",
            "0",
            "--to",
            "12",
            "--steps",
            "5",
            "--out",
            s(&out)
        ]),
        0
    );
    // An empty cell means no second maximum is left: fully washed out.
    let contrast: Vec<f64> = read_rows(&out).iter().map(|r| if r[2].is_nan() { 0.0 } else { r[2] }).collect();
    assert!(contrast[0] > 0.0 && contrast[4] == 0.0, "{contrast:?}");
    assert!(contrast.windows(2).all(|p| p[1] < p[0] || p[0] == 0.0 && p[1] == 0.0), "{contrast:?}");
    assert_eq!(
        code(&["sweep", s(&config), "--param", "delta", "--from", "0", "--to", "5", "--steps", "1", "--out", s(&out)]),
        1
    );
    assert_eq!(
        code(&["sweep", s(&config), "--param", "kappa", "--from", "0", "--to", "5", "--steps", "3", "--out", s(&out)]),
        1
    );
}

#[test]
fn sweep_power_proxy_interpolates_the_table() {
    let w = Work::new();
    let config = w.file("c.json", r#"{"power_proxy_table": [[1, 2.0, 0.0001], [3, 6.0, 0.0005]]}"#);
    let out = w.path("sweep.csv");
    assert_eq!(
        code(&[
            "sweep",
            s(&config),
            "--param",
            "power-proxy",
            "--from",
            "1",
            "--to",
            "3",
            "--steps",
            "3",
            "--out",
            s(&out)
        ]),
        0
    );
    let rows = read_rows(&out);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![1.0, 2.0, 3.0]);
    assert!(rows.windows(2).all(|p| p[1][3] > p[0][3]), "{rows:?}");
    assert!(rows[1][2] < rows[0][2] && rows[2][2].is_nan(), "{rows:?}");
    assert_eq!(
        code(&[
            "sweep",
            s(&config),
            "--param",
            "power-proxy",
            "--from",
            "0",
            "--to",
            "3",
            "--steps",
            "3",
            "--out",
            s(&out)
        ]),
        1
    );
    let bare = w.file("bare.json", "{}");
    assert_eq!(
        code(&[
            "sweep",
            s(&bare),
            "--param",
            "power-proxy",
            "--from",
            "1",
            "--to",
            "3",
            "--steps",
            "3",
            "--out",
            s(&out)
        ]),
        1
    );
}
