// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::signal::DecayCurve;
use crate::spectral::Spectrum;
use crate::{Error, Result};

pub const CURVE_HEADER: [&str; 2] = ["time_ps", "value"];
pub const SPECTRUM_HEADER: [&str; 2] = ["energy_uev", "intensity"];

/// Rounds to 9 significant digits so that printed values are stable.
pub fn round9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

fn read_pairs(path: &Path, header: [&str; 2]) -> Result<(Vec<f64>, Vec<f64>)> {
    let bad = |msg: String| Error::InvalidParameter(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path).map_err(|e| bad(e.to_string()))?;
    let found = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if found.iter().map(str::trim).collect::<Vec<_>>() != header {
        return Err(bad(format!(
            "line 1: expected header `{}`, found `{}`",
            header.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(bad(format!("line {line}: expected 2 fields, found {}", record.len())));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(format!("line {line}: `{s}` is not a finite number")))
        };
        xs.push(parse(&record[0])?);
        ys.push(parse(&record[1])?);
    }
    if xs.is_empty() {
        return Err(bad("no data rows".into()));
    }
    Ok((xs, ys))
}

pub fn read_curve(path: &Path) -> Result<DecayCurve> {
    let (t, v) = read_pairs(path, CURVE_HEADER)?;
    DecayCurve::new(t, v).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

pub fn read_spectrum(path: &Path) -> Result<Spectrum> {
    let (e, i) = read_pairs(path, SPECTRUM_HEADER)?;
    Spectrum::new(e, i).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

/// Two-column CSV with LF line endings.
pub fn format_table(header: &[&str], rows: impl IntoIterator<Item = Vec<Option<f64>>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> =
            row.into_iter().map(|v| v.map(|x| round9(x).to_string()).unwrap_or_default()).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn format_curve(curve: &DecayCurve) -> String {
    format_table(&CURVE_HEADER, curve.times().iter().zip(curve.values()).map(|(&t, &v)| vec![Some(t), Some(v)]))
}

/// Pretty JSON with every float rounded; non-finite values become `null`.
pub fn format_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&round_value(v)).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            n.as_f64().and_then(|x| Number::from_f64(round9(x))).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn rounding() {
        assert_eq!(round9(0.1 + 0.2), 0.3);
        assert_eq!(round9(1234567891234.0), 1234567890000.0);
        assert_eq!(round9(-2.0e-7 / 3.0), -6.66666667e-8);
    }

    #[test]
    fn table_format() {
        let s = format_table(&["a", "b"], vec![vec![Some(1.0), None], vec![Some(0.1 + 0.2), Some(-2.5)]]);
        assert_eq!(s, "a,b\n1,\n0.3,-2.5\n");
    }

    #[test]
    fn json_rounds_and_nulls() {
        let s = format_json(&serde_json::json!({"b": 1.0 / 3.0, "a": f64::NAN, "n": 3})).unwrap();
        assert_eq!(s, "{\n  \"a\": null,\n  \"b\": 0.333333333,\n  \"n\": 3\n}\n");
    }

    #[test]
    fn curve_parsing_diagnostics() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, body: &str| {
            let p = dir.path().join(name);
            std::fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
            p
        };
        let good = write("good.csv", "time_ps,value\n0,1\n2,3\n4,5\n");
        assert_eq!(read_curve(&good).unwrap().values(), &[1.0, 3.0, 5.0]);
        let err = read_curve(&write("bad.csv", "time_ps,value\n0,1\n2,x\n")).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        assert!(read_curve(&write("empty.csv", "")).is_err());
        assert!(read_curve(&write("hdr.csv", "t,v\n0,1\n1,2\n")).is_err());
        assert!(read_curve(&write("gap.csv", "time_ps,value\n0,1\n2,1\n5,1\n")).is_err());
        assert!(read_spectrum(&write("spec.csv", "energy_uev,intensity\n1,0\n2,1\n3,0\n")).is_ok());
    }
}
