// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Deserialize;

use crate::dynamics::TimeGrid;
use crate::fit::{DecayBounds, DecayFitParams, FrozenParams, Weighting};
use crate::model::{HilbertSpace, SystemParams};
use crate::signal::{Detector, SlowComponent};
use crate::{Error, Result};

/// Flat run configuration. Every key carries its unit in the name.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub g_uev: f64,
    pub kappa_uev: f64,
    pub gamma_uev: f64,
    pub gamma_r_uev: f64,
    pub gamma_ph_uev: f64,
    pub delta_uev: f64,
    pub p0: f64,
    pub t0_ps: f64,
    pub tau_fwhm_ps: f64,
    pub t_end_ps: f64,
    pub dt_ps: f64,
    pub out_dt_ps: f64,
    pub irf_fwhm_ps: f64,
    #[serde(rename = "slow_T_ps")]
    pub slow_t_ps: f64,
    #[serde(rename = "A_i")]
    pub a_i: f64,
    pub y0: f64,
    pub scale: f64,
    pub bounds: BoundsConfig,
    pub weights: Weighting,
    pub max_iter: usize,
    pub n_max: usize,
    /// Rows of `[power, gamma_ph_uev, A_i]`, ascending in power.
    pub power_proxy_table: Vec<[f64; 3]>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = SystemParams::default();
        Self {
            g_uev: p.g,
            kappa_uev: p.kappa,
            gamma_uev: p.gamma,
            gamma_r_uev: p.gamma_r,
            gamma_ph_uev: p.gamma_ph,
            delta_uev: p.delta,
            p0: p.p0,
            t0_ps: p.t0,
            tau_fwhm_ps: p.tau_fwhm,
            t_end_ps: 1500.0,
            dt_ps: 0.02,
            out_dt_ps: 2.0,
            irf_fwhm_ps: 25.6,
            slow_t_ps: 360.0,
            a_i: 0.0,
            y0: 0.0,
            scale: 1.0,
            bounds: BoundsConfig::default(),
            weights: Weighting::Uniform,
            max_iter: 200,
            n_max: 1,
            power_proxy_table: Vec::new(),
        }
    }
}

/// Per-parameter `[lower, upper]` overrides; `null` leaves a side open.
#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsConfig {
    pub delta_uev: Option<[Option<f64>; 2]>,
    pub gamma_r_uev: Option<[Option<f64>; 2]>,
    pub gamma_ph_uev: Option<[Option<f64>; 2]>,
    #[serde(rename = "A_i")]
    pub a_i: Option<[Option<f64>; 2]>,
    pub y0: Option<[Option<f64>; 2]>,
    pub scale: Option<[Option<f64>; 2]>,
    pub t0_shift_ps: Option<[Option<f64>; 2]>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::InvalidParameter(m) => Error::InvalidParameter(format!("config {}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.system().validate()?;
        self.grid()?;
        self.space()?;
        self.detector().slow.validate()?;
        if !(self.irf_fwhm_ps > 0.0 && self.irf_fwhm_ps.is_finite()) {
            return Err(Error::InvalidParameter(format!("irf_fwhm_ps must be > 0, got {}", self.irf_fwhm_ps)));
        }
        if !(self.scale >= 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale must be >= 0, got {}", self.scale)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        self.decay_bounds()?;
        if self.power_proxy_table.windows(2).any(|w| !(w[1][0] > w[0][0])) {
            return Err(Error::InvalidParameter("power_proxy_table must be strictly ascending in power".into()));
        }
        Ok(())
    }

    pub fn system(&self) -> SystemParams {
        SystemParams {
            g: self.g_uev,
            kappa: self.kappa_uev,
            gamma: self.gamma_uev,
            gamma_r: self.gamma_r_uev,
            gamma_ph: self.gamma_ph_uev,
            delta: self.delta_uev,
            p0: self.p0,
            t0: self.t0_ps,
            tau_fwhm: self.tau_fwhm_ps,
        }
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(0.0, self.t_end_ps, self.dt_ps, self.out_dt_ps)
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        HilbertSpace::new(self.n_max)
    }

    pub fn detector(&self) -> Detector {
        Detector {
            scale: self.scale,
            slow: SlowComponent {
                amplitude: self.a_i,
                decay_ps: self.slow_t_ps,
                offset: self.y0,
                onset_ps: self.t0_ps,
            },
            irf_fwhm_ps: self.irf_fwhm_ps,
        }
    }

    pub fn frozen(&self) -> FrozenParams {
        FrozenParams {
            g: self.g_uev,
            kappa: self.kappa_uev,
            gamma: self.gamma_uev,
            slow_decay_ps: self.slow_t_ps,
            irf_fwhm_ps: self.irf_fwhm_ps,
            p0: self.p0,
            tau_fwhm_ps: self.tau_fwhm_ps,
            t0_ps: self.t0_ps,
            n_max: self.n_max,
            dt_internal_ps: self.dt_ps,
        }
    }

    /// The configured model expressed as decay-fit parameters.
    pub fn decay_params(&self) -> DecayFitParams {
        DecayFitParams {
            delta: self.delta_uev,
            gamma_r: self.gamma_r_uev,
            gamma_ph: self.gamma_ph_uev,
            a_i: self.a_i,
            y0: self.y0,
            scale: self.scale,
            t0_shift: 0.0,
        }
    }

    pub fn decay_bounds(&self) -> Result<DecayBounds> {
        let mut lower = DecayBounds::default().lower.to_vec();
        let mut upper = DecayBounds::default().upper.to_vec();
        let b = &self.bounds;
        let overrides = [b.delta_uev, b.gamma_r_uev, b.gamma_ph_uev, b.a_i, b.y0, b.scale, b.t0_shift_ps];
        for (j, o) in overrides.iter().enumerate() {
            if let Some([lo, hi]) = o {
                lower[j] = lo.unwrap_or(f64::NEG_INFINITY);
                upper[j] = hi.unwrap_or(f64::INFINITY);
                if !(lower[j] < upper[j]) {
                    return Err(Error::InvalidParameter(format!(
                        "bounds for {} are empty: [{}, {}]",
                        DecayFitParams::NAMES[j],
                        lower[j],
                        upper[j]
                    )));
                }
            }
        }
        Ok(DecayBounds { lower: DecayFitParams::from_slice(&lower)?, upper: DecayFitParams::from_slice(&upper)? })
    }

    /// `(gamma_ph, A_i)` at `power` by linear interpolation in the table.
    pub fn power_proxy(&self, power: f64) -> Result<(f64, f64)> {
        let t = &self.power_proxy_table;
        if t.len() < 2 {
            return Err(Error::InvalidParameter("power-proxy sweep needs power_proxy_table with >= 2 rows".into()));
        }
        if !(power >= t[0][0] && power <= t[t.len() - 1][0]) {
            return Err(Error::InvalidParameter(format!(
                "power {power} outside the table range [{}, {}]",
                t[0][0],
                t[t.len() - 1][0]
            )));
        }
        let k = t.partition_point(|row| row[0] <= power).clamp(1, t.len() - 1);
        let (a, b) = (t[k - 1], t[k]);
        let w = (power - a[0]) / (b[0] - a[0]);
        Ok((a[1] + w * (b[1] - a[1]), a[2] + w * (b[2] - a[2])))
    }
}
