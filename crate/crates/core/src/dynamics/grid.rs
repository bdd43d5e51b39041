// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use crate::{Error, Result};

/// Integration and sampling grid, ps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    dt_internal: f64,
    dt_output: f64,
    steps_per_output: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, dt_internal: f64, dt_output: f64) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
            return Err(Error::InvalidGrid(format!("need t_end > t_start, got [{t_start}, {t_end}]")));
        }
        if !(dt_internal > 0.0 && dt_internal <= dt_output * (1.0 + 1e-12)) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < dt_internal <= dt_output, got {dt_internal} and {dt_output}"
            )));
        }
        let ratio = dt_output / dt_internal;
        let steps = ratio.round();
        if (steps * dt_internal - dt_output).abs() > 1e-9 * dt_output.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "dt_output {dt_output} is not an integer multiple of dt_internal {dt_internal}"
            )));
        }
        Ok(Self { t_start, t_end, dt_internal, dt_output, steps_per_output: steps as usize })
    }

    /// Output grid matching an existing uniformly spaced sample set.
    pub fn matching(times: &[f64], dt_internal: f64) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::InvalidGrid("need at least two sample times".into()));
        }
        let dt_output = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
        Self::new(times[0], times[times.len() - 1], dt_internal, dt_output)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dt_output(&self) -> f64 {
        self.dt_output
    }

    /// Nominal internal step.
    pub fn dt_internal(&self) -> f64 {
        self.dt_internal
    }

    /// Step actually taken: `dt_output / steps_per_output`.
    pub fn step(&self) -> f64 {
        self.dt_output / self.steps_per_output as f64
    }

    pub fn steps_per_output(&self) -> usize {
        self.steps_per_output
    }

    pub fn n_outputs(&self) -> usize {
        ((self.t_end - self.t_start) / self.dt_output + 1e-9).floor() as usize + 1
    }

    pub fn output_time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt_output
    }

    pub fn output_times(&self) -> Vec<f64> {
        (0..self.n_outputs()).map(|k| self.output_time(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let g = TimeGrid::new(0.0, 1500.0, 0.02, 2.0).unwrap();
        assert_eq!(g.steps_per_output(), 100);
        assert_eq!(g.n_outputs(), 751);
        assert_eq!(g.output_time(750), 1500.0);
        assert!(TimeGrid::new(0.0, 10.0, 0.03, 2.0).is_err());
        assert!(TimeGrid::new(0.0, 10.0, 3.0, 2.0).is_err());
        assert!(TimeGrid::new(5.0, 5.0, 0.01, 1.0).is_err());
        assert!(TimeGrid::new(0.0, 10.0, 0.0, 1.0).is_err());
        let m = TimeGrid::matching(&[0.0, 2.0, 4.0, 6.0], 0.02).unwrap();
        assert_eq!(m.output_times(), vec![0.0, 2.0, 4.0, 6.0]);
    }
}
