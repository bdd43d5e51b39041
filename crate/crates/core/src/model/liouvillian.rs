// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Complex;

use super::density::DensityMatrix;
use super::params::SystemParams;
use super::space::{operator_matrix, CMatrix, HilbertSpace, Level, OperatorKind};
use super::units::UnitSystem;
use crate::{Error, Result};

/// Rotating-frame Hamiltonian `δ a†a + g(σ_GE a† + h.c.)` in μeV.
pub fn hamiltonian(params: &SystemParams, space: &HilbertSpace) -> CMatrix {
    let n = operator_matrix(OperatorKind::NPhoton, space);
    let lower = operator_matrix(OperatorKind::Sigma(Level::G, Level::E), space);
    let ad = operator_matrix(OperatorKind::ADagger, space);
    let jump = &lower * &ad;
    let coupling = &jump + jump.adjoint();
    n.scale(params.delta) + coupling.scale(params.g)
}

/// One Lindblad channel `D[√rate L]`, with `L†` and `L†L` cached.
#[derive(Debug, Clone)]
struct Channel {
    rate: f64,
    op: CMatrix,
    op_dag: CMatrix,
    op_dag_op: CMatrix,
}

impl Channel {
    fn new(rate: f64, op: CMatrix) -> Self {
        let op_dag = op.adjoint();
        let op_dag_op = &op_dag * &op;
        Self { rate, op, op_dag, op_dag_op }
    }

    /// out += rate·(LρL† − ½{L†L, ρ})
    fn accumulate(&self, rho: &CMatrix, rate: f64, out: &mut CMatrix) {
        if rate == 0.0 {
            return;
        }
        let jump = &self.op * rho * &self.op_dag;
        let anti = &self.op_dag_op * rho + rho * &self.op_dag_op;
        *out += (jump - anti.scale(0.5)).scale(rate);
    }
}

/// Generator of the master equation for fixed [`SystemParams`]; the pump
/// strength is supplied per evaluation since it is time dependent.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    space: HilbertSpace,
    units: UnitSystem,
    hamiltonian: CMatrix,
    channels: Vec<Channel>,
    pump: Channel,
}

impl Liouvillian {
    pub fn new(params: &SystemParams, space: HilbertSpace) -> Result<Self> {
        params.validate()?;
        let units = UnitSystem::default();
        let op = |kind| operator_matrix(kind, &space);
        let channels = vec![
            Channel::new(units.rate(params.kappa), op(OperatorKind::A)),
            Channel::new(units.rate(params.gamma), op(OperatorKind::Sigma(Level::G, Level::E))),
            Channel::new(units.rate(params.gamma_r), op(OperatorKind::Sigma(Level::E, Level::U))),
            // (γ_ph/2)(σz ρ σz − ½{σz², ρ}): the trace-preserving dephasing form.
            Channel::new(units.rate(params.gamma_ph) / 2.0, op(OperatorKind::SigmaZ)),
        ];
        Ok(Self {
            space,
            units,
            hamiltonian: hamiltonian(params, &space),
            channels,
            pump: Channel::new(1.0, op(OperatorKind::Sigma(Level::U, Level::G))),
        })
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    /// dρ/dt in 1/ps; `pump_now` is the instantaneous G → U rate in 1/ps.
    pub fn apply(&self, rho: &CMatrix, pump_now: f64) -> CMatrix {
        let mut out = self.apply_fixed(rho);
        self.pump.accumulate(rho, pump_now, &mut out);
        out
    }

    /// Everything except the pump channel.
    pub fn apply_fixed(&self, rho: &CMatrix) -> CMatrix {
        let i_over_hbar = Complex::new(0.0, 1.0 / self.units.hbar);
        let mut out = (rho * &self.hamiltonian - &self.hamiltonian * rho) * i_over_hbar;
        for ch in &self.channels {
            ch.accumulate(rho, ch.rate, &mut out);
        }
        out
    }

    /// Unit-rate pump dissipator `D[σ_UG]ρ`.
    pub fn apply_pump(&self, rho: &CMatrix) -> CMatrix {
        let mut out = self.space.zeros();
        self.pump.accumulate(rho, 1.0, &mut out);
        out
    }

    /// Matrix of `apply_fixed` acting on column-major `vec(ρ)`.
    pub fn fixed_superoperator(&self) -> CMatrix {
        self.superoperator_of(|m| self.apply_fixed(m))
    }

    /// Matrix of `apply_pump` acting on column-major `vec(ρ)`.
    pub fn pump_superoperator(&self) -> CMatrix {
        self.superoperator_of(|m| self.apply_pump(m))
    }

    fn superoperator_of(&self, f: impl Fn(&CMatrix) -> CMatrix) -> CMatrix {
        let d = self.space.dim();
        let mut sup = CMatrix::zeros(d * d, d * d);
        let mut basis = self.space.zeros();
        for col in 0..d * d {
            let (i, j) = (col % d, col / d);
            basis[(i, j)] = Complex::new(1.0, 0.0);
            let image = f(&basis);
            sup.column_mut(col).copy_from_slice(image.as_slice());
            basis[(i, j)] = Complex::new(0.0, 0.0);
        }
        sup
    }
}

/// dρ/dt for a single state.
pub fn liouvillian_apply(rho: &DensityMatrix, params: &SystemParams, pump_now: f64) -> Result<CMatrix> {
    if !(pump_now >= 0.0 && pump_now.is_finite()) {
        return Err(Error::InvalidParameter(format!("pump rate must be >= 0, got {pump_now}")));
    }
    let l = Liouvillian::new(params, rho.space())?;
    if rho.matrix().nrows() != l.space().dim() {
        return Err(Error::DimensionMismatch { expected: l.space().dim(), found: rho.matrix().nrows() });
    }
    Ok(l.apply(rho.matrix(), pump_now))
}
