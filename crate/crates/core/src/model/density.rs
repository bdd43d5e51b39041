// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Complex;

use super::space::{operator_matrix, CMatrix, HilbertSpace, Level, OperatorKind};
use crate::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;

/// Hermitian, unit-trace state over a [`HilbertSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// `|s, n⟩⟨s, n|`.
    pub fn pure(space: HilbertSpace, level: Level, n: usize) -> Result<Self> {
        if n > space.n_max() {
            return Err(Error::InvalidParameter(format!("photon number {n} exceeds truncation {}", space.n_max())));
        }
        let mut matrix = space.zeros();
        let i = space.index(level, n);
        matrix[(i, i)] = Complex::new(1.0, 0.0);
        Ok(Self { space, matrix })
    }

    /// `|G, 0⟩⟨G, 0|`, the state before the pump pulse.
    pub fn ground(space: HilbertSpace) -> Self {
        Self::pure(space, Level::G, 0).expect("n = 0 always in range")
    }

    /// Validates Hermiticity and unit trace.
    pub fn from_matrix(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: matrix.nrows().max(matrix.ncols()) });
        }
        let herm = hermiticity_error(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidParameter(format!("density matrix not Hermitian ({herm:e})")));
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidParameter(format!("density matrix trace {tr} != 1")));
        }
        Ok(Self { space, matrix })
    }

    pub(crate) fn from_matrix_unchecked(space: HilbertSpace, matrix: CMatrix) -> Self {
        Self { space, matrix }
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.matrix)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let h = hermitian_part(&self.matrix);
        h.symmetric_eigenvalues().min()
    }

    /// `Re tr(ρ O)` for a Hermitian observable.
    pub fn expectation(&self, observable: &CMatrix) -> Result<f64> {
        if observable.nrows() != self.space.dim() || observable.ncols() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: observable.nrows().max(observable.ncols()),
            });
        }
        if hermiticity_error(observable) > HERMITIAN_TOL {
            return Err(Error::InvalidParameter("observable is not Hermitian".into()));
        }
        let value = trace_of_product(&self.matrix, observable);
        debug_assert!(value.im.abs() < 1e-10, "imaginary expectation residue {}", value.im);
        Ok(value.re)
    }

    /// ⟨a†a⟩ from the diagonal.
    pub fn photon_number(&self) -> f64 {
        (0..self.space.dim()).map(|i| self.space.decompose(i).1 as f64 * self.matrix[(i, i)].re).sum()
    }

    /// Emitter populations (G, E, U), summed over photon number.
    pub fn populations(&self) -> [f64; 3] {
        let mut p = [0.0; 3];
        for i in 0..self.space.dim() {
            p[self.space.decompose(i).0 as usize] += self.matrix[(i, i)].re;
        }
        p
    }

    pub fn photon_number_operator(&self) -> CMatrix {
        operator_matrix(OperatorKind::NPhoton, &self.space)
    }
}

pub(crate) fn hermiticity_error(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex<f64> {
    let n = a.nrows();
    let mut acc = Complex::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}
