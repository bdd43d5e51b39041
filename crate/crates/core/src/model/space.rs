// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Complex, DMatrix};

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex<f64>>;

/// Emitter levels of the three-level ladder: ground, radiative and upper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    G = 0,
    E = 1,
    U = 2,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::G, Level::E, Level::U];

    fn from_index(i: usize) -> Level {
        match i {
            0 => Level::G,
            1 => Level::E,
            _ => Level::U,
        }
    }
}

/// Emitter ⊗ truncated Fock space.
///
/// Basis ordering is emitter-major, photon-minor:
/// `index(s, n) = s·(n_max+1) + n`, so for `n_max = 1` the order is
/// (G0, G1, E0, E1, U0, U1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpace {
    n_max: usize,
}

impl Default for HilbertSpace {
    fn default() -> Self {
        Self { n_max: 1 }
    }
}

impl HilbertSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidParameter("photon truncation n_max must be >= 1".into()));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn photon_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        3 * self.photon_dim()
    }

    pub fn index(&self, level: Level, n: usize) -> usize {
        debug_assert!(n <= self.n_max);
        level as usize * self.photon_dim() + n
    }

    pub fn decompose(&self, index: usize) -> (Level, usize) {
        (Level::from_index(index / self.photon_dim()), index % self.photon_dim())
    }

    pub fn zeros(&self) -> CMatrix {
        CMatrix::zeros(self.dim(), self.dim())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// Photon annihilation `a`.
    A,
    /// Photon creation `a†`.
    ADagger,
    /// Photon number `a†a`.
    NPhoton,
    /// Emitter projector/transition `|i⟩⟨j| ⊗ 1`.
    Sigma(Level, Level),
    /// `|E⟩⟨E| − |G⟩⟨G|`, zero on U.
    SigmaZ,
}

pub fn operator_matrix(kind: OperatorKind, space: &HilbertSpace) -> CMatrix {
    let mut m = space.zeros();
    let one = Complex::new(1.0, 0.0);
    match kind {
        OperatorKind::A | OperatorKind::ADagger => {
            for s in Level::ALL {
                for n in 1..=space.n_max() {
                    let amp = Complex::new((n as f64).sqrt(), 0.0);
                    let (lower, upper) = (space.index(s, n - 1), space.index(s, n));
                    if kind == OperatorKind::A {
                        m[(lower, upper)] = amp;
                    } else {
                        m[(upper, lower)] = amp;
                    }
                }
            }
        }
        OperatorKind::NPhoton => {
            for i in 0..space.dim() {
                m[(i, i)] = Complex::new(space.decompose(i).1 as f64, 0.0);
            }
        }
        OperatorKind::Sigma(i, j) => {
            for n in 0..=space.n_max() {
                m[(space.index(i, n), space.index(j, n))] = one;
            }
        }
        OperatorKind::SigmaZ => {
            for n in 0..=space.n_max() {
                m[(space.index(Level::E, n), space.index(Level::E, n))] = one;
                m[(space.index(Level::G, n), space.index(Level::G, n))] = -one;
            }
        }
    }
    m
}
