//! Pauli operators and two-qubit Pauli decomposition.

use crate::error::{Error, Result};
use crate::qlin::matrix::{c, CMatrix, HermitianMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// The three non-trivial Pauli operators in `x, y, z` order.
pub const AXES: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        let (a, b, cc, d) = match self {
            Pauli::I => (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
            Pauli::X => (c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
            Pauli::Y => (c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
            Pauli::Z => (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
        };
        CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
    }

    /// `self ⊗ other` as a 4x4 matrix.
    pub fn pair(self, other: Pauli) -> CMatrix {
        self.matrix().kronecker(&other.matrix())
    }
}

/// `n · σ` for a real 3-vector `n`.
pub fn bloch_operator(n: &[f64; 3]) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    for (k, p) in AXES.iter().enumerate() {
        m += p.matrix().scale(n[k]);
    }
    m
}

/// Two-qubit Pauli expansion
/// `M = (t/4) I + 1/4 Σ_i (a_i σ_i⊗I + b_i I⊗σ_i + Σ_j c_ij σ_i⊗σ_j)`.
///
/// For a density matrix `t = 1` and the coefficients are expectation values;
/// for a deviation matrix `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliCoefficients {
    pub trace: f64,
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [[f64; 3]; 3],
}

impl PauliCoefficients {
    /// Density-matrix coefficients of `1/4 (I + Σ c_i σ_i⊗σ_i)`.
    pub fn bell_diagonal(cd: [f64; 3]) -> Self {
        let mut cm = [[0.0; 3]; 3];
        for i in 0..3 {
            cm[i][i] = cd[i];
        }
        Self {
            trace: 1.0,
            a: [0.0; 3],
            b: [0.0; 3],
            c: cm,
        }
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        let mut m = CMatrix::identity(4, 4).scale(self.trace);
        for (i, pi) in AXES.iter().enumerate() {
            m += pi.pair(Pauli::I).scale(self.a[i]);
            m += Pauli::I.pair(*pi).scale(self.b[i]);
            for (j, pj) in AXES.iter().enumerate() {
                m += pi.pair(*pj).scale(self.c[i][j]);
            }
        }
        HermitianMatrix::symmetrized(m.scale(0.25))
    }

    /// True when the two-body part is diagonal within `tol`.
    pub fn has_diagonal_correlations(&self, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.c[i][j].abs() <= tol))
    }

    /// True when both local Bloch vectors vanish and the correlation matrix
    /// is diagonal, all within `tol`.
    pub fn is_bell_diagonal(&self, tol: f64) -> bool {
        self.a.iter().chain(self.b.iter()).all(|x| x.abs() <= tol) && self.has_diagonal_correlations(tol)
    }

    pub fn correlation_diagonal(&self) -> [f64; 3] {
        [self.c[0][0], self.c[1][1], self.c[2][2]]
    }
}

/// Decomposes a 4x4 hermitian matrix into Pauli coefficients.
pub fn pauli_decompose(m: &HermitianMatrix) -> Result<PauliCoefficients> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: m.dim(),
        });
    }
    let mut out = PauliCoefficients {
        trace: m.trace(),
        a: [0.0; 3],
        b: [0.0; 3],
        c: [[0.0; 3]; 3],
    };
    for (i, pi) in AXES.iter().enumerate() {
        out.a[i] = m.expectation(&pi.pair(Pauli::I));
        out.b[i] = m.expectation(&Pauli::I.pair(*pi));
        for (j, pj) in AXES.iter().enumerate() {
            out.c[i][j] = m.expectation(&pi.pair(*pj));
        }
    }
    Ok(out)
}
