//! Seeded random streams and random-state samplers.
//!
//! Every stream is a ChaCha8 generator keyed by the run seed and selected by
//! a stream number, so independent consumers draw from disjoint,
//! reproducible sequences: `stream(seed, k)` depends only on `(seed, k)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};

use crate::qlin::{c, CMatrix, DeviationState, HermitianMatrix, PauliCoefficients, UnitaryMatrix};

/// Stream numbers used by the experiment runner.
pub mod streams {
    pub const WITNESS_COEFFICIENTS: u64 = 1;
    pub const RANDOM_STATES: u64 = 2;
}

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniformly distributed unit 3-vector.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let v: [f64; 3] = UnitSphere.sample(rng);
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-random normalized vector of length `dim`.
pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// Random hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    HermitianMatrix::new((&g + g.adjoint()).scale(0.5)).expect("hermitian by construction")
}

/// Random traceless hermitian matrix with unit Frobenius norm.
pub fn traceless_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianMatrix {
    let h = hermitian(rng, dim);
    let shift = h.trace() / dim as f64;
    let t = &h - &HermitianMatrix::identity(dim).scale(shift);
    let norm = t.trace_of_square().sqrt();
    t.scale(1.0 / norm)
}

/// Haar-random single-qubit unitary (up to a global phase).
pub fn qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> UnitaryMatrix {
    let q: Vec<f64> = (0..4).map(|_| StandardNormal.sample(rng)).collect();
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (a, b, cc, d) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    let m = CMatrix::from_row_slice(2, 2, &[c(a, b), c(cc, d), c(-cc, d), c(a, -b)]);
    UnitaryMatrix::new(m).expect("SU(2) by construction")
}

/// Physical Bell-diagonal correlation vector drawn uniformly from the
/// tetrahedron `|c_i| <= 1` with non-negative eigenvalues.
pub fn bell_diagonal_coefficients<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let cd = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if bell_diagonal_eigenvalues(&cd).iter().all(|&l| l >= 0.0) {
            return cd;
        }
    }
}

/// Eigenvalues of `1/4 (I + Σ c_i σ_i⊗σ_i)`.
pub fn bell_diagonal_eigenvalues(cd: &[f64; 3]) -> [f64; 4] {
    let [c1, c2, c3] = *cd;
    [
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ]
}

/// Random density matrix of the class
/// `1/4 (I + Σ a_i σ_i⊗I + b_i I⊗σ_i + c_i σ_i⊗σ_i)`, shrunk towards `I/4`
/// until positive.
pub fn local_diagonal_state<R: Rng + ?Sized>(rng: &mut R) -> HermitianMatrix {
    let mut p = PauliCoefficients {
        trace: 1.0,
        a: [0.0; 3],
        b: [0.0; 3],
        c: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        p.a[i] = rng.random_range(-1.0..1.0);
        p.b[i] = rng.random_range(-1.0..1.0);
        p.c[i][i] = rng.random_range(-1.0..1.0);
    }
    loop {
        let rho = p.reconstruct();
        if rho.min_eigenvalue() >= 0.0 {
            return rho;
        }
        for i in 0..3 {
            p.a[i] *= 0.8;
            p.b[i] *= 0.8;
            p.c[i][i] *= 0.8;
        }
    }
}

/// Random classically correlated state `Σ p_ij |i><i| ⊗ |j><j|` in the
/// computational basis.
pub fn classical_state<R: Rng + ?Sized>(rng: &mut R) -> HermitianMatrix {
    let w: Vec<f64> = (0..4)
        .map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln())
        .collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    HermitianMatrix::from_real_diagonal(&p).expect("dimension 4")
}

/// Random two-qubit deviation state (unit Frobenius norm) that is positive
/// at `epsilon`.
///
/// # Panics
/// If `epsilon > 0.8`; no unit-norm traceless deviation is positive beyond
/// `√3/2`.
pub fn deviation_state<R: Rng + ?Sized>(rng: &mut R, epsilon: f64) -> DeviationState {
    assert!(epsilon <= 0.8, "epsilon too large for unit-norm deviations");
    loop {
        let d = traceless_hermitian(rng, 4);
        if let Ok(s) = DeviationState::new(epsilon, d) {
            return s;
        }
    }
}
