//! Deviation-matrix states `ρ = I/2^n + ε Δρ` and two-qubit structure checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlin::matrix::{c, CMatrix, HermitianMatrix, UnitaryMatrix, PSD_TOL};
use crate::qlin::pauli::PauliCoefficients;

/// Thermal polarization scale of a room-temperature liquid-state sample.
pub const DEFAULT_EPSILON: f64 = 1e-5;

/// Tolerance on `Tr Δρ = 0`.
pub const TRACE_TOL: f64 = 1e-12;

/// Subsystem of a two-qubit register. `A` is the left tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
}

fn require_dim4(m: &HermitianMatrix) -> Result<()> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: m.dim(),
        });
    }
    Ok(())
}

/// Partial trace of a two-qubit operator, keeping `keep`.
pub fn partial_trace(m: &HermitianMatrix, keep: Party) -> Result<HermitianMatrix> {
    require_dim4(m)?;
    let mm = m.as_matrix();
    let mut out = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                Party::A => mm[(2 * i, 2 * j)] + mm[(2 * i + 1, 2 * j + 1)],
                Party::B => mm[(i, j)] + mm[(2 + i, 2 + j)],
            };
        }
    }
    Ok(HermitianMatrix::symmetrized(out))
}

/// Transpose of the `B` factor of a two-qubit operator.
pub fn partial_transpose(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    require_dim4(m)?;
    let mm = m.as_matrix();
    let out = CMatrix::from_fn(4, 4, |r, col| {
        let (i, k) = (r / 2, r % 2);
        let (j, l) = (col / 2, col % 2);
        mm[(2 * i + l, 2 * j + k)]
    });
    Ok(HermitianMatrix::symmetrized(out))
}

/// High-temperature state `I/2^n + ε Δρ` with traceless `Δρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationState {
    n_qubits: usize,
    epsilon: f64,
    delta: HermitianMatrix,
}

impl DeviationState {
    /// Checks `Tr Δρ = 0` and that the full density matrix is positive.
    pub fn new(epsilon: f64, delta: HermitianMatrix) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::BadEpsilon(epsilon));
        }
        let tr = delta.trace();
        if !(tr.abs() <= TRACE_TOL) {
            return Err(Error::BadTrace {
                trace: tr,
                expected: 0.0,
            });
        }
        let state = Self {
            n_qubits: delta.dim().trailing_zeros() as usize,
            epsilon,
            delta,
        };
        let min = state.full_density().min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(state)
    }

    /// Skips the positivity check. Used where positivity is guaranteed by
    /// construction and the eigen-decomposition would dominate the cost.
    pub(crate) fn new_unchecked(epsilon: f64, delta: HermitianMatrix) -> Self {
        Self {
            n_qubits: delta.dim().trailing_zeros() as usize,
            epsilon,
            delta,
        }
    }

    /// Zero deviation: the maximally mixed state.
    pub fn maximally_mixed(n_qubits: usize, epsilon: f64) -> Result<Self> {
        Self::new(epsilon, HermitianMatrix::zeros(1 << n_qubits))
    }

    /// Extracts `Δρ = (ρ - I/d)/ε` from a full density matrix.
    pub fn from_density(rho: &HermitianMatrix, epsilon: f64) -> Result<Self> {
        let d = rho.dim();
        let shifted = rho - &HermitianMatrix::identity(d).scale(1.0 / d as f64);
        Self::new(epsilon, shifted.scale(1.0 / epsilon))
    }

    /// Deviation `1/4 Σ c_i σ_i⊗σ_i` of a Bell-diagonal state.
    pub fn bell_diagonal(cd: [f64; 3], epsilon: f64) -> Result<Self> {
        let mut p = PauliCoefficients::bell_diagonal(cd);
        p.trace = 0.0;
        Self::new(epsilon, p.reconstruct())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.delta.dim()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> &HermitianMatrix {
        &self.delta
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(epsilon, self.delta.clone())
    }

    /// `I/2^n + ε Δρ`.
    pub fn full_density(&self) -> HermitianMatrix {
        let d = self.dim();
        &HermitianMatrix::identity(d).scale(1.0 / d as f64) + &self.delta.scale(self.epsilon)
    }

    /// `Δρ -> U Δρ U^†`; the identity part is invariant so ε is unchanged.
    pub fn apply_unitary(&self, u: &UnitaryMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.dim(),
            });
        }
        Ok(Self::new_unchecked(self.epsilon, self.delta.conjugate_by(u)))
    }
}

/// Pseudo-pure encoding `(1-ε) I/4 + ε |ψ><ψ|` of a normalized two-qubit vector.
pub fn pseudo_pure(psi: &[Complex64], epsilon: f64) -> Result<DeviationState> {
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: psi.len(),
        });
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= 1e-12) {
        return Err(Error::NotNormalized { norm });
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::BadEpsilon(epsilon));
    }
    let delta = &HermitianMatrix::outer(psi)? - &HermitianMatrix::identity(4).scale(0.25);
    Ok(DeviationState::new_unchecked(epsilon, delta))
}

/// Computational basis vector `|q_A q_B>` of a two-qubit register.
pub fn basis_state(q_a: usize, q_b: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 4];
    v[2 * q_a + q_b] = c(1.0, 0.0);
    v
}

/// Largest polarization `1/(1 + 2^(2n-1))` below which an `n`-qubit
/// pseudo-pure state cannot be entangled.
///
/// # Panics
/// If `n == 0`.
pub fn entanglement_epsilon_bound(n: u32) -> f64 {
    assert!(n >= 1, "need at least one qubit");
    1.0 / (1.0 + 2f64.powi(2 * n as i32 - 1))
}

/// Outcome of the Peres-Horodecki test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptReport {
    pub entangled: bool,
    pub negativity: f64,
    pub min_eigenvalue: f64,
}

/// Threshold below which a partial-transpose eigenvalue counts as negative.
pub const PPT_TOL: f64 = 1e-10;

/// Partial-transpose test on a two-qubit density matrix. For two qubits a
/// negative eigenvalue of `ρ^{T_B}` is necessary and sufficient for
/// entanglement.
pub fn is_ppt_entangled(rho: &HermitianMatrix) -> Result<PptReport> {
    require_dim4(rho)?;
    let tr = rho.trace();
    if !((tr - 1.0).abs() <= 1e-8) {
        return Err(Error::BadTrace {
            trace: tr,
            expected: 1.0,
        });
    }
    let min = rho.min_eigenvalue();
    if min < -PPT_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let eig = partial_transpose(rho)?.eigenvalues();
    let negativity = eig.iter().filter(|&&x| x < 0.0).map(|x| -x).sum();
    Ok(PptReport {
        entangled: eig[0] < -PPT_TOL,
        negativity,
        min_eigenvalue: eig[0],
    })
}

/// Bisects on ε for the smallest polarization at which the pseudo-pure
/// encoding of `psi` becomes PPT-entangled. `None` if it stays separable
/// up to ε = 1.
pub fn ppt_onset_epsilon(psi: &[Complex64], tol: f64) -> Result<Option<f64>> {
    let entangled_at =
        |eps: f64| -> Result<bool> { Ok(is_ppt_entangled(&pseudo_pure(psi, eps)?.full_density())?.entangled) };
    if !entangled_at(1.0)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if entangled_at(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::matrix::Tensor;
    use crate::qlin::pauli::Pauli;

    fn bell_psi() -> Vec<Complex64> {
        let s = 1.0 / 2f64.sqrt();
        vec![c(0.0, 0.0), c(s, 0.0), c(0.0, s), c(0.0, 0.0)]
    }

    /// Elementwise summation oracle, independent of the index arithmetic above.
    fn partial_trace_oracle(m: &CMatrix, keep: Party) -> CMatrix {
        let mut out = CMatrix::zeros(2, 2);
        for qa in 0..2 {
            for qb in 0..2 {
                for ra in 0..2 {
                    for rb in 0..2 {
                        let v = m[(2 * qa + qb, 2 * ra + rb)];
                        match keep {
                            Party::A if qb == rb => out[(qa, ra)] += v,
                            Party::B if qa == ra => out[(qb, rb)] += v,
                            _ => {}
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn partial_trace_of_bell_projector() {
        let p = HermitianMatrix::outer(&bell_psi()).unwrap();
        let ra = partial_trace(&p, Party::A).unwrap();
        assert!(ra.max_abs_diff(&HermitianMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product() {
        let p = HermitianMatrix::outer(&basis_state(0, 1)).unwrap();
        let rb = partial_trace(&p, Party::B).unwrap();
        assert_eq!(rb, HermitianMatrix::from_real_diagonal(&[0.0, 1.0]).unwrap());
    }

    #[test]
    fn partial_trace_of_local_deviation() {
        let d = HermitianMatrix::new(Pauli::Z.pair(Pauli::I).scale(0.25)).unwrap();
        let ra = partial_trace(&d, Party::A).unwrap();
        let rb = partial_trace(&d, Party::B).unwrap();
        let half_z = HermitianMatrix::new(Pauli::Z.matrix().scale(0.5)).unwrap();
        assert!(ra.max_abs_diff(&half_z) < 1e-15);
        assert!(rb.max_abs_diff(&HermitianMatrix::zeros(2)) < 1e-15);
        for keep in [Party::A, Party::B] {
            let oracle = partial_trace_oracle(d.as_matrix(), keep);
            let got = partial_trace(&d, keep).unwrap();
            assert!((got.as_matrix() - oracle).iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn partial_trace_wrong_dim() {
        assert!(partial_trace(&HermitianMatrix::identity(2), Party::A).is_err());
    }

    #[test]
    fn pseudo_pure_product() {
        let s = pseudo_pure(&basis_state(0, 1), 1e-5).unwrap();
        assert!(s.delta().trace().abs() < 1e-15);
        let want = HermitianMatrix::from_real_diagonal(&[-0.25, 0.75, -0.25, -0.25]).unwrap();
        assert!(s.delta().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn pseudo_pure_after_splitter() {
        let s = pseudo_pure(&bell_psi(), 1e-5).unwrap();
        let d = s.delta();
        let diag: Vec<f64> = (0..4).map(|i| d.get(i, i).re).collect();
        for (got, want) in diag.iter().zip([-0.25, 0.25, 0.25, -0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((d.get(1, 2) - c(0.0, -0.5)).norm() < 1e-15);
        // outer-product oracle
        let psi = bell_psi();
        for i in 0..4 {
            for j in 0..4 {
                let want = psi[i] * psi[j].conj() - if i == j { c(0.25, 0.0) } else { c(0.0, 0.0) };
                assert!((d.get(i, j) - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn pseudo_pure_limit() {
        let psi = bell_psi();
        let s = pseudo_pure(&psi, 1.0).unwrap();
        let pure = HermitianMatrix::outer(&psi).unwrap();
        assert!(s.full_density().max_abs_diff(&pure) < 1e-15);
    }

    #[test]
    fn pseudo_pure_rejects_unnormalized() {
        let v = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(pseudo_pure(&v, 0.1), Err(Error::NotNormalized { .. })));
        assert!(matches!(
            pseudo_pure(&basis_state(0, 0), 0.0),
            Err(Error::BadEpsilon(_))
        ));
    }

    #[test]
    fn epsilon_bound_values() {
        assert_eq!(entanglement_epsilon_bound(2), 1.0 / 9.0);
        assert_eq!(entanglement_epsilon_bound(1), 1.0 / 3.0);
        assert_eq!(entanglement_epsilon_bound(3), 1.0 / 33.0);
    }

    #[test]
    fn ppt_examples() {
        let psi = bell_psi();
        let low = is_ppt_entangled(&pseudo_pure(&psi, 1e-5).unwrap().full_density()).unwrap();
        assert!(!low.entangled);
        let high = is_ppt_entangled(&pseudo_pure(&psi, 1.0).unwrap().full_density()).unwrap();
        assert!(high.entangled);
        assert!((high.negativity - 0.5).abs() < 1e-12);
        let onset = ppt_onset_epsilon(&psi, 1e-9).unwrap().unwrap();
        assert!((onset - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn ppt_rejects_non_positive() {
        let bad = HermitianMatrix::from_real_diagonal(&[1.5, -0.5, 0.0, 0.0]).unwrap();
        assert!(matches!(is_ppt_entangled(&bad), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn product_state_onset_is_none() {
        assert_eq!(ppt_onset_epsilon(&basis_state(0, 1), 1e-6).unwrap(), None);
    }

    #[test]
    fn deviation_state_validation() {
        let bad_trace = HermitianMatrix::identity(4);
        assert!(matches!(
            DeviationState::new(0.1, bad_trace),
            Err(Error::BadTrace { .. })
        ));
        // ε too large for this deviation: full density goes negative
        let d = HermitianMatrix::from_real_diagonal(&[-0.25, 0.75, -0.25, -0.25]).unwrap();
        assert!(matches!(DeviationState::new(2.0, d), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn hadamard_conjugation() {
        let s = 1.0 / 2f64.sqrt();
        let h = UnitaryMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)],
        ))
        .unwrap();
        let u = h.tensor(&UnitaryMatrix::identity(2));
        let delta = HermitianMatrix::new(Pauli::Z.pair(Pauli::I).scale(0.25)).unwrap();
        let st = DeviationState::new(1e-5, delta).unwrap();
        let out = st.apply_unitary(&u).unwrap();
        let want = HermitianMatrix::new(Pauli::X.pair(Pauli::I).scale(0.25)).unwrap();
        assert!(out.delta().max_abs_diff(&want) < 1e-15);
        assert_eq!(st.apply_unitary(&UnitaryMatrix::identity(4)).unwrap(), st);
        assert!(st.apply_unitary(&UnitaryMatrix::identity(2)).is_err());
    }
}
