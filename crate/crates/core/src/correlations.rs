//! Correlation quantifiers for two-qubit states.
//!
//! Two families live here. The exact quantities (von Neumann entropy,
//! mutual information, one-sided discord) act on full density matrices and
//! are reported in bits. The expansion quantities keep only the leading
//! `ε²` term of the high-temperature expansion and act on the deviation
//! matrix alone; they are reported in units of `ε²/ln 2` bits, so a value
//! `x` corresponds to `x · ε²/ln 2` bits.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::optimize::{azimuth_axis, maximize, polar_axis, OptimizerConfig};
use crate::qlin::{bloch_operator, c, partial_trace, pauli_decompose, CMatrix, DeviationState, HermitianMatrix, Party};

/// Trace-one tolerance for density-matrix inputs.
pub const TRACE_ONE_TOL: f64 = 1e-8;

/// Unit attached to a correlation value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Units {
    Bits,
    /// Expansion units: multiply by `ε²/ln 2` to get bits.
    Epsilon2OverLn2Bits,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Units::Bits => "bits",
            Units::Epsilon2OverLn2Bits => "epsilon^2/ln2 bits",
        }
    }
}

/// Converts an expansion-unit value to bits.
pub fn expansion_to_bits(value: f64, epsilon: f64) -> f64 {
    value * epsilon * epsilon / LN_2
}

/// Unit Bloch vector for polar angle `theta` and azimuth `phi`.
pub fn bloch_direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Polar and azimuthal angles of a direction, with `theta ∈ [0, π]` and
/// `phi ∈ [0, 2π)`.
pub fn direction_angles(n: &[f64; 3]) -> (f64, f64) {
    let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let theta = (n[2] / r).clamp(-1.0, 1.0).acos();
    let mut phi = n[1].atan2(n[0]);
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    (theta, phi)
}

/// Rank-one projective measurement on each qubit, each given by the Bloch
/// direction of its `|0>` outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
}

impl MeasurementBasis {
    pub fn new(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Self {
        Self {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        }
    }

    /// Computational basis on both qubits.
    pub fn z_z() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Same measurement with angles folded into `[0, π] × [0, 2π)`.
    pub fn canonical(&self) -> Self {
        let (ta, pa) = direction_angles(&self.direction_a());
        let (tb, pb) = direction_angles(&self.direction_b());
        Self::new(ta, pa, tb, pb)
    }

    pub fn direction_a(&self) -> [f64; 3] {
        bloch_direction(self.theta_a, self.phi_a)
    }

    pub fn direction_b(&self) -> [f64; 3] {
        bloch_direction(self.theta_b, self.phi_b)
    }

    pub fn projectors_a(&self) -> [CMatrix; 2] {
        projector_pair(&self.direction_a())
    }

    pub fn projectors_b(&self) -> [CMatrix; 2] {
        projector_pair(&self.direction_b())
    }

    /// Largest violation of completeness and orthogonality over both parties.
    pub fn projector_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for p in [self.projectors_a(), self.projectors_b()] {
            let id = CMatrix::identity(2, 2);
            let checks = [
                &p[0] + &p[1] - &id,
                &p[0] * &p[0] - &p[0],
                &p[1] * &p[1] - &p[1],
                &p[0] * &p[1],
            ];
            for m in checks {
                for z in m.iter() {
                    let v = z.norm();
                    worst = if v.is_nan() { f64::INFINITY } else { worst.max(v) };
                }
            }
        }
        worst
    }
}

fn projector_pair(n: &[f64; 3]) -> [CMatrix; 2] {
    let id = CMatrix::identity(2, 2);
    let ns = bloch_operator(n);
    [(&id + &ns).scale(0.5), (&id - &ns).scale(0.5)]
}

/// Correlations with their split into classical and quantum parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationTriple {
    pub total: f64,
    pub classical: f64,
    pub quantum: f64,
    pub units: Units,
    /// Measurement that attains the classical part.
    pub basis_argmax: MeasurementBasis,
    /// Set when the local refinement did not converge; the values are then
    /// the best found, not a certified maximum.
    pub warning: bool,
}

/// `-Σ λ log2 λ` with eigenvalues in `[-PSD_TOL, 0)` treated as zero.
pub fn von_neumann_entropy(rho: &HermitianMatrix) -> Result<f64> {
    let tr = rho.trace();
    if !((tr - 1.0).abs() <= TRACE_ONE_TOL) {
        return Err(Error::BadTrace {
            trace: tr,
            expected: 1.0,
        });
    }
    let eig = rho.eigenvalues();
    if eig[0] < -crate::qlin::PSD_TOL {
        return Err(Error::NotPositive { min_eigenvalue: eig[0] });
    }
    Ok(shannon_bits(eig.into_iter()))
}

fn shannon_bits(probs: impl Iterator<Item = f64>) -> f64 {
    probs.filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum::<f64>().max(0.0)
}

/// Entropy of a 2x2 positive matrix of trace `t`, via its closed-form
/// eigenvalues, normalized by `t`.
fn qubit_entropy_normalized(m: &CMatrix) -> f64 {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let t = a + d;
    if t <= 0.0 {
        return 0.0;
    }
    let half_gap = (0.25 * (a - d) * (a - d) + m[(0, 1)].norm_sqr()).sqrt();
    let l1 = (0.5 * t + half_gap) / t;
    let l2 = (0.5 * t - half_gap) / t;
    shannon_bits([l1, l2].into_iter())
}

/// Which matrix the second-order entropy refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marginal {
    Joint,
    Reduced(Party),
}

/// Second-order entropy in bits:
/// `2 (1 - ε²/ln2 · Tr Δρ²)` for the joint state and
/// `1 - ε²/ln2 · Tr Δρ_X²` for a marginal.
pub fn entropy_expansion(s: &DeviationState, which: Marginal) -> Result<f64> {
    let k = s.epsilon() * s.epsilon() / LN_2;
    match which {
        Marginal::Joint => Ok(2.0 * (1.0 - k * s.delta().trace_of_square())),
        Marginal::Reduced(p) => {
            let r = partial_trace(s.delta(), p)?;
            Ok(1.0 - k * r.trace_of_square())
        }
    }
}

/// `S(A) + S(B) - S(AB)` in bits.
pub fn mutual_information_exact(rho: &HermitianMatrix) -> Result<f64> {
    let sa = von_neumann_entropy(&partial_trace(rho, Party::A)?)?;
    let sb = von_neumann_entropy(&partial_trace(rho, Party::B)?)?;
    let sab = von_neumann_entropy(rho)?;
    Ok(sa + sb - sab)
}

/// `2 Tr Δρ² - Tr Δρ_A² - Tr Δρ_B²`, in `ε²/ln 2` bits.
pub fn mutual_information_expansion(s: &DeviationState) -> Result<f64> {
    let d = s.delta();
    let ra = partial_trace(d, Party::A)?;
    let rb = partial_trace(d, Party::B)?;
    Ok(2.0 * d.trace_of_square() - ra.trace_of_square() - rb.trace_of_square())
}

/// `Δη = Σ_ij (Π_i ⊗ Π_j) Δρ (Π_i ⊗ Π_j)`.
pub fn measure_state(s: &DeviationState, m: &MeasurementBasis) -> Result<DeviationState> {
    let defect = m.projector_defect();
    if !(defect <= 1e-12) {
        return Err(Error::InvalidProjectors { defect });
    }
    if s.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: s.dim(),
        });
    }
    let pa = m.projectors_a();
    let pb = m.projectors_b();
    let mut acc = CMatrix::zeros(4, 4);
    for x in &pa {
        for y in &pb {
            let p = x.kronecker(y);
            acc += &p * s.delta().as_matrix() * &p;
        }
    }
    Ok(DeviationState::new_unchecked(s.epsilon(), HermitianMatrix::new(acc)?))
}

/// Classical part of the correlations and the measurement attaining it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalCorrelation {
    pub value: f64,
    pub argmax: MeasurementBasis,
    pub warning: bool,
}

/// Mutual information of the measured state for the measurement whose
/// `|0>` outcomes point along `u` (qubit A) and `v` (qubit B).
///
/// With `Δρ = 1/4 (a·σ⊗I + I⊗b·σ + Σ c_kl σ_k⊗σ_l)` the measured deviation
/// keeps `(a·u)`, `(b·v)` and `uᵀcv`, and the local terms cancel in the
/// expansion mutual information, leaving `(uᵀ c v)² / 2`.
fn measured_information(corr: &[[f64; 3]; 3], u: &[f64; 3], v: &[f64; 3]) -> f64 {
    let mut s = 0.0;
    for k in 0..3 {
        for l in 0..3 {
            s += u[k] * corr[k][l] * v[l];
        }
    }
    0.5 * s * s
}

/// Maximum over product projective measurements of the measured-state
/// expansion mutual information, in `ε²/ln 2` bits.
pub fn classical_correlation(s: &DeviationState, opt: &OptimizerConfig) -> Result<ClassicalCorrelation> {
    opt.validate()?;
    let p = pauli_decompose(s.delta())?;
    let corr = p.c;
    let n = opt.grid_points;
    let thetas = polar_axis(n);
    let phis = azimuth_axis(n);

    let dirs: Vec<[f64; 3]> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&f| bloch_direction(t, f)))
        .collect();
    // cᵀu for every grid direction u
    let pulled: Vec<[f64; 3]> = dirs
        .iter()
        .map(|u| {
            let mut w = [0.0; 3];
            for (l, wl) in w.iter_mut().enumerate() {
                *wl = (0..3).map(|k| u[k] * corr[k][l]).sum();
            }
            w
        })
        .collect();

    let axes = vec![thetas.clone(), phis.clone(), thetas, phis];
    let on_grid = |i: &[usize]| {
        let w = &pulled[i[0] * n + i[1]];
        let v = &dirs[i[2] * n + i[3]];
        let s = w[0] * v[0] + w[1] * v[1] + w[2] * v[2];
        0.5 * s * s
    };
    let objective = |x: &[f64]| measured_information(&corr, &bloch_direction(x[0], x[1]), &bloch_direction(x[2], x[3]));
    let best = maximize(&axes, on_grid, objective, opt)?;
    let argmax = MeasurementBasis::new(best.point[0], best.point[1], best.point[2], best.point[3]).canonical();
    Ok(ClassicalCorrelation {
        value: best.value.max(0.0),
        argmax,
        warning: best.warning(),
    })
}

/// Total, classical and quantum correlations in `ε²/ln 2` bits, with
/// `total = classical + quantum` holding exactly in floating point.
pub fn quantum_correlation_symmetric(s: &DeviationState, opt: &OptimizerConfig) -> Result<CorrelationTriple> {
    let mutual = mutual_information_expansion(s)?;
    let cc = classical_correlation(s, opt)?;
    let quantum = mutual - cc.value;
    Ok(CorrelationTriple {
        total: cc.value + quantum,
        classical: cc.value,
        quantum,
        units: Units::Epsilon2OverLn2Bits,
        basis_argmax: cc.argmax,
        warning: cc.warning,
    })
}

/// Exact one-sided discord with its ingredients, all in bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneSidedDiscord {
    pub discord: f64,
    pub mutual_information: f64,
    /// `max J`, the classical correlation for measurements on one party.
    pub classical: f64,
    pub measured_party: Party,
    pub theta: f64,
    pub phi: f64,
    pub warning: bool,
}

/// `J = S(ρ_X) - Σ_j p_j S(ρ_X^j)` where `X` is the unmeasured party and the
/// measurement on the other party projects along `n`.
pub fn measured_conditional_information(rho: &HermitianMatrix, measured: Party, n: &[f64; 3]) -> Result<f64> {
    let unmeasured = match measured {
        Party::A => Party::B,
        Party::B => Party::A,
    };
    let s_x = von_neumann_entropy(&partial_trace(rho, unmeasured)?)?;
    Ok(s_x - conditional_entropy(rho.as_matrix(), measured, n))
}

/// `Σ_j p_j S(ρ_X^j)` for the projective measurement along `n`.
fn conditional_entropy(rho: &CMatrix, measured: Party, n: &[f64; 3]) -> f64 {
    let mut acc = 0.0;
    for proj in projector_pair(n) {
        // unnormalized conditional state Tr_M[(Π on M) ρ]
        let mut cond = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for k in 0..2 {
                let mut z = c(0.0, 0.0);
                for l in 0..2 {
                    for m in 0..2 {
                        let (r, col) = match measured {
                            Party::B => (2 * i + l, 2 * k + m),
                            Party::A => (2 * l + i, 2 * m + k),
                        };
                        z += proj[(m, l)] * rho[(r, col)];
                    }
                }
                cond[(i, k)] = z;
            }
        }
        let p = cond[(0, 0)].re + cond[(1, 1)].re;
        if p > 1e-15 {
            acc += p * qubit_entropy_normalized(&cond);
        }
    }
    acc
}

/// Exact discord `I - max J` with projective measurements on `measured`.
pub fn quantum_discord_onesided(
    rho: &HermitianMatrix,
    measured: Party,
    opt: &OptimizerConfig,
) -> Result<OneSidedDiscord> {
    opt.validate()?;
    let mutual = mutual_information_exact(rho)?;
    let unmeasured = match measured {
        Party::A => Party::B,
        Party::B => Party::A,
    };
    let s_x = von_neumann_entropy(&partial_trace(rho, unmeasured)?)?;
    let n = opt.grid_points;
    let thetas = polar_axis(n);
    let phis = azimuth_axis(n);
    let m = rho.as_matrix();
    let j = |t: f64, f: f64| s_x - conditional_entropy(m, measured, &bloch_direction(t, f));
    let axes = vec![thetas.clone(), phis.clone()];
    let best = maximize(&axes, |i| j(thetas[i[0]], phis[i[1]]), |x| j(x[0], x[1]), opt)?;
    let (theta, phi) = direction_angles(&bloch_direction(best.point[0], best.point[1]));
    Ok(OneSidedDiscord {
        discord: mutual - best.value,
        mutual_information: mutual,
        classical: best.value,
        measured_party: measured,
        theta,
        phi,
        warning: best.warning(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::{basis_state, pseudo_pure, Pauli, PauliCoefficients, Tensor};

    fn product_deviation() -> DeviationState {
        pseudo_pure(&basis_state(0, 1), 1e-5).unwrap()
    }

    fn bell_pure() -> HermitianMatrix {
        let s = 1.0 / 2f64.sqrt();
        HermitianMatrix::outer(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap()
    }

    #[test]
    fn entropy_examples() {
        let mixed = HermitianMatrix::identity(4).scale(0.25);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-14);
        assert!(von_neumann_entropy(&bell_pure()).unwrap().abs() < 1e-14);
        let bit = HermitianMatrix::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0]).unwrap();
        assert!((von_neumann_entropy(&bit).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn entropy_errors() {
        let bad_trace = HermitianMatrix::identity(4);
        assert!(matches!(von_neumann_entropy(&bad_trace), Err(Error::BadTrace { .. })));
        let negative = HermitianMatrix::from_real_diagonal(&[1.2, -0.2]).unwrap();
        assert!(matches!(von_neumann_entropy(&negative), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn entropy_expansion_examples() {
        let zero = DeviationState::maximally_mixed(2, 1e-5).unwrap();
        assert_eq!(entropy_expansion(&zero, Marginal::Joint).unwrap(), 2.0);
        assert_eq!(entropy_expansion(&zero, Marginal::Reduced(Party::A)).unwrap(), 1.0);

        let eps = 1e-3;
        let s = pseudo_pure(&basis_state(0, 1), eps).unwrap();
        let joint = entropy_expansion(&s, Marginal::Joint).unwrap();
        let want = 2.0 - 2.0 * eps * eps / LN_2 * 0.75;
        assert!((joint - want).abs() < 1e-15);
        // exact eigenvalues (1+3ε)/4 and three times (1-ε)/4
        let exact = shannon_bits(
            [
                (1.0 + 3.0 * eps) / 4.0,
                (1.0 - eps) / 4.0,
                (1.0 - eps) / 4.0,
                (1.0 - eps) / 4.0,
            ]
            .into_iter(),
        );
        assert!((joint - exact).abs() <= 10.0 * eps.powi(3));
        let marg = entropy_expansion(&s, Marginal::Reduced(Party::A)).unwrap();
        assert!((marg - (1.0 - eps * eps / LN_2 * 0.5)).abs() < 1e-15);
    }

    #[test]
    fn mutual_information_exact_examples() {
        let ra = HermitianMatrix::from_real_diagonal(&[0.7, 0.3]).unwrap();
        let rb = HermitianMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.6, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.4, 0.0)],
        ))
        .unwrap();
        assert!(mutual_information_exact(&ra.tensor(&rb)).unwrap().abs() < 1e-13);
        assert!((mutual_information_exact(&bell_pure()).unwrap() - 2.0).abs() < 1e-13);
        let classical = HermitianMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((mutual_information_exact(&classical).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn mutual_information_expansion_examples() {
        let local =
            DeviationState::new(1e-5, HermitianMatrix::new(Pauli::Z.pair(Pauli::I).scale(0.25)).unwrap()).unwrap();
        assert!(mutual_information_expansion(&local).unwrap().abs() < 1e-15);
        assert!((mutual_information_expansion(&product_deviation()).unwrap() - 0.5).abs() < 1e-15);
        let bd = DeviationState::bell_diagonal([0.6, 0.6, 0.0], 1e-5).unwrap();
        assert!((mutual_information_expansion(&bd).unwrap() - 0.36).abs() < 1e-15);
    }

    #[test]
    fn expansion_agrees_with_exact_at_small_epsilon() {
        let eps = 1e-4;
        let s = pseudo_pure(&basis_state(0, 1), eps).unwrap();
        let exact = mutual_information_exact(&s.full_density()).unwrap();
        let scaled = exact / (eps * eps / LN_2);
        // residual is O(ε) relative; exact entropies lose ~1e-16/ε² to roundoff
        assert!((scaled - 0.5).abs() < 1e-2, "{scaled}");
    }

    #[test]
    fn measure_state_examples() {
        let diag = product_deviation();
        let m = measure_state(&diag, &MeasurementBasis::z_z()).unwrap();
        assert!(m.delta().max_abs_diff(diag.delta()) < 1e-15);

        let xx = DeviationState::new(1e-5, HermitianMatrix::new(Pauli::X.pair(Pauli::X).scale(0.25)).unwrap()).unwrap();
        let m = measure_state(&xx, &MeasurementBasis::z_z()).unwrap();
        assert!(m.delta().max_abs_diff(&HermitianMatrix::zeros(4)) < 1e-15);

        let bd = DeviationState::bell_diagonal([0.3, -0.2, 0.5], 1e-5).unwrap();
        let m = measure_state(&bd, &MeasurementBasis::z_z()).unwrap();
        let want = HermitianMatrix::new(Pauli::Z.pair(Pauli::Z).scale(0.25 * 0.5)).unwrap();
        assert!(m.delta().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn measure_state_rejects_nan_basis() {
        let s = product_deviation();
        let bad = MeasurementBasis::new(f64::NAN, 0.0, 0.0, 0.0);
        assert!(matches!(measure_state(&s, &bad), Err(Error::InvalidProjectors { .. })));
    }

    #[test]
    fn measured_information_matches_matrix_route() {
        let mut p = PauliCoefficients {
            trace: 0.0,
            a: [0.2, -0.1, 0.3],
            b: [-0.25, 0.05, 0.1],
            c: [[0.3, 0.1, -0.05], [0.02, -0.2, 0.15], [0.1, 0.0, 0.4]],
        };
        let s = DeviationState::new(1e-5, p.reconstruct()).unwrap();
        p = pauli_decompose(s.delta()).unwrap();
        for (ta, pa, tb, pb) in [(0.3, 1.2, 2.0, 4.0), (1.1, 0.1, 0.7, 5.5), (2.9, 3.3, 0.0, 0.0)] {
            let m = MeasurementBasis::new(ta, pa, tb, pb);
            let via_matrix = mutual_information_expansion(&measure_state(&s, &m).unwrap()).unwrap();
            let via_pauli = measured_information(&p.c, &m.direction_a(), &m.direction_b());
            assert!((via_matrix - via_pauli).abs() < 1e-14);
        }
    }

    #[test]
    fn classical_correlation_examples() {
        let opt = OptimizerConfig::default();
        let bd = DeviationState::bell_diagonal([0.6, 0.6, 0.0], 1e-5).unwrap();
        let cc = classical_correlation(&bd, &opt).unwrap();
        assert!((cc.value - 0.18).abs() < 1e-9, "{}", cc.value);
        assert!(!cc.warning);

        let zero = DeviationState::maximally_mixed(2, 1e-5).unwrap();
        assert_eq!(classical_correlation(&zero, &opt).unwrap().value, 0.0);

        let prod = classical_correlation(&product_deviation(), &opt).unwrap();
        assert!((prod.value - 0.5).abs() < 1e-12);
        // z⊗z is the first grid point and already optimal
        let d = prod.argmax.direction_a();
        assert!((d[2].abs() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn symmetric_triples() {
        let opt = OptimizerConfig::default();
        let t = quantum_correlation_symmetric(&DeviationState::bell_diagonal([0.6, 0.6, 0.0], 1e-5).unwrap(), &opt)
            .unwrap();
        assert!((t.total - 0.36).abs() < 1e-9);
        assert!((t.classical - 0.18).abs() < 1e-9);
        assert!((t.quantum - 0.18).abs() < 1e-9);
        assert_eq!(t.total, t.classical + t.quantum);
        assert_eq!(t.units, Units::Epsilon2OverLn2Bits);

        let t = quantum_correlation_symmetric(&DeviationState::bell_diagonal([0.5, 0.0, 0.0], 1e-5).unwrap(), &opt)
            .unwrap();
        assert!((t.total - 0.125).abs() < 1e-12);
        assert!((t.classical - 0.125).abs() < 1e-9);
        assert!(t.quantum.abs() < 1e-9);

        let t = quantum_correlation_symmetric(&DeviationState::maximally_mixed(2, 1e-5).unwrap(), &opt).unwrap();
        assert_eq!((t.total, t.classical, t.quantum), (0.0, 0.0, 0.0));
    }

    #[test]
    fn onesided_discord_examples() {
        let opt = OptimizerConfig::default();
        let ra = HermitianMatrix::from_real_diagonal(&[0.7, 0.3]).unwrap();
        let rb = HermitianMatrix::from_real_diagonal(&[0.2, 0.8]).unwrap();
        let d = quantum_discord_onesided(&ra.tensor(&rb), Party::B, &opt).unwrap();
        assert!(d.discord.abs() < 1e-9);

        let d = quantum_discord_onesided(&bell_pure(), Party::B, &opt).unwrap();
        assert!((d.discord - 1.0).abs() < 1e-9);
        assert!((d.classical - 1.0).abs() < 1e-9);
    }

    #[test]
    fn angle_roundtrip() {
        let (t, p) = direction_angles(&bloch_direction(2.0, 5.0));
        assert!((t - 2.0).abs() < 1e-12 && (p - 5.0).abs() < 1e-12);
        let (t, p) = direction_angles(&bloch_direction(-0.5, 1.0));
        assert!((t - 0.5).abs() < 1e-12);
        assert!((p - (1.0 + std::f64::consts::PI)).abs() < 1e-12);
    }
}
