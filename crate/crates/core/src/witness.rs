//! Non-classicality witness `W = Σ_{i<j} |<O_i><O_j>|` over the observables
//! `O_i = σ_i⊗σ_i` (i = 1..3) and `O_4 = Σ (z_i σ_i⊗I + w_i I⊗σ_i)`.
//!
//! `W = 0` certifies classical correlations for states whose two-body
//! Pauli part is diagonal; for Bell-diagonal states it is also necessary.
//! The two-body expectations can be read out as a single magnetization
//! `<σ_x⊗I>` after a local rotation on both qubits and a CNOT.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::qlin::{c, pauli_decompose, CMatrix, DeviationState, HermitianMatrix, Pauli, AXES};
use crate::rng;

/// Default `W` above which a state is not flagged classical.
pub const DEFAULT_THRESHOLD: f64 = 1e-8;

/// Tolerance for deciding that circuit and direct readouts agree.
pub const CIRCUIT_AGREEMENT_TOL: f64 = 1e-10;

/// Unit vectors `z` and `w` defining `O_4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessCoefficients {
    pub z: [f64; 3],
    pub w: [f64; 3],
    pub seed: u64,
}

impl WitnessCoefficients {
    pub fn new(z: [f64; 3], w: [f64; 3], seed: u64) -> Result<Self> {
        let out = Self { z, w, seed };
        out.validate()?;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let nz = self.z.iter().map(|x| x * x).sum::<f64>();
        let nw = self.w.iter().map(|x| x * x).sum::<f64>();
        let defect = (nz - 1.0).abs().max((nw - 1.0).abs());
        if !(defect <= 1e-12) {
            return Err(Error::BadWitnessCoefficients { defect });
        }
        Ok(())
    }

    pub fn negated(&self) -> Self {
        Self {
            z: self.z.map(|x| -x),
            w: self.w.map(|x| -x),
            seed: self.seed,
        }
    }

    /// The four witness observables.
    pub fn observables(&self) -> [CMatrix; 4] {
        let mut o4 = CMatrix::zeros(4, 4);
        for (i, p) in AXES.iter().enumerate() {
            o4 += p.pair(Pauli::I).scale(self.z[i]);
            o4 += Pauli::I.pair(*p).scale(self.w[i]);
        }
        [
            Pauli::X.pair(Pauli::X),
            Pauli::Y.pair(Pauli::Y),
            Pauli::Z.pair(Pauli::Z),
            o4,
        ]
    }
}

/// Two independent uniform unit vectors from the witness stream of `seed`.
pub fn random_witness_coefficients(seed: u64) -> WitnessCoefficients {
    let mut r = rng::stream(seed, rng::streams::WITNESS_COEFFICIENTS);
    let z = rng::unit_vector(&mut r);
    let w = rng::unit_vector(&mut r);
    WitnessCoefficients { z, w, seed }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessVerdict {
    Classical,
    Quantum,
    /// `W` alone does not decide: either the state lies outside the class
    /// where `W = 0` is sufficient, or `W > 0` for a state that is not
    /// Bell-diagonal.
    Inconclusive,
}

impl WitnessVerdict {
    pub fn label(self) -> &'static str {
        match self {
            WitnessVerdict::Classical => "classical",
            WitnessVerdict::Quantum => "quantum",
            WitnessVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub o_values: [f64; 4],
    pub w_value: f64,
    /// `w_value <= threshold`.
    pub classical_flag: bool,
    pub verdict: WitnessVerdict,
    pub threshold: f64,
    /// Rotation recipe used when the readout came from the circuit.
    pub convention: Option<CircuitConvention>,
}

/// `Σ_{i<j} |o_i o_j|` over all six pairs.
pub fn witness_value(o: &[f64; 4]) -> f64 {
    let mut w = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            w += (o[i] * o[j]).abs();
        }
    }
    w
}

fn report(
    rho: &HermitianMatrix,
    o_values: [f64; 4],
    threshold: f64,
    convention: Option<CircuitConvention>,
) -> Result<WitnessReport> {
    let w_value = witness_value(&o_values);
    let classical_flag = w_value <= threshold;
    let p = pauli_decompose(rho)?;
    let verdict = if !p.has_diagonal_correlations(1e-12) {
        WitnessVerdict::Inconclusive
    } else if classical_flag {
        WitnessVerdict::Classical
    } else if p.is_bell_diagonal(1e-12) {
        WitnessVerdict::Quantum
    } else {
        WitnessVerdict::Inconclusive
    };
    Ok(WitnessReport {
        o_values,
        w_value,
        classical_flag,
        verdict,
        threshold,
        convention,
    })
}

fn require_density(rho: &HermitianMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    Ok(())
}

/// Witness from direct expectation values `Tr(ρ O_i)`.
pub fn witness_direct(rho: &HermitianMatrix, coeffs: &WitnessCoefficients) -> Result<WitnessReport> {
    witness_direct_with_threshold(rho, coeffs, DEFAULT_THRESHOLD)
}

pub fn witness_direct_with_threshold(
    rho: &HermitianMatrix,
    coeffs: &WitnessCoefficients,
    threshold: f64,
) -> Result<WitnessReport> {
    require_density(rho)?;
    coeffs.validate()?;
    let obs = coeffs.observables();
    let o = [0, 1, 2, 3].map(|i| rho.expectation(&obs[i]));
    report(rho, o, threshold, None)
}

/// Signed rotation axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedAxis {
    pub axis: Pauli,
    pub negative: bool,
}

impl SignedAxis {
    pub const fn plus(axis: Pauli) -> Self {
        Self { axis, negative: false }
    }

    pub const fn minus(axis: Pauli) -> Self {
        Self { axis, negative: true }
    }

    fn vector(&self) -> [f64; 3] {
        let s = if self.negative { -1.0 } else { 1.0 };
        match self.axis {
            Pauli::X => [s, 0.0, 0.0],
            Pauli::Y => [0.0, s, 0.0],
            Pauli::Z => [0.0, 0.0, s],
            Pauli::I => [0.0, 0.0, 0.0],
        }
    }
}

impl fmt::Display for SignedAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axis {
            Pauli::X => "x",
            Pauli::Y => "y",
            Pauli::Z => "z",
            Pauli::I => "none",
        };
        write!(f, "{}{}", if self.negative { "-" } else { "+" }, name)
    }
}

/// Local rotation `R_n(θ) = exp(-i θ n·σ / 2)` applied to both qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationStep {
    pub axis: SignedAxis,
    pub angle: f64,
}

impl RotationStep {
    pub fn matrix(&self) -> CMatrix {
        let n = self.axis.vector();
        let (s, co) = (0.5 * self.angle).sin_cos();
        let mut m = CMatrix::identity(2, 2).scale(co);
        for (k, p) in AXES.iter().enumerate() {
            m -= p.matrix().scale(n[k]) * c(0.0, s);
        }
        m
    }
}

/// Per-observable rotations used by the readout circuit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircuitConvention {
    pub steps: [RotationStep; 3],
    /// Whether each step is the nominal recipe (`θ_1 = 0`,
    /// `θ_2 = θ_3 = π/2`, `n_2 = y`, `n_3 = z`) or a substitute.
    pub nominal: [bool; 3],
}

impl CircuitConvention {
    pub fn nominal_steps() -> [RotationStep; 3] {
        [
            RotationStep {
                axis: SignedAxis::plus(Pauli::X),
                angle: 0.0,
            },
            RotationStep {
                axis: SignedAxis::plus(Pauli::Y),
                angle: FRAC_PI_2,
            },
            RotationStep {
                axis: SignedAxis::plus(Pauli::Z),
                angle: FRAC_PI_2,
            },
        ]
    }

    pub fn describe(&self) -> String {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.angle == 0.0 {
                    format!("O{}:identity", i + 1)
                } else {
                    format!("O{}:R{}(pi/2)", i + 1, s.axis)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn cnot_a_controls_b() -> CMatrix {
    let p0 = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let p1 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    p0.kronecker(&Pauli::I.matrix()) + p1.kronecker(&Pauli::X.matrix())
}

/// `<σ_x⊗I>` on `CNOT (R⊗R) ρ (R⊗R)^† CNOT^†`.
pub fn circuit_readout(rho: &HermitianMatrix, step: &RotationStep) -> f64 {
    let r = step.matrix();
    let u = cnot_a_controls_b() * r.kronecker(&r);
    rho.sandwich(&u).expectation(&Pauli::X.pair(Pauli::I))
}

/// Picks, for each `O_i`, the first rotation whose readout reproduces the
/// direct expectation on a fixed set of random states: the nominal step
/// first, then `±x, ±y, ±z` at `π/2`.
pub fn calibrate_convention() -> CircuitConvention {
    let mut r = rng::stream(0x5EED, rng::streams::RANDOM_STATES);
    let states: Vec<HermitianMatrix> = (0..32).map(|_| rng::local_diagonal_state(&mut r)).collect();
    let targets = [
        Pauli::X.pair(Pauli::X),
        Pauli::Y.pair(Pauli::Y),
        Pauli::Z.pair(Pauli::Z),
    ];
    let nominal = CircuitConvention::nominal_steps();
    let mut steps = nominal;
    let mut is_nominal = [true; 3];
    for i in 0..3 {
        let mut candidates = vec![nominal[i]];
        for p in AXES {
            for axis in [SignedAxis::plus(p), SignedAxis::minus(p)] {
                candidates.push(RotationStep { axis, angle: FRAC_PI_2 });
            }
        }
        let found = candidates.into_iter().enumerate().find(|(_, step)| {
            states
                .iter()
                .all(|rho| (circuit_readout(rho, step) - rho.expectation(&targets[i])).abs() <= CIRCUIT_AGREEMENT_TOL)
        });
        let (k, step) = found.expect("some rotation maps sigma_x to each sigma_i");
        steps[i] = step;
        is_nominal[i] = k == 0;
    }
    CircuitConvention {
        steps,
        nominal: is_nominal,
    }
}

/// Calibrated convention, computed once per process.
pub fn circuit_convention() -> &'static CircuitConvention {
    static CONVENTION: OnceLock<CircuitConvention> = OnceLock::new();
    CONVENTION.get_or_init(calibrate_convention)
}

/// Witness assembled from magnetization readouts: `<O_1..3>` through the
/// rotation + CNOT circuit, `<O_4>` from the six single-qubit
/// magnetizations.
pub fn witness_via_circuit(s: &DeviationState, coeffs: &WitnessCoefficients) -> Result<WitnessReport> {
    witness_via_circuit_with_threshold(s, coeffs, DEFAULT_THRESHOLD)
}

pub fn witness_via_circuit_with_threshold(
    s: &DeviationState,
    coeffs: &WitnessCoefficients,
    threshold: f64,
) -> Result<WitnessReport> {
    circuit_report(&s.full_density(), coeffs, threshold)
}

/// Circuit witness of the deviation matrix alone: `<O_i> = Tr(Δρ O_i)`,
/// the readouts in units of `ε`. Zero and non-zero `W` are the same as for
/// the full state, since every `O_i` is traceless.
pub fn witness_of_deviation(s: &DeviationState, coeffs: &WitnessCoefficients, threshold: f64) -> Result<WitnessReport> {
    let d = s.dim();
    let shifted = s.delta() + &HermitianMatrix::identity(d).scale(1.0 / d as f64);
    circuit_report(&shifted, coeffs, threshold)
}

fn circuit_report(rho: &HermitianMatrix, coeffs: &WitnessCoefficients, threshold: f64) -> Result<WitnessReport> {
    coeffs.validate()?;
    require_density(rho)?;
    let conv = *circuit_convention();
    let mut o = [0.0; 4];
    for i in 0..3 {
        o[i] = circuit_readout(rho, &conv.steps[i]);
    }
    for (k, p) in AXES.iter().enumerate() {
        let ma = rho.expectation(&p.pair(Pauli::I));
        let mb = rho.expectation(&Pauli::I.pair(*p));
        o[3] += coeffs.z[k] * ma + coeffs.w[k] * mb;
    }
    report(rho, o, threshold, Some(conv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellDiagonalClass {
    Classical,
    Quantum,
}

/// A Bell-diagonal state is classically correlated iff at most one `c_i`
/// is non-zero.
pub fn classify_bell_diagonal(cd: [f64; 3]) -> Result<BellDiagonalClass> {
    let min = rng::bell_diagonal_eigenvalues(&cd)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if min < -1e-12 {
        return Err(Error::UnphysicalBellDiagonal { min_eigenvalue: min });
    }
    let nonzero = cd.iter().filter(|x| x.abs() > 1e-12).count();
    Ok(if nonzero <= 1 {
        BellDiagonalClass::Classical
    } else {
        BellDiagonalClass::Quantum
    })
}
