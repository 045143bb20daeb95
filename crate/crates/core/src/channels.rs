//! Amplitude and phase damping, time evolution of deviation states and
//! correlation trajectories.
//!
//! Channels are parametrized by a rate `γ` and an absolute time `t`. Local
//! channels act on one or both qubits independently; the global channel is
//! collective dephasing generated by the total `S_z`, which leaves
//! zero-quantum coherences untouched.

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};

use crate::correlations::{quantum_correlation_symmetric, CorrelationTriple};
use crate::error::{Error, Result};
use crate::optimize::OptimizerConfig;
use crate::qlin::{c, CMatrix, DeviationState, HermitianMatrix};

/// Completeness tolerance for Kraus sets.
pub const COMPLETENESS_TOL: f64 = 1e-12;
/// Most negative eigenvalue of an evolved density matrix that is accepted.
pub const CHANNEL_PSD_TOL: f64 = 1e-10;
/// Default threshold multiplier for [`detect_sudden_change`].
pub const DEFAULT_KINK_FACTOR: f64 = 10.0;
/// Slope jumps at or below this are treated as roundoff.
pub const KINK_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Locality {
    LocalA,
    LocalB,
    LocalBoth,
    Global,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub locality: Locality,
    /// `γ`, in inverse time units.
    pub rate: f64,
    /// Excited-state population of the amplitude damping fixed point;
    /// 0 relaxes to `|0>`. Ignored for phase damping.
    pub equilibrium: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, locality: Locality, rate: f64) -> Result<Self> {
        Self::with_equilibrium(kind, locality, rate, 0.0)
    }

    pub fn with_equilibrium(kind: ChannelKind, locality: Locality, rate: f64, equilibrium: f64) -> Result<Self> {
        let spec = Self {
            kind,
            locality,
            rate,
            equilibrium,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn phase_damping(locality: Locality, rate: f64) -> Result<Self> {
        Self::new(ChannelKind::PhaseDamping, locality, rate)
    }

    pub fn amplitude_damping(locality: Locality, rate: f64) -> Result<Self> {
        Self::new(ChannelKind::AmplitudeDamping, locality, rate)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rate >= 0.0 && self.rate.is_finite()) {
            return Err(Error::NegativeRate(self.rate));
        }
        if !(0.0..=1.0).contains(&self.equilibrium) {
            return Err(Error::UnsupportedChannel(format!(
                "equilibrium population {} outside [0, 1]",
                self.equilibrium
            )));
        }
        if self.kind == ChannelKind::AmplitudeDamping && self.locality == Locality::Global {
            return Err(Error::UnsupportedChannel(
                "amplitude damping acts on each qubit individually".into(),
            ));
        }
        Ok(())
    }

    /// Whether the channel maps `I` to `I`.
    pub fn is_unital(&self) -> bool {
        match self.kind {
            ChannelKind::PhaseDamping => true,
            ChannelKind::AmplitudeDamping => self.equilibrium == 0.5 || self.rate == 0.0,
        }
    }
}

/// Rates `(γ_amplitude, γ_phase)` reproducing longitudinal and transverse
/// relaxation times `T1` and `T2` (`T2 <= 2 T1`).
pub fn rates_from_relaxation_times(t1: f64, t2: f64) -> Result<(f64, f64)> {
    if !(t1 > 0.0) {
        return Err(Error::NegativeRate(t1));
    }
    if !(t2 > 0.0) {
        return Err(Error::NegativeRate(t2));
    }
    let gamma_pd = 1.0 / t2 - 0.5 / t1;
    if gamma_pd < 0.0 {
        return Err(Error::NegativeRate(gamma_pd));
    }
    Ok((1.0 / t1, gamma_pd))
}

fn diag2(a: f64, b: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(a, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(b, 0.0)])
}

fn offdiag2(upper: f64, lower: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(upper, 0.0), c(lower, 0.0), c(0.0, 0.0)])
}

fn is_zero(m: &CMatrix) -> bool {
    m.iter().all(|z| z.norm() == 0.0)
}

fn single_qubit_kraus(spec: &ChannelSpec, t: f64) -> Vec<CMatrix> {
    let ops = match spec.kind {
        ChannelKind::AmplitudeDamping => {
            let p = -(-spec.rate * t).exp_m1();
            let n = spec.equilibrium;
            let (ground, excited) = ((1.0 - n).sqrt(), n.sqrt());
            vec![
                diag2(ground, ground * (1.0 - p).sqrt()),
                offdiag2(ground * p.sqrt(), 0.0),
                diag2(excited * (1.0 - p).sqrt(), excited),
                offdiag2(0.0, excited * p.sqrt()),
            ]
        }
        ChannelKind::PhaseDamping => {
            let lambda = -(-2.0 * spec.rate * t).exp_m1();
            vec![diag2(1.0, (1.0 - lambda).sqrt()), diag2(0.0, lambda.sqrt())]
        }
    };
    ops.into_iter().filter(|k| !is_zero(k)).collect()
}

/// Total `S_z` quantum number of computational basis state `i`.
fn total_mz(i: usize) -> usize {
    // index into the levels {+1, 0, -1}
    (i >> 1) + (i & 1)
}

fn global_dephasing_kraus(rate: f64, t: f64) -> Vec<CMatrix> {
    let levels = [1.0, 0.0, -1.0];
    let kernel = Matrix3::from_fn(|a, b| {
        let d: f64 = levels[a] - levels[b];
        (-rate * t * d * d).exp()
    });
    let eig = SymmetricEigen::new(kernel);
    let mut ops = Vec::new();
    for k in 0..3 {
        let lambda = eig.eigenvalues[k];
        if lambda < 1e-15 {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let amp = lambda.sqrt();
        let mut m = CMatrix::zeros(4, 4);
        for i in 0..4 {
            m[(i, i)] = c(amp * v[total_mz(i)], 0.0);
        }
        ops.push(m);
    }
    ops
}

/// Kraus operators of the channel after time `t`: 2x2 for a single-qubit
/// locality (`LocalA`/`LocalB`), 4x4 otherwise. Zero operators are dropped,
/// so `t = 0` yields the identity alone.
pub fn kraus_operators(spec: &ChannelSpec, t: f64) -> Result<Vec<CMatrix>> {
    spec.validate()?;
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    Ok(match spec.locality {
        Locality::LocalA | Locality::LocalB => single_qubit_kraus(spec, t),
        Locality::LocalBoth => {
            let ks = single_qubit_kraus(spec, t);
            let mut out = Vec::with_capacity(ks.len() * ks.len());
            for ka in &ks {
                for kb in &ks {
                    out.push(ka.kronecker(kb));
                }
            }
            out
        }
        Locality::Global => global_dephasing_kraus(spec.rate, t),
    })
}

/// Elementwise factors by which a dephasing channel scales the two-qubit
/// density matrix in the computational basis. Equal to the diagonal Kraus
/// sum, but exact: populations and protected coherences get exactly 1.
fn dephasing_factors(spec: &ChannelSpec, t: f64) -> DMatrix<f64> {
    let g = spec.rate * t;
    let bit = |i: usize, shift: usize| (i >> shift) & 1;
    DMatrix::from_fn(4, 4, |i, j| {
        let flips_a = (bit(i, 1) != bit(j, 1)) as i32;
        let flips_b = (bit(i, 0) != bit(j, 0)) as i32;
        match spec.locality {
            Locality::LocalA => (-g * flips_a as f64).exp(),
            Locality::LocalB => (-g * flips_b as f64).exp(),
            Locality::LocalBoth => (-g * (flips_a + flips_b) as f64).exp(),
            Locality::Global => {
                let d = total_mz(i) as f64 - total_mz(j) as f64;
                (-g * d * d).exp()
            }
        }
    })
}

/// Kraus operators acting on the two-qubit register.
pub fn two_qubit_kraus(spec: &ChannelSpec, t: f64) -> Result<Vec<CMatrix>> {
    let ks = kraus_operators(spec, t)?;
    let id = CMatrix::identity(2, 2);
    Ok(match spec.locality {
        Locality::LocalA => ks.iter().map(|k| k.kronecker(&id)).collect(),
        Locality::LocalB => ks.iter().map(|k| id.kronecker(k)).collect(),
        Locality::LocalBoth | Locality::Global => ks,
    })
}

/// `‖Σ K^† K - I‖_∞` (largest elementwise modulus).
pub fn completeness_defect(ops: &[CMatrix]) -> f64 {
    let d = ops.first().map_or(0, |k| k.ncols());
    let mut sum = -CMatrix::identity(d, d);
    for k in ops {
        sum += k.adjoint() * k;
    }
    sum.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn kraus_map(m: &HermitianMatrix, ops: &[CMatrix]) -> HermitianMatrix {
    let d = m.dim();
    let mut out = CMatrix::zeros(d, d);
    for k in ops {
        out += k * m.as_matrix() * k.adjoint();
    }
    HermitianMatrix::symmetrized(out)
}

/// Evolves a full two-qubit density matrix.
pub fn evolve_density(rho: &HermitianMatrix, spec: &ChannelSpec, t: f64) -> Result<HermitianMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    Ok(kraus_map(rho, &two_qubit_kraus(spec, t)?))
}

/// Evolves `ρ = I/4 + εΔρ` and returns the deviation of the result.
///
/// The map is split as `Δρ' = Φ(Δρ) + (Φ(I/4) - I/4)/ε`, which equals
/// `(Φ(ρ) - I/4)/ε` but does not lose the `O(ε)` signal to cancellation
/// against the identity. The shift vanishes identically for unital
/// channels.
pub fn apply_channel(s: &DeviationState, spec: &ChannelSpec, t: f64) -> Result<DeviationState> {
    if s.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: s.dim(),
        });
    }
    if spec.kind == ChannelKind::PhaseDamping {
        kraus_operators(spec, t)?;
        let f = dephasing_factors(spec, t);
        let delta = s.delta().as_matrix().zip_map(&f, |z, x| z * x);
        return Ok(DeviationState::new_unchecked(
            s.epsilon(),
            HermitianMatrix::symmetrized(delta),
        ));
    }
    let ops = two_qubit_kraus(spec, t)?;
    let mut delta = kraus_map(s.delta(), &ops);
    if !spec.is_unital() {
        let quarter = HermitianMatrix::identity(4).scale(0.25);
        let shift = &kraus_map(&quarter, &ops) - &quarter;
        delta = &delta + &shift.scale(1.0 / s.epsilon());
    }
    let out = DeviationState::new_unchecked(s.epsilon(), delta);
    let min = out.full_density().min_eigenvalue();
    if min < -CHANNEL_PSD_TOL {
        return Err(Error::ChannelBrokePositivity { min_eigenvalue: min });
    }
    Ok(out)
}

/// Applies each channel for time `t`, in list order.
pub fn apply_channels(s: &DeviationState, specs: &[ChannelSpec], t: f64) -> Result<DeviationState> {
    let mut out = s.clone();
    for spec in specs {
        out = apply_channel(&out, spec, t)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub triple: CorrelationTriple,
    pub delta_snapshot: Option<HermitianMatrix>,
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|&t| !(t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::UnsortedTimes);
    }
    Ok(())
}

/// Correlations of `s0` evolved under `specs` for each time in `times`.
/// Every point is computed from `s0` directly.
pub fn correlation_trajectory(
    s0: &DeviationState,
    specs: &[ChannelSpec],
    times: &[f64],
    opt: &OptimizerConfig,
) -> Result<Vec<TrajectoryPoint>> {
    check_times(times)?;
    times
        .iter()
        .map(|&t| {
            let s = apply_channels(s0, specs, t)?;
            let triple = quantum_correlation_symmetric(&s, opt)?;
            Ok(TrajectoryPoint {
                t,
                triple,
                delta_snapshot: Some(s.delta().clone()),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorrelationSeries {
    Classical,
    Quantum,
}

/// Locates a discontinuity in the decay rate of one correlation series.
pub fn detect_sudden_change(
    traj: &[TrajectoryPoint],
    which: CorrelationSeries,
    kink_factor: f64,
) -> Result<Option<f64>> {
    let times: Vec<f64> = traj.iter().map(|p| p.t).collect();
    let values: Vec<f64> = traj
        .iter()
        .map(|p| match which {
            CorrelationSeries::Classical => p.triple.classical,
            CorrelationSeries::Quantum => p.triple.quantum,
        })
        .collect();
    detect_kink(&times, &values, kink_factor)
}

/// Finds the interior point where the slope jumps by more than
/// `kink_factor` times the median jump, and returns the crossing of the
/// secant lines on either side. `None` when no jump stands out.
pub fn detect_kink(times: &[f64], values: &[f64], kink_factor: f64) -> Result<Option<f64>> {
    const MIN_POINTS: usize = 5;
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            actual: values.len(),
        });
    }
    if times.len() < MIN_POINTS {
        return Err(Error::TooFewPoints {
            needed: MIN_POINTS,
            got: times.len(),
        });
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::UnsortedTimes);
    }
    let n = times.len();
    let slope = |i: usize| (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
    // jumps[i - 1] is the slope change at point i
    let jumps: Vec<f64> = (1..n - 1).map(|i| (slope(i) - slope(i - 1)).abs()).collect();

    let mut sorted = jumps.clone();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    let median = if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    };

    let (k, &peak) = jumps
        .iter()
        .enumerate()
        .fold((0, &jumps[0]), |best, cur| if cur.1 > best.1 { cur } else { best });
    if !(peak > kink_factor * median && peak > KINK_FLOOR) {
        return Ok(None);
    }
    let i = k + 1;
    if i < 2 || i + 2 >= n {
        return Ok(Some(times[i]));
    }
    let (sl, sr) = (slope(i - 2), slope(i + 1));
    if sl == sr {
        return Ok(Some(times[i]));
    }
    let t = (values[i + 1] - values[i - 1] + sl * times[i - 1] - sr * times[i + 1]) / (sl - sr);
    Ok(Some(t.clamp(times[i - 1], times[i + 1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::{pauli_decompose, pseudo_pure, PauliCoefficients};
    use crate::rng;
    use rand::Rng;

    #[test]
    fn dephasing_factors_match_kraus_sum() {
        let mut r = rng::stream(3, 70);
        let rho = HermitianMatrix::outer(&rng::pure_state(&mut r, 4)).unwrap();
        for loc in [
            Locality::LocalA,
            Locality::LocalB,
            Locality::LocalBoth,
            Locality::Global,
        ] {
            let spec = ChannelSpec::phase_damping(loc, 0.7).unwrap();
            for t in [0.0, 0.3, 2.0] {
                let via_kraus = kraus_map(&rho, &two_qubit_kraus(&spec, t).unwrap());
                let f = dephasing_factors(&spec, t);
                let via_factors = rho.as_matrix().zip_map(&f, |z, x| z * x);
                assert!(
                    (via_kraus.as_matrix() - via_factors)
                        .iter()
                        .fold(0.0f64, |m, z| m.max(z.norm()))
                        < 1e-14,
                    "{loc:?} t = {t}"
                );
            }
        }
    }

    fn pd(loc: Locality, g: f64) -> ChannelSpec {
        ChannelSpec::phase_damping(loc, g).unwrap()
    }

    #[test]
    fn identity_at_time_zero() {
        for spec in [
            pd(Locality::LocalA, 1.0),
            pd(Locality::Global, 1.0),
            ChannelSpec::amplitude_damping(Locality::LocalBoth, 2.0).unwrap(),
        ] {
            let ks = kraus_operators(&spec, 0.0).unwrap();
            assert_eq!(ks.len(), 1, "{spec:?}");
            let d = ks[0].nrows();
            assert!((&ks[0] - CMatrix::identity(d, d)).iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn argument_validation() {
        assert_eq!(
            kraus_operators(&pd(Locality::LocalA, 1.0), -1.0),
            Err(Error::NegativeTime(-1.0))
        );
        assert!(ChannelSpec::phase_damping(Locality::LocalA, -0.1).is_err());
        assert!(matches!(
            ChannelSpec::amplitude_damping(Locality::Global, 1.0),
            Err(Error::UnsupportedChannel(_))
        ));
    }

    #[test]
    fn local_phase_damping_halves_coherence() {
        let ks = kraus_operators(&pd(Locality::LocalA, 1.0), 2f64.ln()).unwrap();
        let rho = CMatrix::from_element(2, 2, c(0.5, 0.0));
        let mut out = CMatrix::zeros(2, 2);
        for k in &ks {
            out += k * &rho * k.adjoint();
        }
        assert!((out[(0, 1)].re - 0.25).abs() < 1e-15);
        assert!((out[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn amplitude_damping_relaxes_to_ground() {
        let spec = ChannelSpec::amplitude_damping(Locality::LocalBoth, 1.0).unwrap();
        let rho = HermitianMatrix::identity(4).scale(0.25);
        let out = evolve_density(&rho, &spec, 60.0).unwrap();
        assert!((out.get(0, 0).re - 1.0).abs() < 1e-12);

        let hot = ChannelSpec::with_equilibrium(ChannelKind::AmplitudeDamping, Locality::LocalA, 1.0, 0.3).unwrap();
        let out = evolve_density(
            &HermitianMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]).unwrap(),
            &hot,
            60.0,
        )
        .unwrap();
        assert!((out.get(2, 2).re - 0.3).abs() < 1e-12);
    }

    #[test]
    fn completeness_on_random_pairs() {
        let mut r = rng::stream(1, 7);
        for _ in 0..50 {
            let kind = if r.random::<bool>() {
                ChannelKind::PhaseDamping
            } else {
                ChannelKind::AmplitudeDamping
            };
            let locs = [
                Locality::LocalA,
                Locality::LocalB,
                Locality::LocalBoth,
                Locality::Global,
            ];
            let mut loc = locs[r.random_range(0..4)];
            if kind == ChannelKind::AmplitudeDamping && loc == Locality::Global {
                loc = Locality::LocalBoth;
            }
            let spec =
                ChannelSpec::with_equilibrium(kind, loc, r.random_range(0.0..5.0), r.random_range(0.0..1.0)).unwrap();
            let ks = kraus_operators(&spec, r.random_range(0.0..10.0)).unwrap();
            assert!(completeness_defect(&ks) <= COMPLETENESS_TOL, "{spec:?}");
        }
    }

    #[test]
    fn bell_diagonal_dephasing_closed_form() {
        let s = DeviationState::bell_diagonal([0.6, 0.18, 0.2], 1e-5).unwrap();
        let t = 0.37;
        let out = apply_channel(&s, &pd(Locality::LocalBoth, 1.0), t).unwrap();
        let p = pauli_decompose(out.delta()).unwrap();
        let f = (-2.0 * t).exp();
        let cd = p.correlation_diagonal();
        for (got, want) in cd.iter().zip([0.6 * f, 0.18 * f, 0.2]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn unital_paths_agree() {
        let mut r = rng::stream(2, 7);
        for spec in [
            pd(Locality::LocalBoth, 0.7),
            pd(Locality::Global, 1.3),
            pd(Locality::LocalB, 0.2),
        ] {
            for eps in [0.5, 1e-2] {
                let s = rng::deviation_state(&mut r, eps);
                let split = apply_channel(&s, &spec, 0.8).unwrap();
                let rho = evolve_density(&s.full_density(), &spec, 0.8).unwrap();
                let full = DeviationState::from_density(&rho, eps).unwrap();
                assert!(split.delta().max_abs_diff(full.delta()) < 1e-12);
            }
        }
    }

    #[test]
    fn non_unital_split_matches_full_path() {
        let mut r = rng::stream(3, 7);
        let spec = ChannelSpec::amplitude_damping(Locality::LocalBoth, 0.9).unwrap();
        let s = rng::deviation_state(&mut r, 0.5);
        let split = apply_channel(&s, &spec, 0.4).unwrap();
        let rho = evolve_density(&s.full_density(), &spec, 0.4).unwrap();
        assert!(split.full_density().max_abs_diff(&rho) < 1e-14);
    }

    #[test]
    fn semigroup() {
        let mut r = rng::stream(4, 7);
        let specs = [
            pd(Locality::LocalBoth, 0.8),
            pd(Locality::Global, 0.5),
            ChannelSpec::with_equilibrium(ChannelKind::AmplitudeDamping, Locality::LocalA, 1.1, 0.2).unwrap(),
        ];
        for spec in specs {
            let s = rng::deviation_state(&mut r, 0.3);
            let two = apply_channel(&apply_channel(&s, &spec, 0.3).unwrap(), &spec, 0.6).unwrap();
            let one = apply_channel(&s, &spec, 0.9).unwrap();
            assert!(two.delta().max_abs_diff(one.delta()) < 1e-10, "{spec:?}");
        }
    }

    #[test]
    fn global_dephasing_protects_zero_quantum_coherence() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(0.0, 0.0), c(inv, 0.0), c(inv, 0.0), c(0.0, 0.0)];
        let s = pseudo_pure(&psi, 1e-5).unwrap();
        let global = apply_channel(&s, &pd(Locality::Global, 1.0), 2.0).unwrap();
        let local = apply_channel(&s, &pd(Locality::LocalBoth, 1.0), 2.0).unwrap();
        assert!(global.delta().max_abs_diff(s.delta()) < 1e-15);
        assert!((local.delta().get(1, 2).re - 0.5 * (-4.0f64).exp()).abs() < 1e-15);

        // single-quantum coherences do decay globally
        let plus = [c(inv, 0.0), c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let s = pseudo_pure(&plus, 1e-5).unwrap();
        let out = apply_channel(&s, &pd(Locality::Global, 1.0), 1.0).unwrap();
        assert!((out.delta().get(0, 1).re - 0.5 * (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn psd_and_trace_preserved() {
        let mut r = rng::stream(5, 7);
        for _ in 0..20 {
            let rho = PauliCoefficients::bell_diagonal(rng::bell_diagonal_coefficients(&mut r)).reconstruct();
            for spec in [
                ChannelSpec::amplitude_damping(Locality::LocalBoth, 1.0).unwrap(),
                pd(Locality::Global, 1.0),
            ] {
                let out = evolve_density(&rho, &spec, r.random_range(0.0..3.0)).unwrap();
                assert!((out.trace() - 1.0).abs() < 1e-14);
                assert!(out.min_eigenvalue() > -1e-12);
            }
        }
    }

    #[test]
    fn relaxation_time_rates() {
        let (ga, gp) = rates_from_relaxation_times(2.0, 1.0).unwrap();
        assert_eq!(ga, 0.5);
        assert_eq!(gp, 0.75);
        assert!(rates_from_relaxation_times(1.0, 3.0).is_err());
    }

    #[test]
    fn kink_on_piecewise_linear() {
        let h = 0.01;
        let t: Vec<f64> = (0..201).map(|k| k as f64 * h).collect();
        let v: Vec<f64> = t
            .iter()
            .map(|&x| if x < 1.0 { 2.0 - x } else { 1.0 - 0.2 * (x - 1.0) })
            .collect();
        let tsc = detect_kink(&t, &v, DEFAULT_KINK_FACTOR).unwrap().unwrap();
        assert!((tsc - 1.0).abs() <= h);
    }

    #[test]
    fn no_kink_on_exponential() {
        let t: Vec<f64> = (0..200).map(|k| k as f64 * 0.01).collect();
        let v: Vec<f64> = t.iter().map(|&x| (-x).exp()).collect();
        assert_eq!(detect_kink(&t, &v, DEFAULT_KINK_FACTOR).unwrap(), None);
        let flat = vec![0.3; 10];
        assert_eq!(detect_kink(&t[..10], &flat, DEFAULT_KINK_FACTOR).unwrap(), None);
    }

    #[test]
    fn kink_needs_five_points() {
        assert_eq!(
            detect_kink(&[0.0, 1.0, 2.0, 3.0], &[0.0; 4], 10.0),
            Err(Error::TooFewPoints { needed: 5, got: 4 })
        );
    }

    #[test]
    fn trajectory_validation_and_constant_case() {
        let s = DeviationState::bell_diagonal([0.4, 0.3, 0.2], 1e-5).unwrap();
        let opt = OptimizerConfig::default();
        assert_eq!(
            correlation_trajectory(&s, &[], &[0.5, 0.1], &opt),
            Err(Error::UnsortedTimes)
        );
        let traj = correlation_trajectory(&s, &[], &[0.0, 1.0, 2.0], &opt).unwrap();
        assert!(traj.iter().all(|p| p.triple == traj[0].triple));
    }
}
