//! Two-spin Mach-Zehnder interferometer on a pseudo-pure register.
//!
//! Qubit A encodes which path and qubit B the complementary mode, so the
//! input `|01>` is one photon in arm A. A phase `φ` on qubit A between two
//! splitters gives the fringe `P(|01>) = cos²(φ/2)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::channels::{apply_channels, ChannelSpec};
use crate::correlations::quantum_correlation_symmetric;
use crate::error::{Error, Result};
use crate::optimize::OptimizerConfig;
use crate::qlin::{basis_state, c, pseudo_pure, CMatrix, DeviationState, HermitianMatrix, UnitaryMatrix};

/// Basis index of the detected (initial) state `|01>`.
const DETECTED: usize = 1;

/// Minimum number of phases for a visibility estimate.
pub const MIN_SWEEP_POINTS: usize = 16;

/// Identity on `|00>` and `|11>`, `[[1, i], [i, 1]]/√2` on `{|01>, |10>}`.
pub fn beam_splitter() -> UnitaryMatrix {
    let s = FRAC_1_SQRT_2;
    let mut m = CMatrix::identity(4, 4);
    m[(1, 1)] = c(s, 0.0);
    m[(1, 2)] = c(0.0, s);
    m[(2, 1)] = c(0.0, s);
    m[(2, 2)] = c(s, 0.0);
    UnitaryMatrix::new(m).expect("beam splitter is unitary")
}

/// `diag(e^{-iφ/2}, e^{iφ/2}) ⊗ I`.
pub fn phase_shift(phi: f64) -> UnitaryMatrix {
    let lo = Complex64::from_polar(1.0, -0.5 * phi);
    let hi = Complex64::from_polar(1.0, 0.5 * phi);
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = lo;
    m[(1, 1)] = lo;
    m[(2, 2)] = hi;
    m[(3, 3)] = hi;
    UnitaryMatrix::new(m).expect("phase gate is unitary")
}

/// `n` phases spanning `[0, 2π]` inclusive.
pub fn uniform_phase_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| 2.0 * PI * k as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum DetectorConvention {
    /// Probability of finding the register back in `|01>`.
    #[default]
    ProjectInitial,
}

/// Channels applied for a wait time `tau` right after the first splitter.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoherence {
    pub specs: Vec<ChannelSpec>,
    pub tau: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MzConfig {
    pub epsilon: f64,
    pub phase_grid: Vec<f64>,
    pub decoherence: Option<Decoherence>,
    pub detector: DetectorConvention,
}

impl MzConfig {
    pub fn noiseless(epsilon: f64, phase_grid: Vec<f64>) -> Self {
        Self {
            epsilon,
            phase_grid,
            decoherence: None,
            detector: DetectorConvention::ProjectInitial,
        }
    }

    pub fn with_decoherence(&self, specs: Vec<ChannelSpec>, tau: f64) -> Self {
        Self {
            decoherence: Some(Decoherence { specs, tau }),
            ..self.clone()
        }
    }

    /// Non-unital channels are rejected: the detector reads the
    /// probability off the deviation matrix, which is only valid while the
    /// identity part is preserved.
    pub fn validate(&self) -> Result<()> {
        if self.phase_grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::BadEpsilon(self.epsilon));
        }
        if let Some(d) = &self.decoherence {
            if !(d.tau >= 0.0) {
                return Err(Error::NegativeTime(d.tau));
            }
            for spec in &d.specs {
                spec.validate()?;
                if !spec.is_unital() {
                    return Err(Error::UnsupportedChannel(
                        "interferometer readout needs a unital channel".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MzResult {
    pub phi: f64,
    pub p_detect: f64,
    pub final_delta: HermitianMatrix,
    pub p_theory: f64,
}

/// The pseudo-pure input `|0>_A |1>_B`.
pub fn input_state(epsilon: f64) -> Result<DeviationState> {
    pseudo_pure(&basis_state(0, 1), epsilon)
}

/// Input after the first splitter, `(|01> + i|10>)/√2`.
pub fn post_splitter_state(epsilon: f64) -> Result<DeviationState> {
    input_state(epsilon)?.apply_unitary(&beam_splitter())
}

/// States after each stage: input, first splitter, wait, phase, second
/// splitter.
pub fn mz_stages(cfg: &MzConfig, phi: f64) -> Result<[DeviationState; 5]> {
    cfg.validate()?;
    let bs = beam_splitter();
    let input = input_state(cfg.epsilon)?;
    let split = input.apply_unitary(&bs)?;
    let waited = match &cfg.decoherence {
        Some(d) => apply_channels(&split, &d.specs, d.tau)?,
        None => split.clone(),
    };
    let shifted = waited.apply_unitary(&phase_shift(phi))?;
    let out = shifted.apply_unitary(&bs.adjoint())?;
    Ok([input, split, waited, shifted, out])
}

/// `<01|Δρ|01> + 1/4`, the detection probability of a pseudo-pure register.
pub fn detection_probability(delta: &HermitianMatrix) -> f64 {
    delta.get(DETECTED, DETECTED).re + 0.25
}

pub fn mz_run(cfg: &MzConfig, phi: f64) -> Result<MzResult> {
    let [.., out] = mz_stages(cfg, phi)?;
    let p_detect = match cfg.detector {
        DetectorConvention::ProjectInitial => detection_probability(out.delta()),
    };
    Ok(MzResult {
        phi,
        p_detect,
        final_delta: out.delta().clone(),
        p_theory: (0.5 * phi).cos().powi(2),
    })
}

pub fn phase_sweep(cfg: &MzConfig) -> Result<Vec<MzResult>> {
    cfg.validate()?;
    cfg.phase_grid.iter().map(|&phi| mz_run(cfg, phi)).collect()
}

/// Fringe contrast `(p_max - p_min)/(p_max + p_min)` over a sweep covering
/// a full period.
pub fn visibility(sweep: &[MzResult]) -> Result<f64> {
    if sweep.len() < MIN_SWEEP_POINTS {
        return Err(Error::InsufficientSweep);
    }
    let lo_phi = sweep.iter().map(|r| r.phi).fold(f64::INFINITY, f64::min);
    let hi_phi = sweep.iter().map(|r| r.phi).fold(f64::NEG_INFINITY, f64::max);
    if !(hi_phi - lo_phi >= 2.0 * PI - 1e-12) {
        return Err(Error::InsufficientSweep);
    }
    let p_max = sweep.iter().map(|r| r.p_detect).fold(f64::NEG_INFINITY, f64::max);
    let p_min = sweep.iter().map(|r| r.p_detect).fold(f64::INFINITY, f64::min);
    if p_max + p_min <= 0.0 {
        return Ok(0.0);
    }
    Ok(((p_max - p_min) / (p_max + p_min)).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordVisibilityPoint {
    pub tau: f64,
    /// Symmetric quantum correlation of the waited state, in `ε²/ln 2` bits.
    pub discord: f64,
    pub visibility: f64,
}

/// For each wait time: the quantum correlation of the state left after the
/// first splitter and the wait, and the fringe visibility when the
/// interferometer is completed with that wait.
pub fn discord_visibility_experiment(
    tau_grid: &[f64],
    specs: &[ChannelSpec],
    cfg: &MzConfig,
    opt: &OptimizerConfig,
) -> Result<Vec<DiscordVisibilityPoint>> {
    if tau_grid.iter().any(|&t| !(t >= 0.0)) || tau_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::UnsortedTimes);
    }
    let split = post_splitter_state(cfg.epsilon)?;
    tau_grid
        .iter()
        .map(|&tau| {
            let waited = apply_channels(&split, specs, tau)?;
            let discord = quantum_correlation_symmetric(&waited, opt)?.quantum;
            let sweep = phase_sweep(&cfg.with_decoherence(specs.to_vec(), tau))?;
            Ok(DiscordVisibilityPoint {
                tau,
                discord,
                visibility: visibility(&sweep)?,
            })
        })
        .collect()
}
