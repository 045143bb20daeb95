//! `key = value` run configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qcorr_core::channels::{ChannelKind, ChannelSpec, Locality};
use qcorr_core::optimize::OptimizerConfig;
use qcorr_core::rng::bell_diagonal_eigenvalues;

use crate::error::ConfigError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Experiment {
    EntropyCheck,
    Discord,
    Dynamics,
    Witness,
    MzSweep,
    DiscordVisibility,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::EntropyCheck,
        Experiment::Discord,
        Experiment::Dynamics,
        Experiment::Witness,
        Experiment::MzSweep,
        Experiment::DiscordVisibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::EntropyCheck => "entropy_check",
            Experiment::Discord => "discord",
            Experiment::Dynamics => "dynamics",
            Experiment::Witness => "witness",
            Experiment::MzSweep => "mz_sweep",
            Experiment::DiscordVisibility => "discord_visibility",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

/// Initial state family. Every state is a deviation shape `Δρ` placed at
/// the configured polarization `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateKind {
    BellDiagonal,
    Product01,
    MzAfterSplitter,
    /// Unit-norm random deviation.
    Random,
    /// Random state with diagonal two-body Pauli part and arbitrary local
    /// Bloch vectors.
    RandomLocalDiagonal,
    /// Random mixture of computational basis product states.
    RandomClassical,
}

impl StateKind {
    const ALL: [StateKind; 6] = [
        StateKind::BellDiagonal,
        StateKind::Product01,
        StateKind::MzAfterSplitter,
        StateKind::Random,
        StateKind::RandomLocalDiagonal,
        StateKind::RandomClassical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateKind::BellDiagonal => "bell_diagonal",
            StateKind::Product01 => "product_01",
            StateKind::MzAfterSplitter => "mz_after_splitter",
            StateKind::Random => "random",
            StateKind::RandomLocalDiagonal => "random_local_diagonal",
            StateKind::RandomClassical => "random_classical",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(
            self,
            StateKind::Random | StateKind::RandomLocalDiagonal | StateKind::RandomClassical
        )
    }
}

fn channel_name(kind: Option<ChannelKind>) -> &'static str {
    match kind {
        None => "none",
        Some(ChannelKind::AmplitudeDamping) => "amplitude_damping",
        Some(ChannelKind::PhaseDamping) => "phase_damping",
    }
}

fn locality_name(l: Locality) -> &'static str {
    match l {
        Locality::LocalA => "local_a",
        Locality::LocalB => "local_b",
        Locality::LocalBoth => "local_both",
        Locality::Global => "global",
    }
}

/// Fully validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub experiment: Option<Experiment>,
    pub epsilon: f64,
    pub seed: u64,
    pub grid: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub state: Option<StateKind>,
    pub c: [f64; 3],
    pub samples: usize,
    pub channel: Option<ChannelKind>,
    pub locality: Locality,
    pub gamma: f64,
    pub equilibrium: f64,
    pub t_max: f64,
    pub t_points: usize,
    pub tau_max: f64,
    pub tau_points: usize,
    pub phi_points: usize,
    pub mz_tau: f64,
    pub kink_factor: f64,
    pub witness_threshold: f64,
    pub entropy_points: usize,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            experiment: None,
            epsilon: 1e-5,
            seed: 0,
            grid: 24,
            tol: 1e-8,
            max_iter: 5000,
            state: None,
            c: [0.6, 0.18, 0.2],
            samples: 1,
            channel: None,
            locality: Locality::LocalBoth,
            gamma: 1.0,
            equilibrium: 0.0,
            t_max: 2.0,
            t_points: 500,
            tau_max: 10.0,
            tau_points: 20,
            phi_points: 101,
            mz_tau: 0.0,
            kink_factor: 10.0,
            witness_threshold: 1e-8,
            entropy_points: 5,
            output: None,
        }
    }
}

/// Accepted keys with a one-line description, in echo order.
pub const KEYS: &[(&str, &str)] = &[
    (
        "experiment",
        "entropy_check | discord | dynamics | witness | mz_sweep | discord_visibility",
    ),
    ("epsilon", "polarization in (0, 1] (default 1e-5)"),
    ("seed", "unsigned seed for all random draws (default 0)"),
    ("grid", "optimizer grid points per angle, >= 2 (default 24)"),
    ("tol", "optimizer refinement tolerance, > 0 (default 1e-8)"),
    ("max_iter", "optimizer refinement iteration cap (default 5000)"),
    (
        "state",
        "bell_diagonal | product_01 | mz_after_splitter | random | random_local_diagonal | random_classical",
    ),
    ("c1", "Bell-diagonal correlation c1 (default 0.6)"),
    ("c2", "Bell-diagonal correlation c2 (default 0.18)"),
    ("c3", "Bell-diagonal correlation c3 (default 0.2)"),
    ("samples", "number of random states for random state kinds (default 1)"),
    ("channel", "none | amplitude_damping | phase_damping (default none)"),
    (
        "locality",
        "local_a | local_b | local_both | global (default local_both)",
    ),
    ("gamma", "channel rate, >= 0 (default 1)"),
    (
        "equilibrium",
        "amplitude damping excited population in [0, 1] (default 0)",
    ),
    ("t_max", "dynamics: final time (default 2)"),
    ("t_points", "dynamics: number of times (default 500)"),
    ("tau_max", "discord_visibility: final wait time (default 10)"),
    ("tau_points", "discord_visibility: number of wait times (default 20)"),
    ("phi_points", "phases over [0, 2pi] inclusive (default 101)"),
    ("mz_tau", "mz_sweep: wait time after the first splitter (default 0)"),
    ("kink_factor", "sudden-change threshold multiplier, > 0 (default 10)"),
    (
        "witness_threshold",
        "W at or below which a state is flagged classical (default 1e-8)",
    ),
    (
        "entropy_points",
        "entropy_check: epsilon decades 1e-1, 1e-2, ... (default 5)",
    ),
    ("output", "CSV path; stdout when absent"),
];

/// The `--help` key listing.
pub fn keys_help() -> String {
    let width = KEYS.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::from("Config keys (`key = value`, `#` starts a comment):\n");
    for (k, d) in KEYS {
        s.push_str(&format!("  {k:width$}  {d}\n"));
    }
    s.push_str(
        "\nPer experiment:\n  \
         entropy_check       state, samples, entropy_points\n  \
         discord             state, c1..c3, samples, grid, tol\n  \
         dynamics            state, c1..c3, channel, locality, gamma, equilibrium, t_max, t_points, kink_factor\n  \
         witness             state, c1..c3, samples, witness_threshold\n  \
         mz_sweep            phi_points, channel, locality, gamma, mz_tau\n  \
         discord_visibility  channel, locality, gamma, tau_max, tau_points, phi_points\n",
    );
    s
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse()
        .map_err(|_| ConfigError::invalid(key, format!("cannot parse `{v}`")))
}

fn require(key: &str, ok: bool, what: &str) -> Result<(), ConfigError> {
    if ok {
        Ok(())
    } else {
        Err(ConfigError::invalid(key, what.to_string()))
    }
}

/// Parses and validates a configuration. Missing keys take their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen = BTreeSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::syntax(n + 1, format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError::unknown(key));
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::invalid(key, "given more than once".into()));
        }
        set(&mut cfg, key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn set(cfg: &mut RunConfig, key: &str, v: &str) -> Result<(), ConfigError> {
    match key {
        "experiment" => cfg.experiment = Some(v.parse().map_err(|e| ConfigError::invalid(key, e))?),
        "epsilon" => cfg.epsilon = parse_value(key, v)?,
        "seed" => cfg.seed = parse_value(key, v)?,
        "grid" => cfg.grid = parse_value(key, v)?,
        "tol" => cfg.tol = parse_value(key, v)?,
        "max_iter" => cfg.max_iter = parse_value(key, v)?,
        "state" => {
            cfg.state = Some(
                StateKind::ALL
                    .into_iter()
                    .find(|s| s.name() == v)
                    .ok_or_else(|| ConfigError::invalid(key, format!("unknown state `{v}`")))?,
            )
        }
        "c1" => cfg.c[0] = parse_value(key, v)?,
        "c2" => cfg.c[1] = parse_value(key, v)?,
        "c3" => cfg.c[2] = parse_value(key, v)?,
        "samples" => cfg.samples = parse_value(key, v)?,
        "channel" => {
            cfg.channel = match v {
                "none" => None,
                "amplitude_damping" => Some(ChannelKind::AmplitudeDamping),
                "phase_damping" => Some(ChannelKind::PhaseDamping),
                _ => return Err(ConfigError::invalid(key, format!("unknown channel `{v}`"))),
            }
        }
        "locality" => {
            cfg.locality = match v {
                "local_a" => Locality::LocalA,
                "local_b" => Locality::LocalB,
                "local_both" => Locality::LocalBoth,
                "global" => Locality::Global,
                _ => return Err(ConfigError::invalid(key, format!("unknown locality `{v}`"))),
            }
        }
        "gamma" => cfg.gamma = parse_value(key, v)?,
        "equilibrium" => cfg.equilibrium = parse_value(key, v)?,
        "t_max" => cfg.t_max = parse_value(key, v)?,
        "t_points" => cfg.t_points = parse_value(key, v)?,
        "tau_max" => cfg.tau_max = parse_value(key, v)?,
        "tau_points" => cfg.tau_points = parse_value(key, v)?,
        "phi_points" => cfg.phi_points = parse_value(key, v)?,
        "mz_tau" => cfg.mz_tau = parse_value(key, v)?,
        "kink_factor" => cfg.kink_factor = parse_value(key, v)?,
        "witness_threshold" => cfg.witness_threshold = parse_value(key, v)?,
        "entropy_points" => cfg.entropy_points = parse_value(key, v)?,
        "output" => cfg.output = Some(PathBuf::from(v)),
        _ => unreachable!("key list checked by the caller"),
    }
    Ok(())
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        require(
            "epsilon",
            self.epsilon > 0.0 && self.epsilon <= 1.0,
            "must lie in (0, 1]",
        )?;
        require("grid", self.grid >= 2, "must be at least 2")?;
        require("tol", self.tol > 0.0 && self.tol.is_finite(), "must be positive")?;
        require("max_iter", self.max_iter >= 1, "must be positive")?;
        for (i, ci) in self.c.iter().enumerate() {
            require(
                ["c1", "c2", "c3"][i],
                ci.is_finite() && ci.abs() <= 1.0,
                "must lie in [-1, 1]",
            )?;
        }
        let min = bell_diagonal_eigenvalues(&self.c)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        require(
            "c1",
            min >= -1e-12,
            "c1, c2, c3 give a negative Bell-diagonal eigenvalue",
        )?;
        require("samples", self.samples >= 1, "must be positive")?;
        require(
            "gamma",
            self.gamma >= 0.0 && self.gamma.is_finite(),
            "must be non-negative",
        )?;
        require(
            "equilibrium",
            (0.0..=1.0).contains(&self.equilibrium),
            "must lie in [0, 1]",
        )?;
        require(
            "t_max",
            self.t_max >= 0.0 && self.t_max.is_finite(),
            "must be non-negative",
        )?;
        require("t_points", self.t_points >= 1, "must be positive")?;
        require(
            "tau_max",
            self.tau_max >= 0.0 && self.tau_max.is_finite(),
            "must be non-negative",
        )?;
        require("tau_points", self.tau_points >= 1, "must be positive")?;
        require("phi_points", self.phi_points >= 1, "must be positive")?;
        require(
            "mz_tau",
            self.mz_tau >= 0.0 && self.mz_tau.is_finite(),
            "must be non-negative",
        )?;
        require("kink_factor", self.kink_factor > 0.0, "must be positive")?;
        require(
            "witness_threshold",
            self.witness_threshold >= 0.0,
            "must be non-negative",
        )?;
        require(
            "entropy_points",
            (1..=15).contains(&self.entropy_points),
            "must lie in 1..=15",
        )?;
        if let Some(kind) = self.channel {
            require(
                "locality",
                !(kind == ChannelKind::AmplitudeDamping && self.locality == Locality::Global),
                "amplitude damping cannot be global",
            )?;
        }
        let state = self.state_kind();
        if state == StateKind::Random || self.experiment == Some(Experiment::EntropyCheck) {
            require(
                "epsilon",
                state != StateKind::Random || self.epsilon <= 0.8,
                "random unit-norm deviations need epsilon <= 0.8",
            )?;
        }
        if self.experiment == Some(Experiment::DiscordVisibility) {
            require(
                "phi_points",
                self.phi_points >= 16,
                "visibility needs at least 16 phases",
            )?;
        }
        if matches!(
            self.experiment,
            Some(Experiment::MzSweep | Experiment::DiscordVisibility)
        ) {
            if let Some(spec) = self.channel_spec() {
                require(
                    "channel",
                    spec.is_unital(),
                    "the interferometer readout needs a unital channel",
                )?;
            }
        }
        Ok(())
    }

    /// State used by the experiment: the configured one or the
    /// experiment's default.
    pub fn state_kind(&self) -> StateKind {
        self.state.unwrap_or(match self.experiment {
            Some(Experiment::EntropyCheck) => StateKind::Random,
            Some(Experiment::MzSweep | Experiment::DiscordVisibility) => StateKind::MzAfterSplitter,
            _ => StateKind::BellDiagonal,
        })
    }

    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            grid_points: self.grid,
            tolerance: self.tol,
            max_iterations: self.max_iter,
            ..OptimizerConfig::default()
        }
    }

    pub fn channel_spec(&self) -> Option<ChannelSpec> {
        self.channel.map(|kind| ChannelSpec {
            kind,
            locality: self.locality,
            rate: self.gamma,
            equilibrium: self.equilibrium,
        })
    }

    /// `key = value` lines of the resolved configuration, in [`KEYS`] order.
    /// The output path is left out so the CSV does not depend on where it
    /// is written.
    pub fn echo(&self) -> Vec<String> {
        let value = |key: &str| -> String {
            match key {
                "experiment" => self.experiment.map_or("unset".into(), |e| e.name().into()),
                "epsilon" => self.epsilon.to_string(),
                "seed" => self.seed.to_string(),
                "grid" => self.grid.to_string(),
                "tol" => self.tol.to_string(),
                "max_iter" => self.max_iter.to_string(),
                "state" => self.state_kind().name().into(),
                "c1" => self.c[0].to_string(),
                "c2" => self.c[1].to_string(),
                "c3" => self.c[2].to_string(),
                "samples" => self.samples.to_string(),
                "channel" => channel_name(self.channel).into(),
                "locality" => locality_name(self.locality).into(),
                "gamma" => self.gamma.to_string(),
                "equilibrium" => self.equilibrium.to_string(),
                "t_max" => self.t_max.to_string(),
                "t_points" => self.t_points.to_string(),
                "tau_max" => self.tau_max.to_string(),
                "tau_points" => self.tau_points.to_string(),
                "phi_points" => self.phi_points.to_string(),
                "mz_tau" => self.mz_tau.to_string(),
                "kink_factor" => self.kink_factor.to_string(),
                "witness_threshold" => self.witness_threshold.to_string(),
                "entropy_points" => self.entropy_points.to_string(),
                _ => unreachable!(),
            }
        };
        KEYS.iter()
            .filter(|(k, _)| *k != "output")
            .map(|(k, _)| format!("{k} = {}", value(k)))
            .collect()
    }
}
