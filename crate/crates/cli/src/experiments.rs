//! Experiment runners producing CSV text.

use std::io::Write;

use qcorr_core::channels::{correlation_trajectory, detect_sudden_change, CorrelationSeries};
use qcorr_core::correlations::{
    entropy_expansion, quantum_correlation_symmetric, von_neumann_entropy, Marginal, Units,
};
use qcorr_core::interferometer::{
    discord_visibility_experiment, phase_sweep, post_splitter_state, uniform_phase_grid, visibility, MzConfig,
    MIN_SWEEP_POINTS,
};
use qcorr_core::qlin::{basis_state, pseudo_pure};
use qcorr_core::rng::{self, streams};
use qcorr_core::witness::{circuit_convention, random_witness_coefficients, witness_of_deviation, WitnessVerdict};
use qcorr_core::{DeviationState, HermitianMatrix};

use crate::config::{Experiment, RunConfig, StateKind};
use crate::error::CliError;

/// CSV text plus any non-fatal numerical warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub csv: String,
    pub warnings: Vec<String>,
}

/// Fixed-width scientific notation with 12 significant digits; `-0` is
/// printed as `0`.
pub fn format_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn linspace(max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n).map(|k| max * k as f64 / (n - 1) as f64).collect()
}

fn states(cfg: &RunConfig) -> Result<Vec<DeviationState>, CliError> {
    let eps = cfg.epsilon;
    let quarter = HermitianMatrix::identity(4).scale(0.25);
    let mut r = rng::stream(cfg.seed, streams::RANDOM_STATES);
    let out = match cfg.state_kind() {
        StateKind::BellDiagonal => vec![DeviationState::bell_diagonal(cfg.c, eps)?],
        StateKind::Product01 => vec![pseudo_pure(&basis_state(0, 1), eps)?],
        StateKind::MzAfterSplitter => vec![post_splitter_state(eps)?],
        StateKind::Random => (0..cfg.samples).map(|_| rng::deviation_state(&mut r, eps)).collect(),
        StateKind::RandomLocalDiagonal => (0..cfg.samples)
            .map(|_| DeviationState::new(eps, &rng::local_diagonal_state(&mut r) - &quarter))
            .collect::<Result<_, _>>()?,
        StateKind::RandomClassical => (0..cfg.samples)
            .map(|_| DeviationState::new(eps, &rng::classical_state(&mut r) - &quarter))
            .collect::<Result<_, _>>()?,
    };
    Ok(out)
}

struct Table {
    comments: Vec<String>,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(cfg: &RunConfig, _experiment: Experiment, header: Vec<&'static str>) -> Self {
        let mut comments = vec![format!("qcorr {}", env!("CARGO_PKG_VERSION"))];
        comments.extend(cfg.echo());
        Self {
            comments,
            header,
            rows: Vec::new(),
        }
    }

    fn note(&mut self, line: String) {
        self.comments.push(line);
    }

    fn render(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        for c in &self.comments {
            writeln!(buf, "# {c}").expect("write to memory");
        }
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            let row_err = |e: csv::Error| CliError::Io {
                path: "<csv>".into(),
                source: std::io::Error::other(e),
            };
            w.write_record(&self.header).map_err(row_err)?;
            for row in &self.rows {
                w.write_record(row).map_err(row_err)?;
            }
            w.flush().map_err(|e| CliError::Io {
                path: "<csv>".into(),
                source: e,
            })?;
        }
        Ok(String::from_utf8(buf).expect("ascii output"))
    }
}

/// Runs `experiment` (falling back to the one named in the config).
pub fn run_experiment(cfg: &RunConfig, experiment: Experiment) -> Result<RunOutput, CliError> {
    let cfg = RunConfig {
        experiment: Some(experiment),
        ..cfg.clone()
    };
    cfg.validate()?;
    let mut warnings = Vec::new();
    let table = match experiment {
        Experiment::EntropyCheck => entropy_check(&cfg)?,
        Experiment::Discord => discord(&cfg, &mut warnings)?,
        Experiment::Dynamics => dynamics(&cfg, &mut warnings)?,
        Experiment::Witness => witness(&cfg)?,
        Experiment::MzSweep => mz_sweep(&cfg)?,
        Experiment::DiscordVisibility => discord_vs_visibility(&cfg, &mut warnings)?,
    };
    Ok(RunOutput {
        csv: table.render()?,
        warnings,
    })
}

fn entropy_check(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(
        cfg,
        Experiment::EntropyCheck,
        vec!["epsilon", "s_exact", "s_expansion", "abs_err"],
    );
    t.note("units: bits; epsilon runs over decades 1e-1, 1e-2, ... for each state".into());
    for s in states(cfg)? {
        for k in 1..=cfg.entropy_points {
            let eps = 10f64.powi(-(k as i32));
            let s = s.with_epsilon(eps)?;
            let exact = von_neumann_entropy(&s.full_density())?;
            let approx = entropy_expansion(&s, Marginal::Joint)?;
            t.rows.push(vec![
                format_number(eps),
                format_number(exact),
                format_number(approx),
                format_number((exact - approx).abs()),
            ]);
        }
    }
    Ok(t)
}

fn discord(cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<Table, CliError> {
    let mut t = Table::new(
        cfg,
        Experiment::Discord,
        vec!["total", "classical", "quantum", "theta_a", "phi_a", "theta_b", "phi_b"],
    );
    t.note(format!(
        "units: {}; angles in radians",
        Units::Epsilon2OverLn2Bits.label()
    ));
    for (i, s) in states(cfg)?.iter().enumerate() {
        let tr = quantum_correlation_symmetric(s, &cfg.optimizer())?;
        if tr.warning {
            warnings.push(format!("state {i}: optimizer refinement did not converge"));
        }
        let b = tr.basis_argmax;
        t.rows.push(
            [
                tr.total,
                tr.classical,
                tr.quantum,
                b.theta_a,
                b.phi_a,
                b.theta_b,
                b.phi_b,
            ]
            .map(format_number)
            .to_vec(),
        );
    }
    Ok(t)
}

fn dynamics(cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<Table, CliError> {
    let mut t = Table::new(cfg, Experiment::Dynamics, vec!["t", "total", "classical", "quantum"]);
    t.note(format!("units: {}", Units::Epsilon2OverLn2Bits.label()));
    let s0 = states(cfg)?.swap_remove(0);
    let specs: Vec<_> = cfg.channel_spec().into_iter().collect();
    let times = linspace(cfg.t_max, cfg.t_points);
    let traj = correlation_trajectory(&s0, &specs, &times, &cfg.optimizer())?;
    if traj.len() >= 5 {
        for (name, which) in [
            ("classical", CorrelationSeries::Classical),
            ("quantum", CorrelationSeries::Quantum),
        ] {
            let found = detect_sudden_change(&traj, which, cfg.kink_factor)?;
            t.note(format!(
                "sudden_change_{name} = {}",
                found.map_or("none".into(), format_number)
            ));
        }
    }
    for p in &traj {
        if p.triple.warning {
            warnings.push(format!("t = {}: optimizer refinement did not converge", p.t));
        }
        t.rows.push(
            [p.t, p.triple.total, p.triple.classical, p.triple.quantum]
                .map(format_number)
                .to_vec(),
        );
    }
    Ok(t)
}

fn witness(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(
        cfg,
        Experiment::Witness,
        vec!["o1", "o2", "o3", "o4", "w_value", "classical_flag"],
    );
    let coeffs = random_witness_coefficients(cfg.seed);
    t.note("units: o_i = Tr(delta O_i), magnetizations in units of epsilon".into());
    t.note(format!(
        "z = ({}, {}, {}); w = ({}, {}, {})",
        format_number(coeffs.z[0]),
        format_number(coeffs.z[1]),
        format_number(coeffs.z[2]),
        format_number(coeffs.w[0]),
        format_number(coeffs.w[1]),
        format_number(coeffs.w[2]),
    ));
    t.note(format!("circuit = {}", circuit_convention().describe()));
    t.note("classical_flag: true = certified classical, false = quantum (Bell-diagonal), else inconclusive".into());
    for s in states(cfg)? {
        let r = witness_of_deviation(&s, &coeffs, cfg.witness_threshold)?;
        let mut row: Vec<String> = r.o_values.iter().map(|&o| format_number(o)).collect();
        row.push(format_number(r.w_value));
        row.push(
            match r.verdict {
                WitnessVerdict::Classical => "true",
                WitnessVerdict::Quantum => "false",
                WitnessVerdict::Inconclusive => "inconclusive",
            }
            .into(),
        );
        t.rows.push(row);
    }
    Ok(t)
}

fn mz_config(cfg: &RunConfig) -> MzConfig {
    MzConfig::noiseless(cfg.epsilon, uniform_phase_grid(cfg.phi_points))
}

fn mz_sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(cfg, Experiment::MzSweep, vec!["phi_rad", "p_theory", "p_sim"]);
    t.note("units: phase in radians; probabilities of detecting |01>".into());
    let mut mz = mz_config(cfg);
    if let Some(spec) = cfg.channel_spec() {
        mz = mz.with_decoherence(vec![spec], cfg.mz_tau);
    }
    let sweep = phase_sweep(&mz)?;
    if sweep.len() >= MIN_SWEEP_POINTS {
        t.note(format!("visibility = {}", format_number(visibility(&sweep)?)));
    }
    for r in &sweep {
        t.rows.push([r.phi, r.p_theory, r.p_detect].map(format_number).to_vec());
    }
    Ok(t)
}

fn discord_vs_visibility(cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<Table, CliError> {
    let mut t = Table::new(cfg, Experiment::DiscordVisibility, vec!["tau", "discord", "visibility"]);
    t.note(format!("units: discord in {}", Units::Epsilon2OverLn2Bits.label()));
    let specs: Vec<_> = cfg.channel_spec().into_iter().collect();
    let taus = linspace(cfg.tau_max, cfg.tau_points);
    let pts = discord_visibility_experiment(&taus, &specs, &mz_config(cfg), &cfg.optimizer())?;
    // the discord side is rerun only to surface convergence warnings
    let split = post_splitter_state(cfg.epsilon)?;
    for p in &pts {
        let s = qcorr_core::channels::apply_channels(&split, &specs, p.tau)?;
        if quantum_correlation_symmetric(&s, &cfg.optimizer())?.warning {
            warnings.push(format!("tau = {}: optimizer refinement did not converge", p.tau));
        }
        t.rows
            .push([p.tau, p.discord, p.visibility].map(format_number).to_vec());
    }
    Ok(t)
}
