//! Monte Carlo experiment drivers: each one reproduces a limit law of the
//! model at desk scale, compares against its closed-form target, and emits a
//! structured report (JSON plus a per-trial CSV companion).
//!
//! Reports are pure functions of `(config, seed)`: trials draw from disjoint
//! streams keyed by trial index, results are collected in trial order, and
//! aggregates are folded serially, so worker count never changes a byte.

pub mod connectedness;
pub mod critical;
pub mod defaults;
pub mod depoissonization;
pub mod fluid;
pub mod giant;
pub mod giant_clt;
pub mod kc;
pub mod tau_clt;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stochastic::RandomStream;

/// The experiment families the toolkit ships.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Fluid,
    Giant,
    GiantClt,
    Kc,
    Critical,
    TauClt,
    Connectedness,
    Depoissonize,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Fluid => "fluid",
            ExperimentKind::Giant => "giant",
            ExperimentKind::GiantClt => "giant-clt",
            ExperimentKind::Kc => "kc",
            ExperimentKind::Critical => "critical",
            ExperimentKind::TauClt => "tau-clt",
            ExperimentKind::Connectedness => "connectedness",
            ExperimentKind::Depoissonize => "depoissonize",
        }
    }
}

/// Full description of one experiment run. Serialized verbatim into the
/// report; execution-only knobs (worker count) are excluded so reports stay
/// byte-identical across pool sizes.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    /// Report name; also the output file stem.
    pub name: String,
    pub kind: ExperimentKind,
    /// Core sizes; single entry for most experiments, several where a
    /// cross-size check is part of the verdicts.
    pub n_grid: Vec<usize>,
    /// Supercritical parameter (p = c/n) or log-regime offset, by experiment.
    pub c: f64,
    /// Connectedness sweeps several offsets in one run.
    pub c_grid: Vec<f64>,
    /// Critical-window parameter.
    pub lambda: f64,
    /// Direct edge probability for the small-n exact connectedness mode.
    pub p_override: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub k_max_override: Option<usize>,
    /// Multiplies every tolerance; 1.0 is the pinned desk-scale suite.
    pub tolerance_scale: f64,
    #[serde(skip)]
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn validate_common(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_grid.is_empty() {
            return Err(Error::Config("n_grid must be nonempty".into()));
        }
        if !(self.tolerance_scale > 0.0) {
            return Err(Error::Config("tolerance scale must be positive".into()));
        }
        Ok(())
    }

    /// Scaled tolerance helper.
    pub fn tol(&self, base: f64) -> f64 {
        base * self.tolerance_scale
    }
}

/// Per-trial observables in columnar form: row `i` belongs to trial `i` (or
/// a `(grid point, trial)` pair where a grid is swept).
#[derive(Debug, Clone, Serialize)]
pub struct TrialTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl TrialTable {
    pub fn new(columns: &[&str]) -> Self {
        TrialTable {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Vec<f64> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("unknown trial column {name}"));
        self.rows.iter().map(|r| r[idx]).collect()
    }

    /// Column values restricted to rows where `filter_col == filter_value`.
    pub fn column_where(&self, name: &str, filter_col: &str, filter_value: f64) -> Vec<f64> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("unknown trial column {name}"));
        let fidx = self
            .columns
            .iter()
            .position(|c| c == filter_col)
            .unwrap_or_else(|| panic!("unknown trial column {filter_col}"));
        self.rows
            .iter()
            .filter(|r| r[fidx] == filter_value)
            .map(|r| r[idx])
            .collect()
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("trial");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&i.to_string());
            for v in row {
                out.push(',');
                out.push_str(&format_f64(*v));
            }
            out.push('\n');
        }
        out
    }
}

fn format_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// A named scalar computed from the per-trial records.
#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub name: String,
    pub value: f64,
}

/// A theoretical target together with where its value comes from.
#[derive(Debug, Clone, Serialize)]
pub struct Target {
    pub name: String,
    pub value: f64,
    pub provenance: String,
}

/// One pass/fail check of an aggregate against a target.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub observed: f64,
    pub target: f64,
    pub tolerance: f64,
    pub comparison: String,
}

impl Verdict {
    pub fn abs_within(name: &str, observed: f64, target: f64, tolerance: f64) -> Self {
        Verdict {
            name: name.into(),
            passed: (observed - target).abs() <= tolerance,
            observed,
            target,
            tolerance,
            comparison: "abs_diff_le".into(),
        }
    }

    pub fn below(name: &str, observed: f64, limit: f64) -> Self {
        Verdict {
            name: name.into(),
            passed: observed < limit,
            observed,
            target: limit,
            tolerance: 0.0,
            comparison: "lt".into(),
        }
    }

    pub fn at_least(name: &str, observed: f64, floor: f64) -> Self {
        Verdict {
            name: name.into(),
            passed: observed >= floor,
            observed,
            target: floor,
            tolerance: 0.0,
            comparison: "ge".into(),
        }
    }

    pub fn statistic_le(name: &str, statistic: f64, threshold: f64) -> Self {
        Verdict {
            name: name.into(),
            passed: statistic <= threshold,
            observed: statistic,
            target: threshold,
            tolerance: 0.0,
            comparison: "le".into(),
        }
    }

    pub fn in_band(name: &str, observed: f64, lo: f64, hi: f64) -> Self {
        Verdict {
            name: name.into(),
            passed: observed >= lo && observed <= hi,
            observed,
            target: 0.5 * (lo + hi),
            tolerance: 0.5 * (hi - lo),
            comparison: "in_band".into(),
        }
    }
}

/// Structured result of one experiment: config echo, per-trial table,
/// aggregates, targets with provenance, and verdicts. The wall-clock runtime
/// is carried for the summary line but never serialized.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub per_trial: TrialTable,
    pub aggregates: Vec<Aggregate>,
    pub targets: Vec<Target>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn aggregate(&self, name: &str) -> f64 {
        self.aggregates
            .iter()
            .find(|a| a.name == name)
            .unwrap_or_else(|| panic!("unknown aggregate {name}"))
            .value
    }

    pub fn verdict(&self, name: &str) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.name == name)
            .unwrap_or_else(|| panic!("unknown verdict {name}"))
    }

    /// One line per verdict, for the CLI.
    pub fn summary_lines(&self) -> Vec<String> {
        self.verdicts
            .iter()
            .map(|v| {
                format!(
                    "[{}] verdict {}: {} (observed {:.6}, target {:.6} [{}], tol {:.6})",
                    self.experiment,
                    v.name,
                    if v.passed { "PASS" } else { "FAIL" },
                    v.observed,
                    v.target,
                    v.comparison,
                    v.tolerance
                )
            })
            .collect()
    }
}

/// Stream id layout: a small purpose tag in the high bits keeps trial
/// streams from distinct phases of one experiment disjoint.
pub(crate) fn stream_id(domain: u64, index: u64) -> u64 {
    (domain << 48) | index
}

pub(crate) fn effective_workers(workers: usize) -> usize {
    if workers == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        workers
    }
}

/// Run `count` independent trials on a pool of `config.workers` threads.
/// Trial `i` draws from the stream `(seed, stream_id(domain, i))`; results
/// come back in trial order regardless of scheduling.
pub(crate) fn run_trials<T, F>(
    config: &ExperimentConfig,
    domain: u64,
    count: usize,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RandomStream, usize) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(effective_workers(config.workers))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut stream = RandomStream::new(config.seed, stream_id(domain, i as u64));
                f(&mut stream, i)
            })
            .collect()
    })
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub(crate) fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

pub(crate) fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub(crate) fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Dispatch an experiment by its configured kind.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate_common()?;
    let started = Instant::now();
    let mut report = match config.kind {
        ExperimentKind::Fluid => fluid::run(config),
        ExperimentKind::Giant => giant::run(config),
        ExperimentKind::GiantClt => giant_clt::run(config),
        ExperimentKind::Kc => kc::run(config),
        ExperimentKind::Critical => critical::run(config),
        ExperimentKind::TauClt => tau_clt::run(config),
        ExperimentKind::Connectedness => connectedness::run(config),
        ExperimentKind::Depoissonize => depoissonization::run(config),
    }?;
    report.runtime_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Write the JSON report and its CSV companion under `out_dir`; file names
/// derive from the experiment name and seed.
pub fn write_report(report: &ExperimentReport, out_dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(out_dir)?;
    let stem = format!("{}_{}", report.experiment, report.config.seed);
    let json_path = out_dir.join(format!("{stem}.json"));
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let mut f = std::fs::File::create(&json_path)?;
    f.write_all(report.to_json().as_bytes())?;
    let mut f = std::fs::File::create(&csv_path)?;
    f.write_all(report.per_trial.to_csv().as_bytes())?;
    Ok((json_path, csv_path))
}
