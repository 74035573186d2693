//! Command-line frontend: parses flags and flat key-value config files,
//! dispatches experiments, and writes reports and plot-ready CSV.
//!
//! Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 i/o failure,
//! 64 usage or configuration error.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::analysis::beta_solver;
use crate::error::{Error, Result};
use crate::experiments::{self, defaults, ExperimentConfig};
use crate::exploration::{analytic_walk, explore_graph_walk, AnalyticRoute};
use crate::graph::{sample_fixed_core, sample_poissonized_core, ModelParams};
use crate::stochastic::RandomStream;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FAILURE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "poisson-er",
    version,
    about = "Simulation toolkit for Poissonized Erdos-Renyi random graphs",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base seed; per-trial streams derive from it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Number of Monte Carlo trials.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Worker threads (0 = all cores). Never changes report content.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Report output directory.
    #[arg(long, global = true, env = "POISSON_ER_OUT_DIR")]
    out_dir: Option<PathBuf>,

    /// Flat key-value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Multiplies every verdict tolerance.
    #[arg(long, global = true)]
    tolerance_scale: Option<f64>,

    /// Core size n.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Supercritical parameter (p = c/n) or log-regime offset.
    #[arg(long, global = true)]
    c: Option<f64>,

    /// Critical-window parameter.
    #[arg(long, global = true)]
    lambda: Option<f64>,

    /// Direct edge probability, where supported.
    #[arg(long, global = true)]
    p: Option<f64>,

    /// Poisson mean of the core size (sample/walk).
    #[arg(long, global = true)]
    alpha: Option<f64>,

    /// Analytic walk horizon.
    #[arg(long, global = true)]
    k_max: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a core and write its edge list (debug format).
    Sample,
    /// Build one Lukasiewicz walk and write k,S_k,is_record CSV.
    Walk {
        /// analytic (default) or graph.
        #[arg(long, default_value = "analytic")]
        source: String,
    },
    /// Print the first positive root of 1 - exp(-c t) - t = 0.
    SolveBeta,
    /// Fluid-limit sup-norm experiment.
    Fluid,
    /// Giant-component fractions vs beta(c).
    Giant,
    /// CLT for the giant excursion length.
    GiantClt,
    /// Geometric law of the pre-giant component count.
    Kc,
    /// Near-critical rescaled-walk comparison.
    Critical,
    /// Hitting-time CLT in the log regime.
    TauClt,
    /// Connectedness probability, fixed-size and Poissonized arms.
    Connectedness,
    /// Poisson sandwich and induced-subgraph domination.
    Depoissonize,
    /// Run the full default suite.
    All,
}

/// Key-value overrides shared by config files and flags; flags win.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub n: Option<usize>,
    pub c: Option<f64>,
    pub c_grid: Option<Vec<f64>>,
    pub n_grid: Option<Vec<usize>>,
    pub lambda: Option<f64>,
    pub p: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub k_max: Option<usize>,
    pub tolerance_scale: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, config: &mut ExperimentConfig) {
        if let Some(n) = self.n {
            config.n_grid = vec![n];
        }
        if let Some(grid) = &self.n_grid {
            config.n_grid = grid.clone();
        }
        if let Some(c) = self.c {
            config.c = c;
            // A single c overrides a preset sweep.
            if !config.c_grid.is_empty() {
                config.c_grid = vec![c];
            }
        }
        if let Some(grid) = &self.c_grid {
            config.c_grid = grid.clone();
        }
        if let Some(lambda) = self.lambda {
            config.lambda = lambda;
        }
        if let Some(p) = self.p {
            config.p_override = Some(p);
        }
        if let Some(trials) = self.trials {
            config.trials = trials;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(workers) = self.workers {
            config.workers = workers;
        }
        if let Some(k) = self.k_max {
            config.k_max_override = Some(k);
        }
        if let Some(s) = self.tolerance_scale {
            config.tolerance_scale = s;
        }
    }

    /// Later overrides win entry by entry.
    pub fn merged_under(mut self, stronger: Overrides) -> Overrides {
        macro_rules! take {
            ($field:ident) => {
                if stronger.$field.is_some() {
                    self.$field = stronger.$field;
                }
            };
        }
        take!(n);
        take!(c);
        take!(c_grid);
        take!(n_grid);
        take!(lambda);
        take!(p);
        take!(trials);
        take!(seed);
        take!(workers);
        take!(k_max);
        take!(tolerance_scale);
        take!(out_dir);
        self
    }
}

/// Parse the flat `key = value` config format: one entry per line, `#`
/// comments and blank lines allowed.
pub fn parse_config_file(text: &str) -> Result<Overrides> {
    let mut overrides = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| Error::Config(format!("line {}: bad {what}: {value}", lineno + 1));
        match key {
            "n" => overrides.n = Some(value.parse().map_err(|_| bad("integer"))?),
            "n_grid" => {
                overrides.n_grid = Some(
                    value
                        .split(',')
                        .map(|v| v.trim().parse().map_err(|_| bad("integer list")))
                        .collect::<Result<Vec<usize>>>()?,
                )
            }
            "c" => overrides.c = Some(value.parse().map_err(|_| bad("number"))?),
            "c_grid" => {
                overrides.c_grid = Some(
                    value
                        .split(',')
                        .map(|v| v.trim().parse().map_err(|_| bad("number list")))
                        .collect::<Result<Vec<f64>>>()?,
                )
            }
            "lambda" => overrides.lambda = Some(value.parse().map_err(|_| bad("number"))?),
            "p" => overrides.p = Some(value.parse().map_err(|_| bad("number"))?),
            "trials" => overrides.trials = Some(value.parse().map_err(|_| bad("integer"))?),
            "seed" => overrides.seed = Some(value.parse().map_err(|_| bad("integer"))?),
            "workers" => overrides.workers = Some(value.parse().map_err(|_| bad("integer"))?),
            "k_max" => overrides.k_max = Some(value.parse().map_err(|_| bad("integer"))?),
            "tolerance_scale" => {
                overrides.tolerance_scale = Some(value.parse().map_err(|_| bad("number"))?)
            }
            "out_dir" => overrides.out_dir = Some(PathBuf::from(value)),
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown config key {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(overrides)
}

/// Entry point for the `poisson-er` binary.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Error::Io(e)) => {
            eprintln!("poisson-er: i/o error: {e}");
            EXIT_IO
        }
        Err(e) => {
            eprintln!("poisson-er: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let mut overrides = Overrides {
        n: cli.n,
        c: cli.c,
        lambda: cli.lambda,
        p: cli.p,
        trials: cli.trials,
        seed: cli.seed,
        workers: cli.workers,
        k_max: cli.k_max,
        tolerance_scale: cli.tolerance_scale,
        out_dir: cli.out_dir.clone(),
        ..Overrides::default()
    };
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)?;
        overrides = parse_config_file(&text)?.merged_under(overrides);
    }
    let out_dir = overrides
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("reports"));
    let seed = overrides.seed.unwrap_or(defaults::DEFAULT_SEED);

    match &cli.command {
        Command::Sample => run_sample(cli, &overrides, &out_dir, seed),
        Command::Walk { source } => run_walk(cli, &overrides, &out_dir, seed, source),
        Command::SolveBeta => {
            let c = cli
                .c
                .or(overrides.c)
                .ok_or_else(|| Error::Config("solve-beta requires --c".into()))?;
            let solution = beta_solver(c, 1e-12)?;
            println!("beta({c}) = {:.9}", solution.beta);
            Ok(EXIT_OK)
        }
        Command::All => {
            let mut all_passed = true;
            for mut config in defaults::full_suite() {
                overrides.apply(&mut config);
                let report = experiments::run_experiment(&config)?;
                let (json_path, _) = experiments::write_report(&report, &out_dir)?;
                print_report_summary(&report, &json_path);
                all_passed &= report.all_passed();
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_VERDICT_FAILURE })
        }
        other => {
            let name = match other {
                Command::Fluid => "fluid",
                Command::Giant => "giant",
                Command::GiantClt => "giant-clt",
                Command::Kc => "kc",
                Command::Critical => "critical",
                Command::TauClt => "tau-clt",
                Command::Connectedness => "connectedness",
                Command::Depoissonize => "depoissonize",
                _ => unreachable!("handled above"),
            };
            let mut config = defaults::config_by_name(name).expect("known preset");
            overrides.apply(&mut config);
            let report = experiments::run_experiment(&config)?;
            let (json_path, _) = experiments::write_report(&report, &out_dir)?;
            print_report_summary(&report, &json_path);
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_VERDICT_FAILURE })
        }
    }
}

fn print_report_summary(report: &experiments::ExperimentReport, json_path: &Path) {
    for line in report.summary_lines() {
        println!("{line}");
    }
    if report.verdicts.is_empty() {
        println!("[{}] no verdicts (report only)", report.experiment);
    }
    println!(
        "[{}] report {} ({:.2}s)",
        report.experiment,
        json_path.display(),
        report.runtime_seconds
    );
}

fn run_sample(cli: &Cli, overrides: &Overrides, out_dir: &Path, seed: u64) -> Result<i32> {
    let p = cli
        .p
        .or(overrides.p)
        .ok_or_else(|| Error::Config("sample requires --p".into()))?;
    let mut stream = RandomStream::new(seed, 0);
    let graph = if let Some(alpha) = cli.alpha {
        sample_poissonized_core(&mut stream, &ModelParams::new(alpha, p)?)?
    } else {
        let n = cli
            .n
            .or(overrides.n)
            .ok_or_else(|| Error::Config("sample requires --n or --alpha".into()))?;
        sample_fixed_core(&mut stream, n, p)?
    };
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(format!("sample_{seed}.txt"));
    let mut f = std::fs::File::create(&path)?;
    f.write_all(graph.to_edge_list().as_bytes())?;
    println!(
        "wrote {} ({} vertices, {} edges)",
        path.display(),
        graph.n_vertices(),
        graph.edge_count()
    );
    Ok(EXIT_OK)
}

fn run_walk(
    cli: &Cli,
    overrides: &Overrides,
    out_dir: &Path,
    seed: u64,
    source: &str,
) -> Result<i32> {
    let alpha = cli
        .alpha
        .ok_or_else(|| Error::Config("walk requires --alpha".into()))?;
    let p = cli
        .p
        .or(overrides.p)
        .ok_or_else(|| Error::Config("walk requires --p".into()))?;
    let params = ModelParams::new(alpha, p)?;
    let mut stream = RandomStream::new(seed, 0);
    let walk = match source {
        "analytic" => {
            let k_max = cli
                .k_max
                .or(overrides.k_max)
                .ok_or_else(|| Error::Config("analytic walk requires --k-max".into()))?;
            analytic_walk(&mut stream, &params, k_max, AnalyticRoute::PerStep)?
        }
        "graph" => {
            let core = sample_poissonized_core(&mut stream, &params)?;
            explore_graph_walk(&mut stream, &core, p)?
        }
        other => {
            return Err(Error::Config(format!(
                "unknown walk source {other:?} (expected analytic or graph)"
            )))
        }
    };
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(format!("walk_{seed}.csv"));
    let mut f = std::fs::File::create(&path)?;
    f.write_all(walk.to_csv().as_bytes())?;
    println!("wrote {} ({} steps)", path.display(), walk.len());
    Ok(EXIT_OK)
}
