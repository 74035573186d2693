//! Hitting-time CLT in the connectedness regime `p = (ln n + c)/n`: the
//! first hitting time of -1 concentrates at n with sqrt(n) Gaussian
//! fluctuations.

use super::{
    mean, run_trials, sample_sd, sorted, Aggregate, ExperimentConfig, ExperimentReport, Target,
    TrialTable, Verdict,
};
use crate::analysis::{ks_distance, normal_cdf, GOF_SIGNIFICANCE};
use crate::error::{Error, Result};
use crate::exploration::{analytic_walk, hitting_times, AnalyticRoute};
use crate::graph::ModelParams;

/// Mean band in units of sqrt(n): +-10 at n = 10^4.
pub const MEAN_TOLERANCE_SQRT_N: f64 = 0.1;
/// Relative band for the standard deviation around sqrt(n).
pub const SD_RELATIVE_TOLERANCE: f64 = 0.1;

pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = config.n_grid[0];
    let params = ModelParams::log_regime(n, config.c)?;
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let k_max = config
        .k_max_override
        .unwrap_or(n + (10.0 * sqrt_n).ceil() as usize);

    let rows = run_trials(config, 0, config.trials, |stream, _| {
        let walk = analytic_walk(stream, &params, k_max, AnalyticRoute::PerStep)?;
        let hit = hitting_times(&walk)?;
        Ok(match hit.tau_minus_one {
            Some(tau) => vec![1.0, tau as f64],
            None => vec![0.0, -1.0],
        })
    })?;

    let mut per_trial = TrialTable::new(&["reached", "tau"]);
    per_trial.rows = rows;

    let taus: Vec<f64> = per_trial
        .rows
        .iter()
        .filter(|r| r[0] == 1.0)
        .map(|r| r[1])
        .collect();
    let unreached = config.trials - taus.len();
    if taus.is_empty() {
        return Err(Error::Config(
            "no trial reached -1; extend k_max or increase n".into(),
        ));
    }

    let mean_tau = mean(&taus);
    let sd_tau = sample_sd(&taus);
    let normalized: Vec<f64> = taus.iter().map(|t| (t - nf) / sqrt_n).collect();
    let ks = ks_distance(&sorted(&normalized), normal_cdf, GOF_SIGNIFICANCE)?;

    let aggregates = vec![
        Aggregate { name: "mean_tau".into(), value: mean_tau },
        Aggregate { name: "sd_tau".into(), value: sd_tau },
        Aggregate {
            name: "frac_unreached".into(),
            value: unreached as f64 / config.trials as f64,
        },
        Aggregate { name: "ks_statistic".into(), value: ks.statistic },
        Aggregate { name: "ks_threshold".into(), value: ks.threshold },
    ];
    let targets = vec![
        Target {
            name: "mean_tau".into(),
            value: nf,
            provenance: "closed form (hitting time concentrates at n)".into(),
        },
        Target {
            name: "sd_tau".into(),
            value: sqrt_n,
            provenance: "closed form (Brownian limit has unit variance in sqrt(n) units)".into(),
        },
    ];
    let sd_band = config.tol(SD_RELATIVE_TOLERANCE) * sqrt_n;
    let verdicts = vec![
        Verdict::abs_within(
            "mean_tau_matches_n",
            mean_tau,
            nf,
            config.tol(MEAN_TOLERANCE_SQRT_N) * sqrt_n,
        ),
        Verdict::in_band("sd_tau_matches_sqrt_n", sd_tau, sqrt_n - sd_band, sqrt_n + sd_band),
        Verdict::statistic_le("ks_vs_standard_normal", ks.statistic, ks.threshold),
    ];

    Ok(ExperimentReport {
        experiment: config.name.clone(),
        config: config.clone(),
        per_trial,
        aggregates,
        targets,
        verdicts,
        runtime_seconds: 0.0,
    })
}
