//! Geometric law of the pre-giant component count: the number of components
//! explored before the giant is geometric with success parameter beta(c).

use super::giant_clt::giant_trial;
use super::{mean, run_trials, Aggregate, ExperimentConfig, ExperimentReport, Target, TrialTable, Verdict};
use crate::analysis::{geometric_fit, theory_targets};
use crate::error::{Error, Result};
use crate::exploration::{default_k_max, default_marker_eps};
use crate::graph::ModelParams;

/// Band around beta(c) for the fitted success parameter.
pub const SUCCESS_TOLERANCE: f64 = 0.03;

pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if !(config.c > 1.0) {
        return Err(Error::Config(format!(
            "kc experiment requires c > 1, got {}",
            config.c
        )));
    }
    let beta = theory_targets(config.c)?.beta;
    let eps = default_marker_eps(beta);
    let n = *config.n_grid.last().expect("nonempty grid");
    let params = ModelParams::from_c(n, config.c)?;
    let k_max = config.k_max_override.unwrap_or(default_k_max(n, config.c));

    let counts: Vec<u64> = run_trials(config, 0, config.trials, |stream, _| {
        Ok(giant_trial(stream, &params, n, eps, k_max)?.pre_giant_records as u64)
    })?;

    let (success, gof) = geometric_fit(&counts)?;
    let mut per_trial = TrialTable::new(&["kc_count"]);
    per_trial.rows = counts.iter().map(|&c| vec![c as f64]).collect();

    let aggregates = vec![
        Aggregate { name: "success_estimate".into(), value: success },
        Aggregate {
            name: "mean_kc".into(),
            value: mean(&per_trial.column("kc_count")),
        },
        Aggregate { name: "gof_statistic".into(), value: gof.statistic },
        Aggregate { name: "gof_threshold".into(), value: gof.threshold },
    ];
    let targets = vec![Target {
        name: "geometric_success".into(),
        value: beta,
        provenance: "beta_solver (success parameter equals the giant fraction)".into(),
    }];
    let verdicts = vec![
        Verdict::abs_within(
            "success_matches_beta",
            success,
            beta,
            config.tol(SUCCESS_TOLERANCE),
        ),
        Verdict::statistic_le("geometric_gof", gof.statistic, gof.threshold),
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
