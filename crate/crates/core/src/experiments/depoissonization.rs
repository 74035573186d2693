//! Depoissonization sandwich: Poisson(n -+ n^(7/12)) vertex counts bracket n
//! with probability tending to one, and the induced-subgraph coupling
//! dominates component structure exactly in every instance.

use super::{mean, run_trials, Aggregate, ExperimentConfig, ExperimentReport, Target, TrialTable, Verdict};
use crate::error::{Error, Result};
use crate::graph::{component_labels, sample_fixed_core, CoreGraph};
use crate::stochastic::poisson_sample;

/// Floor for both bracketing probabilities at the main size (the normal
/// approximation puts them near Phi(n^(1/12))).
pub const PROBABILITY_FLOOR: f64 = 0.97;

pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.n_grid[0] < 100 {
        return Err(Error::Config(
            "depoissonization requires n >= 100".into(),
        ));
    }
    let n_main = config.n_grid[0];
    let p = config.c / n_main as f64;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("derived p = {p} outside [0, 1]")));
    }

    let mut per_trial = TrialTable::new(&["n", "n_minus_le", "n_plus_ge", "domination_ok"]);
    let mut bracket_probs = Vec::new();

    for (grid_idx, &n) in config.n_grid.iter().enumerate() {
        let nf = n as f64;
        let deviation = nf.powf(7.0 / 12.0);
        let with_graphs = grid_idx == 0;
        let rows = run_trials(config, grid_idx as u64, config.trials, |stream, _| {
            let n_minus = poisson_sample(stream, nf - deviation)?;
            let n_plus = poisson_sample(stream, nf + deviation)?;
            let minus_le = f64::from(u8::from(n_minus as f64 <= nf));
            let plus_ge = f64::from(u8::from(n_plus as f64 >= nf));
            let domination = if with_graphs {
                let supergraph = sample_fixed_core(stream, n_plus as usize, p)?;
                let induced_n = (n_minus.min(n_plus)) as usize;
                f64::from(u8::from(induced_components_dominated(
                    &supergraph,
                    induced_n,
                )?))
            } else {
                -1.0
            };
            Ok(vec![nf, minus_le, plus_ge, domination])
        })?;
        let p_minus = mean(&rows.iter().map(|r| r[1]).collect::<Vec<_>>());
        let p_plus = mean(&rows.iter().map(|r| r[2]).collect::<Vec<_>>());
        bracket_probs.push((n, p_minus, p_plus));
        per_trial.rows.extend(rows);
    }

    let dominated = per_trial.column_where("domination_ok", "n", n_main as f64);
    let domination_frac = mean(&dominated);
    let (_, p_minus_main, p_plus_main) = bracket_probs[0];

    let mut aggregates = vec![Aggregate {
        name: "domination_frac".into(),
        value: domination_frac,
    }];
    for (n, pm, pp) in &bracket_probs {
        aggregates.push(Aggregate { name: format!("p_minus_le_n{n}"), value: *pm });
        aggregates.push(Aggregate { name: format!("p_plus_ge_n{n}"), value: *pp });
    }

    let floor = 1.0 - config.tol(1.0 - PROBABILITY_FLOOR);
    let targets = vec![Target {
        name: "bracket_probability_floor".into(),
        value: floor,
        provenance: "normal approximation of the n^(1/12)-sd deviation".into(),
    }];
    let mut verdicts = vec![
        Verdict::at_least("p_minus_le_floor", p_minus_main, floor),
        Verdict::at_least("p_plus_ge_floor", p_plus_main, floor),
        Verdict::abs_within("induced_subgraph_domination_exact", domination_frac, 1.0, 0.0),
    ];
    if bracket_probs.len() > 1 {
        let monotone = bracket_probs.windows(2).all(|w| {
            let (_, pm0, pp0) = w[0];
            let (_, pm1, pp1) = w[1];
            pm1 > pm0 && pp1 > pp0
        });
        verdicts.push(Verdict::at_least(
            "bracket_probabilities_increase_with_n",
            f64::from(u8::from(monotone)),
            1.0,
        ));
    }

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

/// Exact per-instance check of the coupling: every component of the induced
/// subgraph on the first `induced_n` vertices must sit inside one component
/// of the supergraph.
fn induced_components_dominated(supergraph: &CoreGraph, induced_n: usize) -> Result<bool> {
    let super_labels = component_labels(supergraph);
    let induced_edges: Vec<(u32, u32)> = supergraph
        .edges()
        .filter(|&(_, v)| (v as usize) < induced_n)
        .collect();
    let induced = CoreGraph::from_edges(induced_n, &induced_edges)?;
    let induced_labels = component_labels(&induced);

    // Map each induced component to the supergraph component of its label
    // vertex; every member must agree.
    for v in 0..induced_n {
        let rep = induced_labels[v] as usize;
        if super_labels[v] != super_labels[rep] {
            return Ok(false);
        }
    }
    Ok(true)
}
