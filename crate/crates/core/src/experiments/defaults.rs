//! Shipped desk-scale defaults: one pinned configuration per experiment.
//! The acceptance suite and the `all` subcommand run exactly these.

use super::{ExperimentConfig, ExperimentKind};

pub const DEFAULT_SEED: u64 = 42;

fn base(name: &str, kind: ExperimentKind) -> ExperimentConfig {
    ExperimentConfig {
        name: name.to_string(),
        kind,
        n_grid: vec![],
        c: 0.0,
        c_grid: vec![],
        lambda: 0.0,
        p_override: None,
        trials: 1,
        seed: DEFAULT_SEED,
        k_max_override: None,
        tolerance_scale: 1.0,
        workers: 0,
    }
}

/// The pinned configuration for a named experiment, or `None` for an unknown
/// name. Names cover each experiment kind plus the extra presets that the
/// full suite runs (`giant-subcritical`, `connectedness-exact`).
pub fn config_by_name(name: &str) -> Option<ExperimentConfig> {
    Some(match name {
        "fluid" => ExperimentConfig {
            n_grid: vec![1_000_000],
            c: 2.0,
            trials: 20,
            ..base("fluid", ExperimentKind::Fluid)
        },
        "giant" => ExperimentConfig {
            n_grid: vec![200_000],
            c: 2.0,
            trials: 30,
            ..base("giant", ExperimentKind::Giant)
        },
        "giant-subcritical" => ExperimentConfig {
            n_grid: vec![100_000],
            c: 0.5,
            trials: 30,
            ..base("giant-subcritical", ExperimentKind::Giant)
        },
        "giant-clt" => ExperimentConfig {
            n_grid: vec![10_000, 100_000],
            c: 2.0,
            trials: 2000,
            ..base("giant-clt", ExperimentKind::GiantClt)
        },
        "kc" => ExperimentConfig {
            n_grid: vec![100_000],
            c: 2.0,
            trials: 2000,
            ..base("kc", ExperimentKind::Kc)
        },
        "critical" => ExperimentConfig {
            n_grid: vec![10_000, 100_000],
            lambda: 0.0,
            trials: 2000,
            ..base("critical", ExperimentKind::Critical)
        },
        "tau-clt" => ExperimentConfig {
            n_grid: vec![10_000],
            c: 1.0,
            trials: 1000,
            ..base("tau-clt", ExperimentKind::TauClt)
        },
        "connectedness" => ExperimentConfig {
            n_grid: vec![5000],
            c_grid: vec![0.0, 1.0, 5.0],
            trials: 4000,
            ..base("connectedness", ExperimentKind::Connectedness)
        },
        "connectedness-exact" => ExperimentConfig {
            n_grid: vec![3],
            p_override: Some(0.3),
            trials: 100_000,
            ..base("connectedness-exact", ExperimentKind::Connectedness)
        },
        "depoissonize" => ExperimentConfig {
            n_grid: vec![10_000, 1_000_000],
            c: 2.0,
            trials: 10_000,
            ..base("depoissonize", ExperimentKind::Depoissonize)
        },
        _ => return None,
    })
}

/// Every configuration the `all` subcommand runs, in order.
pub fn full_suite() -> Vec<ExperimentConfig> {
    [
        "fluid",
        "giant",
        "giant-subcritical",
        "giant-clt",
        "kc",
        "critical",
        "tau-clt",
        "connectedness",
        "connectedness-exact",
        "depoissonize",
    ]
    .iter()
    .map(|name| config_by_name(name).expect("known preset"))
    .collect()
}
