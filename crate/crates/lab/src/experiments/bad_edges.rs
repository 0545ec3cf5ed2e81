//! Counts edges lying on a cycle in both the base and the noisy graph at the
//! critical probability. The mean of that count is the quantity bounded by
//! the reciprocal of the noise rate.

use std::collections::BTreeMap;

use mstlab_core::graph::{conn_edges, SimpleGraph};
use mstlab_core::sample::{derive_graphs, sample_coupled, NoiseParameters};

use crate::config::ExperimentConfig;
use crate::report::{Cell, SummaryFile};
use crate::sampledump;
use crate::stats::summarize_finite;
use crate::LabError;

use super::{run_trials, trial_seed, RunOutput};

struct Record {
    shared_cycle_edges: u64,
    base_edges: u64,
    noisy_edges: u64,
    intersection_pairs: u64,
    kept_pairs: u64,
}

fn conn_pairs(g: &SimpleGraph) -> Vec<(u32, u32)> {
    conn_edges(g)
        .iter()
        .map(|&e| g.edges()[e as usize])
        .collect()
}

fn sorted_intersection_count(a: &[(u32, u32)], b: &[(u32, u32)]) -> u64 {
    let mut count = 0u64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, LabError> {
    let params = NoiseParameters::critical(cfg.n as usize, cfg.lambda, cfg.epsilon)?;
    if let Some(path) = &cfg.dump_sample {
        // replay of trial 0, written before the campaign so a crashed run
        // still leaves the dump behind
        let sample = sample_coupled(&params, trial_seed(cfg, 0))?;
        sampledump::write_sample(path, &sample)?;
    }
    let records = run_trials(cfg.trials, cfg.threads, |trial| {
        let sample = sample_coupled(&params, trial_seed(cfg, trial))?;
        let d = derive_graphs(&sample, params.p())?;
        let base = conn_pairs(&d.g);
        let noisy = conn_pairs(&d.g_eps);
        Ok(Record {
            shared_cycle_edges: sorted_intersection_count(&base, &noisy),
            base_edges: d.g.edge_count() as u64,
            noisy_edges: d.g_eps.edge_count() as u64,
            intersection_pairs: d.i_cap.len() as u64,
            kept_pairs: d.i_check.len() as u64,
        })
    })?;

    let header = vec![
        "trial",
        "shared_cycle_edges",
        "base_edges",
        "noisy_edges",
        "intersection_pairs",
        "kept_pairs",
    ];
    let rows: Vec<Vec<Cell>> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                Cell::U(i as u64),
                Cell::U(r.shared_cycle_edges),
                Cell::U(r.base_edges),
                Cell::U(r.noisy_edges),
                Cell::U(r.intersection_pairs),
                Cell::U(r.kept_pairs),
            ]
        })
        .collect();

    let mut scalars = BTreeMap::new();
    let mut put = |key: &str, values: Vec<f64>| {
        scalars.insert(key.to_string(), summarize_finite(&values));
    };
    put(
        "shared_cycle_edges",
        records.iter().map(|r| r.shared_cycle_edges as f64).collect(),
    );
    put(
        "base_edges",
        records.iter().map(|r| r.base_edges as f64).collect(),
    );
    put(
        "noisy_edges",
        records.iter().map(|r| r.noisy_edges as f64).collect(),
    );
    put(
        "intersection_pairs",
        records.iter().map(|r| r.intersection_pairs as f64).collect(),
    );
    put(
        "kept_pairs",
        records.iter().map(|r| r.kept_pairs as f64).collect(),
    );

    let mut extras = BTreeMap::new();
    extras.insert("epsilon_inverse".into(), 1.0 / cfg.epsilon);

    Ok(RunOutput {
        header,
        rows,
        summary: SummaryFile {
            experiment: cfg.experiment.name().into(),
            config: cfg.echo(),
            scalars,
            correlations: BTreeMap::new(),
            extras,
        },
    })
}
