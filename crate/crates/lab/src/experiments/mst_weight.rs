//! Total weight of the minimum spanning tree of the complete graph with
//! uniform edge weights. Only weights below a horizon are sampled; when the
//! thresholded graph is disconnected the horizon is doubled until it spans.

use std::collections::BTreeMap;

use mstlab_core::graph::components;
use mstlab_core::msf::{forest_weight, kruskal_msf, sample_weights, WeightSide};
use mstlab_core::sample::{
    derive_graphs, extend_horizon, mst_horizon, sample_coupled, NoiseParameters,
};

use crate::config::ExperimentConfig;
use crate::report::{Cell, SummaryFile};
use crate::stats::summarize_finite;
use crate::LabError;

use super::{extension_seed, run_trials, trial_seed, RunOutput};

struct Record {
    weight: f64,
    extensions: u64,
    sampled_pairs: u64,
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, LabError> {
    let n = cfg.n as usize;
    let horizon = mst_horizon(n, Some(cfg.lambda));
    let params = NoiseParameters::new(n, cfg.epsilon, Some(cfg.lambda), horizon)?;
    let records = run_trials(cfg.trials, cfg.threads, |trial| {
        let seed = trial_seed(cfg, trial);
        let mut sample = sample_coupled(&params, seed)?;
        let mut extensions = 0u64;
        loop {
            let d = derive_graphs(&sample, sample.params.p_horizon)?;
            if components(&d.g).component_count() == 1 {
                let weights = sample_weights(&d.g, &sample, WeightSide::Base)?;
                let forest = kruskal_msf(&d.g, &weights)?;
                return Ok(Record {
                    weight: forest_weight(&d.g, &weights, &forest),
                    extensions,
                    sampled_pairs: sample.triples.len() as u64,
                });
            }
            extensions += 1;
            let p_new = (sample.params.p_horizon * 2.0).min(1.0);
            sample = extend_horizon(&sample, p_new, extension_seed(seed, extensions))?;
        }
    })?;

    let header = vec!["trial", "mst_weight", "extensions", "sampled_pairs"];
    let rows: Vec<Vec<Cell>> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                Cell::U(i as u64),
                Cell::F(r.weight),
                Cell::U(r.extensions),
                Cell::U(r.sampled_pairs),
            ]
        })
        .collect();

    let mut scalars = BTreeMap::new();
    let weights: Vec<f64> = records.iter().map(|r| r.weight).collect();
    let exts: Vec<f64> = records.iter().map(|r| r.extensions as f64).collect();
    let pairs: Vec<f64> = records.iter().map(|r| r.sampled_pairs as f64).collect();
    scalars.insert("mst_weight".into(), summarize_finite(&weights));
    scalars.insert("extensions".into(), summarize_finite(&exts));
    scalars.insert("sampled_pairs".into(), summarize_finite(&pairs));

    Ok(RunOutput {
        header,
        rows,
        summary: SummaryFile {
            experiment: cfg.experiment.name().into(),
            config: cfg.echo(),
            scalars,
            correlations: BTreeMap::new(),
            extras: BTreeMap::new(),
        },
    })
}
