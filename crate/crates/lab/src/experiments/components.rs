//! Structure of the largest components at the critical probability: rescaled
//! sizes, surpluses, and rescaled girths for the top five components, plus
//! the empirical surplus distribution of the largest one. Noise plays no
//! role here; the sampler runs with the resampling rate forced to zero.

use std::collections::BTreeMap;

use mstlab_core::graph::{components, girth, surplus};
use mstlab_core::sample::{derive_graphs, sample_coupled, NoiseParameters};

use crate::config::ExperimentConfig;
use crate::report::{Cell, SummaryFile};
use crate::stats::summarize_finite;
use crate::LabError;

use super::{run_trials, trial_seed, RunOutput};

const TOP: usize = 5;

struct Record {
    sizes: [f64; TOP],
    surpluses: [f64; TOP],
    girths: [f64; TOP],
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, LabError> {
    let n = cfg.n as usize;
    let c = (n as f64).cbrt();
    let params = NoiseParameters::critical(n, cfg.lambda, 0.0)?;
    let records = run_trials(cfg.trials, cfg.threads, |trial| {
        let sample = sample_coupled(&params, trial_seed(cfg, trial))?;
        let d = derive_graphs(&sample, params.p())?;
        let decomp = components(&d.g);
        let mut sizes = [0.0; TOP];
        let mut surpluses = [0.0; TOP];
        let mut girths = [f64::INFINITY; TOP];
        for j in 0..TOP.min(decomp.component_count()) {
            sizes[j] = decomp.members[j].len() as f64 / (c * c);
            surpluses[j] = surplus(&decomp, j) as f64;
            girths[j] = match girth(&d.g, &decomp, j) {
                Some(g) => g as f64 / c,
                None => f64::INFINITY,
            };
        }
        Ok(Record {
            sizes,
            surpluses,
            girths,
        })
    })?;

    let header = vec![
        "trial", "size_1", "size_2", "size_3", "size_4", "size_5", "surplus_1", "surplus_2",
        "surplus_3", "surplus_4", "surplus_5", "girth_1", "girth_2", "girth_3", "girth_4",
        "girth_5",
    ];
    let rows: Vec<Vec<Cell>> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = vec![Cell::U(i as u64)];
            row.extend(r.sizes.iter().map(|&v| Cell::F(v)));
            row.extend(r.surpluses.iter().map(|&v| Cell::U(v as u64)));
            row.extend(r.girths.iter().map(|&v| Cell::F(v)));
            row
        })
        .collect();

    let mut scalars = BTreeMap::new();
    for j in 0..TOP {
        let sizes: Vec<f64> = records.iter().map(|r| r.sizes[j]).collect();
        let sur: Vec<f64> = records.iter().map(|r| r.surpluses[j]).collect();
        let gir: Vec<f64> = records.iter().map(|r| r.girths[j]).collect();
        scalars.insert(format!("size_{}", j + 1), summarize_finite(&sizes));
        scalars.insert(format!("surplus_{}", j + 1), summarize_finite(&sur));
        // acyclic components have no girth and drop out of the count
        scalars.insert(format!("girth_{}", j + 1), summarize_finite(&gir));
    }

    let mut extras = BTreeMap::new();
    let trials = records.len() as f64;
    let s1: Vec<u64> = records.iter().map(|r| r.surpluses[0] as u64).collect();
    let max_s1 = s1.iter().copied().max().unwrap_or(0);
    for k in 0..=max_s1 {
        let share = s1.iter().filter(|&&v| v == k).count() as f64 / trials;
        extras.insert(format!("s1_prob_{k:02}"), share);
    }
    extras.insert(
        "s1_le_10_rate".into(),
        s1.iter().filter(|&&v| v <= 10).count() as f64 / trials,
    );

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
