//! Named Monte Carlo campaigns. Every trial is a pure function of the master
//! seed and its trial index, so the worker count changes wall time only,
//! never a single output byte.

pub mod bad_edges;
pub mod components;
pub mod kernel;
pub mod mst_weight;
pub mod paired;

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use mstlab_core::streams::sub_seed;

use crate::config::{Experiment, ExperimentConfig};
use crate::report::{self, Cell, SummaryFile};
use crate::LabError;

// seed-tree labels, one per experiment; the core sampler owns labels 1..=5
const LBL_MST_WEIGHT: u64 = 101;
const LBL_BAD_EDGES: u64 = 102;
const LBL_SENSITIVITY: u64 = 103;
const LBL_STABILITY: u64 = 104;
const LBL_COMPONENTS: u64 = 105;
const LBL_KERNEL: u64 = 106;
/// Horizon-extension rounds draw from fresh sub-seeds of the trial seed.
const LBL_EXTEND: u64 = 7;

/// Root seed for one trial of one experiment.
pub fn trial_seed(cfg: &ExperimentConfig, trial: u64) -> u64 {
    let label = match cfg.experiment {
        Experiment::MstWeight => LBL_MST_WEIGHT,
        Experiment::BadEdges => LBL_BAD_EDGES,
        Experiment::Sensitivity => LBL_SENSITIVITY,
        Experiment::Stability => LBL_STABILITY,
        Experiment::Components => LBL_COMPONENTS,
        Experiment::KernelCheck => LBL_KERNEL,
    };
    sub_seed(cfg.seed, &[label, trial])
}

fn extension_seed(trial_seed: u64, round: u64) -> u64 {
    sub_seed(trial_seed, &[LBL_EXTEND, round])
}

/// Trial table plus its summary, ready to be written out.
pub struct RunOutput {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: SummaryFile,
}

/// Runs trials 0..trials on a small worker pool. Workers claim indices from
/// a shared counter; records are reassembled in index order afterwards, so
/// scheduling cannot affect the output.
pub fn run_trials<R: Send>(
    trials: u64,
    threads: usize,
    f: impl Fn(u64) -> Result<R, LabError> + Sync,
) -> Result<Vec<R>, LabError> {
    let workers = threads.max(1).min(trials.max(1) as usize);
    let next = AtomicU64::new(0);
    let mut collected: Vec<(u64, Result<R, LabError>)> = Vec::with_capacity(trials as usize);
    if workers == 1 {
        for i in 0..trials {
            collected.push((i, f(i)));
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    scope.spawn(|| {
                        let mut local = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= trials {
                                break;
                            }
                            local.push((i, f(i)));
                        }
                        local
                    })
                })
                .collect();
            for h in handles {
                collected.extend(h.join().expect("trial worker panicked"));
            }
        });
    }
    collected.sort_by_key(|&(i, _)| i);
    collected.into_iter().map(|(_, r)| r).collect()
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput, LabError> {
    match cfg.experiment {
        Experiment::MstWeight => mst_weight::run(cfg),
        Experiment::BadEdges => bad_edges::run(cfg),
        Experiment::Sensitivity | Experiment::Stability => paired::run(cfg),
        Experiment::Components => components::run(cfg),
        Experiment::KernelCheck => kernel::run(cfg),
    }
}

pub struct OutputPaths {
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Writes `<stem>.csv` and `<stem>.json` under the configured output
/// directory.
pub fn write_outputs(
    cfg: &ExperimentConfig,
    stem: &str,
    out: &RunOutput,
) -> Result<OutputPaths, LabError> {
    let csv = cfg.out_dir.join(format!("{stem}.csv"));
    let json = cfg.out_dir.join(format!("{stem}.json"));
    report::write_csv(&csv, &out.header, &out.rows)?;
    report::write_summary(&json, &out.summary)?;
    Ok(OutputPaths { csv, json })
}
