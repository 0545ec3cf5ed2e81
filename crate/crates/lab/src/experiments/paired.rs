//! Shared pipeline for the sensitivity and stability campaigns: one coupled
//! sample per trial, both minimum spanning forests, and rescaled functionals
//! of the largest component on each side. The stability campaign adds the
//! cycle-set agreement indicator and the symmetric-difference bound.

use std::collections::BTreeMap;

use mstlab_core::graph::{components, conn_edges, tree_diameter, SimpleGraph};
use mstlab_core::metric::{mean_pairwise_hops, symmetric_difference_bound};
use mstlab_core::msf::{joint_msf_from_sample, kruskal_msf, sample_weights, WeightSide};
use mstlab_core::sample::{
    derive_graphs, extend_horizon, mst_horizon, sample_coupled, CoupledSample, DerivedGraphs,
    NoiseParameters,
};

use crate::config::{Experiment, ExperimentConfig};
use crate::report::{Cell, SummaryFile};
use crate::stats::{correlation_summary, summarize_finite, CorrelationSummary};
use crate::LabError;

use super::{extension_seed, run_trials, trial_seed, RunOutput};

const MPD_SOURCES: usize = 32;

struct Functionals {
    diameter: f64,
    size: f64,
    mpd: f64,
}

struct StabilityPart {
    conn_match: bool,
    sym_diff_bound: f64,
}

struct FullTreePart {
    base_diameter: f64,
    noisy_diameter: f64,
    base_mpd: f64,
    noisy_mpd: f64,
    extensions: u64,
}

struct Record {
    base: Functionals,
    noisy: Functionals,
    stability: Option<StabilityPart>,
    full_tree: Option<FullTreePart>,
}

/// Rescaled diameter, size, and mean pairwise distance of the largest
/// component: hop distances shrink by the cube root of n, masses by its
/// square.
fn largest_component_functionals(forest: &SimpleGraph, n: usize, seed: u64) -> Result<Functionals, LabError> {
    let c = (n as f64).cbrt();
    let decomp = components(forest);
    let diameter = tree_diameter(forest, &decomp, 0)? as f64 / c;
    let size = decomp.members[0].len() as f64 / (c * c);
    let mpd = mean_pairwise_hops(forest, &decomp, 0, MPD_SOURCES, seed) / c;
    Ok(Functionals { diameter, size, mpd })
}

/// Cycle edges of the j-th largest component, for j below `j_max`, as sorted
/// pair lists.
fn conn_by_component(g: &SimpleGraph, j_max: usize) -> Vec<Vec<(u32, u32)>> {
    let decomp = components(g);
    let mut out = vec![Vec::new(); j_max];
    for e in conn_edges(g) {
        let (u, v) = g.edges()[e as usize];
        let comp = decomp.assignment[u as usize] as usize;
        if comp < j_max {
            out[comp].push((u, v));
        }
    }
    out
}

/// Whether the leading components of the base graph, the noisy graph, and
/// the kept intersection all carry identical cycle edge sets.
fn cycle_sets_agree(d: &DerivedGraphs, n: usize, j_max: usize) -> Result<bool, LabError> {
    let kept = SimpleGraph::from_edges(n, &d.i_check)?;
    let a = conn_by_component(&d.g, j_max);
    let b = conn_by_component(&d.g_eps, j_max);
    if a != b {
        return Ok(false);
    }
    Ok(a == conn_by_component(&kept, j_max))
}

/// Extends the sample until both thresholded graphs are connected and
/// measures the two full spanning trees under the probability-mass scaling.
fn full_tree_part(
    cfg: &ExperimentConfig,
    mut sample: CoupledSample,
    seed: u64,
) -> Result<FullTreePart, LabError> {
    let n = cfg.n as usize;
    let c = (n as f64).cbrt();
    let mut extensions = 0u64;
    let connectivity = mst_horizon(n, Some(cfg.lambda));
    if connectivity > sample.params.p_horizon {
        extensions += 1;
        sample = extend_horizon(&sample, connectivity, extension_seed(seed, extensions))?;
    }
    loop {
        let d = derive_graphs(&sample, sample.params.p_horizon)?;
        if components(&d.g).component_count() == 1 && components(&d.g_eps).component_count() == 1 {
            let wb = sample_weights(&d.g, &sample, WeightSide::Base)?;
            let wn = sample_weights(&d.g_eps, &sample, WeightSide::Noisy)?;
            let mb = kruskal_msf(&d.g, &wb)?;
            let mn = kruskal_msf(&d.g_eps, &wn)?;
            let db = components(&mb);
            let dn = components(&mn);
            return Ok(FullTreePart {
                base_diameter: tree_diameter(&mb, &db, 0)? as f64 / c,
                noisy_diameter: tree_diameter(&mn, &dn, 0)? as f64 / c,
                base_mpd: mean_pairwise_hops(&mb, &db, 0, MPD_SOURCES, seed) / c,
                noisy_mpd: mean_pairwise_hops(&mn, &dn, 0, MPD_SOURCES, seed) / c,
                extensions,
            });
        }
        extensions += 1;
        let p_new = (sample.params.p_horizon * 2.0).min(1.0);
        sample = extend_horizon(&sample, p_new, extension_seed(seed, extensions))?;
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, LabError> {
    let n = cfg.n as usize;
    let is_stability = cfg.experiment == Experiment::Stability;
    let j_max = cfg.j_max as usize;
    let params = NoiseParameters::critical(n, cfg.lambda, cfg.epsilon)?;
    let records = run_trials(cfg.trials, cfg.threads, |trial| {
        let seed = trial_seed(cfg, trial);
        let sample = sample_coupled(&params, seed)?;
        let d = derive_graphs(&sample, params.p())?;
        let joint = joint_msf_from_sample(&sample, &d)?;
        let base = largest_component_functionals(&joint.m, n, seed)?;
        let noisy = largest_component_functionals(&joint.m_eps, n, seed)?;
        let stability = if is_stability {
            Some(StabilityPart {
                conn_match: cycle_sets_agree(&d, n, j_max)?,
                sym_diff_bound: symmetric_difference_bound(&d.g, &d.g_eps, n),
            })
        } else {
            None
        };
        let full_tree = if cfg.full_tree {
            Some(full_tree_part(cfg, sample, seed)?)
        } else {
            None
        };
        Ok(Record {
            base,
            noisy,
            stability,
            full_tree,
        })
    })?;

    let mut header = vec![
        "trial",
        "diameter_base",
        "diameter_noisy",
        "size_base",
        "size_noisy",
        "mean_pairwise_distance_base",
        "mean_pairwise_distance_noisy",
    ];
    if is_stability {
        header.extend(["conn_match", "sym_diff_bound"]);
    }
    if cfg.full_tree {
        header.extend([
            "ft_diameter_base",
            "ft_diameter_noisy",
            "ft_mean_pairwise_distance_base",
            "ft_mean_pairwise_distance_noisy",
            "ft_extensions",
        ]);
    }
    let rows: Vec<Vec<Cell>> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = vec![
                Cell::U(i as u64),
                Cell::F(r.base.diameter),
                Cell::F(r.noisy.diameter),
                Cell::F(r.base.size),
                Cell::F(r.noisy.size),
                Cell::F(r.base.mpd),
                Cell::F(r.noisy.mpd),
            ];
            if let Some(s) = &r.stability {
                row.push(Cell::U(s.conn_match as u64));
                row.push(Cell::F(s.sym_diff_bound));
            }
            if let Some(ft) = &r.full_tree {
                row.extend([
                    Cell::F(ft.base_diameter),
                    Cell::F(ft.noisy_diameter),
                    Cell::F(ft.base_mpd),
                    Cell::F(ft.noisy_mpd),
                    Cell::U(ft.extensions),
                ]);
            }
            row
        })
        .collect();

    let col = |f: &dyn Fn(&Record) -> f64| -> Vec<f64> { records.iter().map(f).collect() };
    let mut scalars = BTreeMap::new();
    let mut correlations: BTreeMap<String, CorrelationSummary> = BTreeMap::new();
    let mut pair = |name: &str, xs: Vec<f64>, ys: Vec<f64>, scalars: &mut BTreeMap<_, _>| {
        scalars.insert(format!("{name}_base"), summarize_finite(&xs));
        scalars.insert(format!("{name}_noisy"), summarize_finite(&ys));
        // degenerate inputs (too few trials, constant series) leave no entry
        if let Ok(c) = correlation_summary(&xs, &ys) {
            correlations.insert(name.to_string(), c);
        }
    };
    pair(
        "diameter",
        col(&|r| r.base.diameter),
        col(&|r| r.noisy.diameter),
        &mut scalars,
    );
    pair(
        "size",
        col(&|r| r.base.size),
        col(&|r| r.noisy.size),
        &mut scalars,
    );
    pair(
        "mean_pairwise_distance",
        col(&|r| r.base.mpd),
        col(&|r| r.noisy.mpd),
        &mut scalars,
    );
    if cfg.full_tree {
        pair(
            "ft_diameter",
            col(&|r| r.full_tree.as_ref().unwrap().base_diameter),
            col(&|r| r.full_tree.as_ref().unwrap().noisy_diameter),
            &mut scalars,
        );
        pair(
            "ft_mean_pairwise_distance",
            col(&|r| r.full_tree.as_ref().unwrap().base_mpd),
            col(&|r| r.full_tree.as_ref().unwrap().noisy_mpd),
            &mut scalars,
        );
        scalars.insert(
            "ft_extensions".into(),
            summarize_finite(&col(&|r| r.full_tree.as_ref().unwrap().extensions as f64)),
        );
    }
    if is_stability {
        scalars.insert(
            "conn_match".into(),
            summarize_finite(&col(&|r| r.stability.as_ref().unwrap().conn_match as u64 as f64)),
        );
        scalars.insert(
            "sym_diff_bound".into(),
            summarize_finite(&col(&|r| r.stability.as_ref().unwrap().sym_diff_bound)),
        );
    }

    Ok(RunOutput {
        header,
        rows,
        summary: SummaryFile {
            experiment: cfg.experiment.name().into(),
            config: cfg.echo(),
            scalars,
            correlations,
            extras: BTreeMap::new(),
        },
    })
}
