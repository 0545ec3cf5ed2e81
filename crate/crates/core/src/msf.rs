//! Minimum spanning forests under several equivalent constructions.
//!
//! All constructions break weight ties by edge index, so every input has a
//! unique forest and `kruskal_msf` and `reverse_delete_msf` agree exactly.
//! `k_infinity` is the weight-free chain that repeatedly deletes a uniformly
//! random cycle edge; its law coincides with the forest of iid uniform
//! weights, and `k_infinity_joint` couples two such chains through a shared
//! edge set.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::dsu::DisjointSets;
use crate::graph::{conn_edges, conn_edges_masked, GraphError, SimpleGraph};
use crate::sample::{CoupledSample, DerivedGraphs};

#[derive(Clone, Debug, PartialEq)]
pub enum MsfError {
    WeightCountMismatch { weights: usize, edges: usize },
    NonFiniteWeight { index: usize },
    /// A shared pair is missing from one of the two graphs.
    SharedEdgeMissing { u: u32, v: u32 },
    /// A graph edge has no stored triple in the sample.
    MissingTriple { u: u32, v: u32 },
    Graph(GraphError),
}

impl fmt::Display for MsfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MsfError::WeightCountMismatch { weights, edges } => {
                write!(f, "{weights} weights for {edges} edges")
            }
            MsfError::NonFiniteWeight { index } => write!(f, "weight {index} is not finite"),
            MsfError::SharedEdgeMissing { u, v } => {
                write!(f, "shared pair ({u}, {v}) is not an edge of both graphs")
            }
            MsfError::MissingTriple { u, v } => {
                write!(f, "edge ({u}, {v}) has no sampled weight")
            }
            MsfError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MsfError {}

impl From<GraphError> for MsfError {
    fn from(e: GraphError) -> Self {
        MsfError::Graph(e)
    }
}

fn validate_weights(g: &SimpleGraph, weights: &[f64]) -> Result<(), MsfError> {
    if weights.len() != g.edge_count() {
        return Err(MsfError::WeightCountMismatch {
            weights: weights.len(),
            edges: g.edge_count(),
        });
    }
    if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
        return Err(MsfError::NonFiniteWeight { index });
    }
    Ok(())
}

/// Minimum spanning forest by greedy insertion in increasing
/// `(weight, edge index)` order.
pub fn kruskal_msf(g: &SimpleGraph, weights: &[f64]) -> Result<SimpleGraph, MsfError> {
    validate_weights(g, weights)?;
    let mut order: Vec<u32> = (0..g.edge_count() as u32).collect();
    order.sort_by(|&a, &b| {
        weights[a as usize]
            .total_cmp(&weights[b as usize])
            .then(a.cmp(&b))
    });
    let mut dsu = DisjointSets::new(g.vertex_count());
    let mut kept = Vec::with_capacity(g.vertex_count().saturating_sub(1));
    for &e in &order {
        let (u, v) = g.edges()[e as usize];
        if dsu.union(u, v) {
            kept.push((u, v));
        }
    }
    kept.sort_unstable();
    Ok(SimpleGraph::from_edges(g.vertex_count(), &kept)?)
}

/// Minimum spanning forest by repeatedly deleting the heaviest edge that lies
/// on a cycle. Produces exactly the same forest as [`kruskal_msf`].
pub fn reverse_delete_msf(g: &SimpleGraph, weights: &[f64]) -> Result<SimpleGraph, MsfError> {
    validate_weights(g, weights)?;
    let mut alive = alloc::vec![true; g.edge_count()];
    loop {
        let cyc = conn_edges_masked(g, Some(&alive));
        let Some(&worst) = cyc.iter().max_by(|&&a, &&b| {
            weights[a as usize]
                .total_cmp(&weights[b as usize])
                .then(a.cmp(&b))
        }) else {
            break;
        };
        alive[worst as usize] = false;
    }
    let kept: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(&e, _)| e)
        .collect();
    Ok(SimpleGraph::from_edges(g.vertex_count(), &kept)?)
}

/// Weight-free forest chain: while some edge lies on a cycle, delete one such
/// edge chosen uniformly at random. Distributed as the minimum spanning
/// forest of iid uniform edge weights.
pub fn k_infinity<R: Rng + ?Sized>(g: &SimpleGraph, rng: &mut R) -> SimpleGraph {
    let mut alive = alloc::vec![true; g.edge_count()];
    loop {
        let cyc = conn_edges_masked(g, Some(&alive));
        if cyc.is_empty() {
            break;
        }
        let pick = cyc[rng.gen_range(0..cyc.len())];
        alive[pick as usize] = false;
    }
    let kept: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(&e, _)| e)
        .collect();
    SimpleGraph::from_edges(g.vertex_count(), &kept).expect("subgraph of a valid graph")
}

/// Couples two uniform-weight forests: every pair in `shared` receives one
/// common uniform weight in both graphs, all other edges draw independent
/// weights, and both forests are read off by reverse deletion.
pub fn k_infinity_joint<R: Rng + ?Sized>(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    shared: &[(u32, u32)],
    rng: &mut R,
) -> Result<(SimpleGraph, SimpleGraph), MsfError> {
    let mut shared_set: BTreeSet<(u32, u32)> = BTreeSet::new();
    for &(a, b) in shared {
        let e = (a.min(b), a.max(b));
        if g1.edge_index(e.0, e.1).is_none() || g2.edge_index(e.0, e.1).is_none() {
            return Err(MsfError::SharedEdgeMissing { u: e.0, v: e.1 });
        }
        shared_set.insert(e);
    }
    let mut w1 = alloc::vec![0.0f64; g1.edge_count()];
    let mut w2 = alloc::vec![0.0f64; g2.edge_count()];
    // walk the union of both edge sets in pair order so draws are reproducible
    let union: BTreeSet<(u32, u32)> = g1.edges().iter().chain(g2.edges()).copied().collect();
    for &(u, v) in &union {
        let e1 = g1.edge_index(u, v);
        let e2 = g2.edge_index(u, v);
        if shared_set.contains(&(u, v)) {
            let w = rng.gen::<f64>();
            w1[e1.unwrap() as usize] = w;
            w2[e2.unwrap() as usize] = w;
        } else {
            if let Some(e) = e1 {
                w1[e as usize] = rng.gen::<f64>();
            }
            if let Some(e) = e2 {
                w2[e as usize] = rng.gen::<f64>();
            }
        }
    }
    Ok((reverse_delete_msf(g1, &w1)?, reverse_delete_msf(g2, &w2)?))
}

/// Which of the two coupled weights to read off a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSide {
    Base,
    Noisy,
}

/// Weights for the edges of `g`, in edge order, looked up in the sample's
/// triples. Every edge of `g` must be a stored pair.
pub fn sample_weights(
    g: &SimpleGraph,
    sample: &CoupledSample,
    side: WeightSide,
) -> Result<Vec<f64>, MsfError> {
    let mut out = Vec::with_capacity(g.edge_count());
    let mut it = sample.triples.iter().peekable();
    for &(u, v) in g.edges() {
        while it.peek().is_some_and(|t| (t.u, t.v) < (u, v)) {
            it.next();
        }
        match it.peek() {
            Some(t) if (t.u, t.v) == (u, v) => out.push(match side {
                WeightSide::Base => t.w,
                WeightSide::Noisy => t.w_eps(),
            }),
            _ => return Err(MsfError::MissingTriple { u, v }),
        }
    }
    Ok(out)
}

/// Both coupled forests plus the shared cycle set.
#[derive(Clone, Debug, PartialEq)]
pub struct JointMsfResult {
    /// Forest of the base graph under the base weights.
    pub m: SimpleGraph,
    /// Forest of the noisy graph under the noisy weights.
    pub m_eps: SimpleGraph,
    /// Pairs lying on a cycle in both thresholded graphs, sorted.
    pub j_set: Vec<(u32, u32)>,
}

/// Runs the coupled forest construction on graphs derived from one sample.
pub fn joint_msf_from_sample(
    sample: &CoupledSample,
    d: &DerivedGraphs,
) -> Result<JointMsfResult, MsfError> {
    let w1 = sample_weights(&d.g, sample, WeightSide::Base)?;
    let w2 = sample_weights(&d.g_eps, sample, WeightSide::Noisy)?;
    let m = kruskal_msf(&d.g, &w1)?;
    let m_eps = kruskal_msf(&d.g_eps, &w2)?;
    let c1: Vec<(u32, u32)> = conn_edges(&d.g)
        .iter()
        .map(|&e| d.g.edges()[e as usize])
        .collect();
    let c2: BTreeSet<(u32, u32)> = conn_edges(&d.g_eps)
        .iter()
        .map(|&e| d.g_eps.edges()[e as usize])
        .collect();
    let j_set: Vec<(u32, u32)> = c1.into_iter().filter(|e| c2.contains(e)).collect();
    Ok(JointMsfResult { m, m_eps, j_set })
}

/// Sum of the given weights over the edges kept in `forest`, where `weights`
/// aligns with the edges of the ambient graph `g`.
pub fn forest_weight(g: &SimpleGraph, weights: &[f64], forest: &SimpleGraph) -> f64 {
    forest
        .edges()
        .iter()
        .map(|&(u, v)| {
            let e = g.edge_index(u, v).expect("forest edge present in ambient graph");
            weights[e as usize]
        })
        .sum()
}
