//! Sparse sampling of the coupled random-weight process on the complete graph.
//!
//! Every unordered pair `e` of `K_n` independently carries a weight
//! `w_e ~ U[0,1]`, a resampling flag `b_e ~ Bernoulli(epsilon)` and a
//! replacement weight `w'_e ~ U[0,1]`; the noisy weight is `w_eps = w` when
//! `b = 0` and `w'` otherwise. Only pairs with `min(w, w_eps) <= p_horizon`
//! can ever enter a thresholded graph, so only those triples are stored; the
//! scan over the `C(n,2)` pair slots uses geometric skip-sampling at the
//! per-pair inclusion probability.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{GraphError, SimpleGraph};
use crate::streams::stream;

/// Default cap on the expected number of stored triples per sample.
pub const DEFAULT_TRIPLE_BUDGET: u64 = 32_000_000;

/// Pair indices handled per gap-sampling stream; fixed so that results do not
/// depend on how work is scheduled.
const PAIR_CHUNK: u64 = 1 << 20;

const LBL_GAP: u64 = 1;
const LBL_TRIPLE: u64 = 2;
const LBL_EXT_GAP: u64 = 3;
const LBL_EXT_TRIPLE: u64 = 4;

#[derive(Clone, Debug, PartialEq)]
pub enum SampleError {
    EpsilonOutOfRange { epsilon: f64 },
    HorizonOutOfRange { p_horizon: f64 },
    /// `1/n + lambda*n^{-4/3}` fell outside `(0, p_horizon]`.
    CriticalOutOfRange { p: f64, p_horizon: f64 },
    TooFewVertices { n: usize },
    /// Expected stored triples exceed the configured budget.
    MemoryBudget { expected: u64, budget: u64 },
    ThresholdAboveHorizon { p: f64, p_horizon: f64 },
    HorizonNotExtended { p_new: f64, p_horizon: f64 },
    /// `theta(p, epsilon) >= 1`, so the conditional edge law is undefined.
    ThetaNotBelowOne { theta: f64 },
    Graph(GraphError),
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleError::EpsilonOutOfRange { epsilon } => {
                write!(f, "epsilon {epsilon} outside [0, 1]")
            }
            SampleError::HorizonOutOfRange { p_horizon } => {
                write!(f, "p_horizon {p_horizon} outside (0, 1]")
            }
            SampleError::CriticalOutOfRange { p, p_horizon } => {
                write!(f, "critical probability {p} outside (0, p_horizon={p_horizon}]")
            }
            SampleError::TooFewVertices { n } => write!(f, "need at least 2 vertices, got {n}"),
            SampleError::MemoryBudget { expected, budget } => {
                write!(f, "expected {expected} triples exceeds budget {budget}")
            }
            SampleError::ThresholdAboveHorizon { p, p_horizon } => {
                write!(f, "threshold {p} above sampled horizon {p_horizon}")
            }
            SampleError::HorizonNotExtended { p_new, p_horizon } => {
                write!(f, "new horizon {p_new} does not exceed current {p_horizon}")
            }
            SampleError::ThetaNotBelowOne { theta } => {
                write!(f, "theta {theta} is not below 1")
            }
            SampleError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SampleError {}

impl From<GraphError> for SampleError {
    fn from(e: GraphError) -> Self {
        SampleError::Graph(e)
    }
}

/// Critical-window edge probability `1/n + lambda * n^{-4/3}`.
pub fn p_critical(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    1.0 / nf + lambda / (libm::cbrt(nf) * nf)
}

/// Sampling horizon for full minimum-spanning-tree runs:
/// `max(p(n, lambda), 3 ln(n) / n)`, capped at 1. The tail term keeps the
/// thresholded graph connected with high probability.
pub fn mst_horizon(n: usize, lambda: Option<f64>) -> f64 {
    let nf = n as f64;
    let tail = 3.0 * libm::log(nf) / nf;
    let p = p_critical(n, lambda.unwrap_or(0.0));
    p.max(tail).min(1.0)
}

/// `theta = p * (1 - epsilon + epsilon * p)`: probability that one pair lies
/// in both thresholded graphs.
pub fn theta(p: f64, epsilon: f64) -> f64 {
    p * (1.0 - epsilon + epsilon * p)
}

/// Probability that one pair satisfies `min(w, w_eps) <= p_horizon`:
/// `q = (1 - eps) * p + eps * (1 - (1 - p)^2)`.
pub fn inclusion_probability(p_horizon: f64, epsilon: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p_horizon));
    debug_assert!((0.0..=1.0).contains(&epsilon));
    let p = p_horizon;
    (1.0 - epsilon) * p + epsilon * (1.0 - (1.0 - p) * (1.0 - p))
}

/// Conditional probability that a pair is in the first thresholded graph
/// given it is outside the intersection: `rho = p*eps*(1-p) / (1 - theta)`.
pub fn rho(p: f64, epsilon: f64) -> Result<f64, SampleError> {
    let th = theta(p, epsilon);
    if th >= 1.0 {
        return Err(SampleError::ThetaNotBelowOne { theta: th });
    }
    Ok(p * epsilon * (1.0 - p) / (1.0 - th))
}

/// Parameters of the coupled sampling run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParameters {
    pub n: usize,
    /// Per-edge resampling probability in `[0, 1]`.
    pub epsilon: f64,
    /// Criticality parameter; when set, `p(n, lambda)` must lie in
    /// `(0, p_horizon]`.
    pub lambda: Option<f64>,
    /// Sampled weight horizon in `(0, 1]`.
    pub p_horizon: f64,
}

impl NoiseParameters {
    pub fn new(
        n: usize,
        epsilon: f64,
        lambda: Option<f64>,
        p_horizon: f64,
    ) -> Result<Self, SampleError> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(SampleError::EpsilonOutOfRange { epsilon });
        }
        if !(p_horizon > 0.0 && p_horizon <= 1.0) {
            return Err(SampleError::HorizonOutOfRange { p_horizon });
        }
        if let Some(l) = lambda {
            let p = p_critical(n, l);
            if !(p > 0.0 && p <= p_horizon) {
                return Err(SampleError::CriticalOutOfRange { p, p_horizon });
            }
        }
        Ok(NoiseParameters {
            n,
            epsilon,
            lambda,
            p_horizon,
        })
    }

    /// Parameters sampling exactly up to the critical probability.
    pub fn critical(n: usize, lambda: f64, epsilon: f64) -> Result<Self, SampleError> {
        let p = p_critical(n, lambda);
        if !(p > 0.0 && p <= 1.0) {
            return Err(SampleError::CriticalOutOfRange { p, p_horizon: 1.0 });
        }
        NoiseParameters::new(n, epsilon, Some(lambda), p)
    }

    /// Critical probability when `lambda` is set, else the horizon.
    pub fn p(&self) -> f64 {
        self.lambda
            .map(|l| p_critical(self.n, l))
            .unwrap_or(self.p_horizon)
    }

    pub fn pair_count(&self) -> u64 {
        let n = self.n as u64;
        n * (n - 1) / 2
    }
}

/// One stored pair of the coupled weight process.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeWeightTriple {
    pub u: u32,
    pub v: u32,
    pub w: f64,
    pub b: bool,
    /// Replacement weight; meaningful only when `b` is set.
    pub w_prime: f64,
}

impl EdgeWeightTriple {
    /// The noisy weight: `w` if the pair kept its weight, else `w_prime`.
    pub fn w_eps(&self) -> f64 {
        if self.b {
            self.w_prime
        } else {
            self.w
        }
    }
}

/// All pairs of `K_n` with `min(w, w_eps) <= p_horizon`, sorted by pair.
/// Every absent pair implicitly has `min(w, w_eps) > p_horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledSample {
    pub params: NoiseParameters,
    pub triples: Vec<EdgeWeightTriple>,
    /// Master seed the sample was generated from.
    pub seed: u64,
}

/// Thresholded graphs read off a sample at some `p`: the base graph, the
/// noisy graph, their intersection `i_cap`, and the kept subset `i_check`
/// (intersection pairs whose weight was not resampled).
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedGraphs {
    pub g: SimpleGraph,
    pub g_eps: SimpleGraph,
    pub i_cap: Vec<(u32, u32)>,
    pub i_check: Vec<(u32, u32)>,
    pub p: f64,
}

fn geometric_skip(rng: &mut ChaCha8Rng, ln_one_minus_q: f64) -> u64 {
    if ln_one_minus_q == f64::NEG_INFINITY {
        return 0; // q = 1: every pair is included
    }
    let u = 1.0 - rng.gen::<f64>(); // in (0, 1]
    (libm::log(u) / ln_one_minus_q) as u64
}

/// Walks pair indices of `K_n` in lexicographic `(u, v)` order.
struct PairCursor {
    n: u64,
    k: u64,
    u: u64,
    v: u64,
}

impl PairCursor {
    fn new(n: u64) -> Self {
        PairCursor { n, k: 0, u: 0, v: 1 }
    }

    /// Advances to absolute pair index `target >=` current position.
    fn seek(&mut self, target: u64) -> (u32, u32) {
        debug_assert!(target >= self.k);
        let mut gap = target - self.k;
        while gap > 0 {
            let row_left = self.n - 1 - self.v;
            if gap <= row_left {
                self.v += gap;
                break;
            }
            gap -= row_left + 1;
            self.u += 1;
            self.v = self.u + 1;
        }
        self.k = target;
        (self.u as u32, self.v as u32)
    }
}

/// Lexicographic index of the pair `(u, v)`, `u < v`, on `n` vertices.
fn pair_index(n: u64, u: u64, v: u64) -> u64 {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Triple law conditioned on `min(w, w_eps) <= p`.
fn conditioned_triple(
    rng: &mut ChaCha8Rng,
    u: u32,
    v: u32,
    p: f64,
    epsilon: f64,
    q: f64,
) -> EdgeWeightTriple {
    let keep_share = if q > 0.0 { (1.0 - epsilon) * p / q } else { 1.0 };
    if rng.gen::<f64>() < keep_share {
        // b = 0, condition reduces to w <= p
        let w = p * rng.gen::<f64>();
        EdgeWeightTriple { u, v, w, b: false, w_prime: w }
    } else {
        // b = 1, condition is min(w, w') <= p; split the L-shaped region into
        // {w <= p} (area p) and {w > p, w' <= p} (area (1-p)p)
        if rng.gen::<f64>() < 1.0 / (2.0 - p) {
            let w = p * rng.gen::<f64>();
            let w_prime = rng.gen::<f64>();
            EdgeWeightTriple { u, v, w, b: true, w_prime }
        } else {
            let w = p + (1.0 - p) * rng.gen::<f64>();
            let w_prime = p * rng.gen::<f64>();
            EdgeWeightTriple { u, v, w, b: true, w_prime }
        }
    }
}

/// Triple law conditioned on `p_old < min(w, w_eps) <= p_new`.
fn extension_triple(
    rng: &mut ChaCha8Rng,
    u: u32,
    v: u32,
    p_old: f64,
    p_new: f64,
    epsilon: f64,
) -> EdgeWeightTriple {
    let span = p_new - p_old;
    let mass_keep = (1.0 - epsilon) * span;
    let mass_flip = epsilon * ((1.0 - p_old) * (1.0 - p_old) - (1.0 - p_new) * (1.0 - p_new));
    let keep_share = if mass_keep + mass_flip > 0.0 {
        mass_keep / (mass_keep + mass_flip)
    } else {
        1.0
    };
    if rng.gen::<f64>() < keep_share {
        let w = p_old + span * rng.gen::<f64>();
        EdgeWeightTriple { u, v, w, b: false, w_prime: w }
    } else {
        // both weights exceed p_old; the smaller lands in (p_old, p_new]
        let a = 1.0 - p_old;
        let b = 1.0 - p_new;
        if rng.gen::<f64>() < a / (a + b) {
            let w = p_old + span * rng.gen::<f64>();
            let w_prime = p_old + a * rng.gen::<f64>();
            EdgeWeightTriple { u, v, w, b: true, w_prime }
        } else {
            let w = p_new + b * rng.gen::<f64>();
            let w_prime = p_old + span * rng.gen::<f64>();
            EdgeWeightTriple { u, v, w, b: true, w_prime }
        }
    }
}

pub fn sample_coupled(params: &NoiseParameters, seed: u64) -> Result<CoupledSample, SampleError> {
    sample_coupled_with_budget(params, seed, DEFAULT_TRIPLE_BUDGET)
}

pub fn sample_coupled_with_budget(
    params: &NoiseParameters,
    seed: u64,
    budget: u64,
) -> Result<CoupledSample, SampleError> {
    if params.n < 2 {
        return Err(SampleError::TooFewVertices { n: params.n });
    }
    let total = params.pair_count();
    let q = inclusion_probability(params.p_horizon, params.epsilon);
    let expected = q * total as f64;
    if expected > budget as f64 {
        return Err(SampleError::MemoryBudget {
            expected: expected as u64,
            budget,
        });
    }
    let ln_rest = libm::log1p(-q);
    let mut cursor = PairCursor::new(params.n as u64);
    let mut triples = Vec::with_capacity(expected as usize + 64);
    let mut chunk_start = 0u64;
    let mut chunk_id = 0u64;
    while chunk_start < total {
        let chunk_end = (chunk_start + PAIR_CHUNK).min(total);
        let mut gap_rng = stream(seed, &[LBL_GAP, chunk_id]);
        let mut pos = chunk_start;
        loop {
            let k = pos.saturating_add(geometric_skip(&mut gap_rng, ln_rest));
            if k >= chunk_end {
                break;
            }
            let (u, v) = cursor.seek(k);
            let mut triple_rng = stream(seed, &[LBL_TRIPLE, k]);
            triples.push(conditioned_triple(
                &mut triple_rng,
                u,
                v,
                params.p_horizon,
                params.epsilon,
                q,
            ));
            pos = k + 1;
        }
        chunk_start = chunk_end;
        chunk_id += 1;
    }
    Ok(CoupledSample {
        params: *params,
        triples,
        seed,
    })
}

/// Thresholds a sample at `p <= p_horizon`.
pub fn derive_graphs(sample: &CoupledSample, p: f64) -> Result<DerivedGraphs, SampleError> {
    if !(p >= 0.0) || p > sample.params.p_horizon {
        return Err(SampleError::ThresholdAboveHorizon {
            p,
            p_horizon: sample.params.p_horizon,
        });
    }
    let n = sample.params.n;
    let mut g_edges = Vec::new();
    let mut ge_edges = Vec::new();
    let mut i_cap = Vec::new();
    let mut i_check = Vec::new();
    for t in &sample.triples {
        let in_g = t.w <= p;
        let in_ge = t.w_eps() <= p;
        let e = (t.u, t.v);
        if in_g {
            g_edges.push(e);
        }
        if in_ge {
            ge_edges.push(e);
        }
        if in_g && in_ge {
            i_cap.push(e);
            if !t.b {
                i_check.push(e);
            }
        }
    }
    Ok(DerivedGraphs {
        g: SimpleGraph::from_edges(n, &g_edges)?,
        g_eps: SimpleGraph::from_edges(n, &ge_edges)?,
        i_cap,
        i_check,
        p,
    })
}

pub fn extend_horizon(
    sample: &CoupledSample,
    p_new: f64,
    seed: u64,
) -> Result<CoupledSample, SampleError> {
    extend_horizon_with_budget(sample, p_new, seed, DEFAULT_TRIPLE_BUDGET)
}

/// Extends the horizon to `p_new`, adding conditionally sampled triples for
/// absent pairs; the result is distributed exactly as a fresh sample at
/// `p_new`, with all existing triples unchanged.
pub fn extend_horizon_with_budget(
    sample: &CoupledSample,
    p_new: f64,
    seed: u64,
    budget: u64,
) -> Result<CoupledSample, SampleError> {
    let p_old = sample.params.p_horizon;
    if !(p_new > p_old && p_new <= 1.0) {
        return Err(SampleError::HorizonNotExtended {
            p_new,
            p_horizon: p_old,
        });
    }
    let params = NoiseParameters {
        p_horizon: p_new,
        ..sample.params
    };
    let total = params.pair_count();
    let epsilon = params.epsilon;
    let q_old = inclusion_probability(p_old, epsilon);
    let q_new = inclusion_probability(p_new, epsilon);
    if q_new * total as f64 > budget as f64 {
        return Err(SampleError::MemoryBudget {
            expected: (q_new * total as f64) as u64,
            budget,
        });
    }
    // per absent pair: P(now included) = (q_new - q_old) / (1 - q_old)
    let r = if q_old < 1.0 {
        ((q_new - q_old) / (1.0 - q_old)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let ln_rest = if r < 1.0 {
        libm::log1p(-r)
    } else {
        f64::NEG_INFINITY
    };
    let n64 = params.n as u64;
    let existing: &[EdgeWeightTriple] = &sample.triples;
    let mut existing_iter = existing
        .iter()
        .map(|t| pair_index(n64, t.u as u64, t.v as u64))
        .peekable();
    let mut additions: Vec<EdgeWeightTriple> = Vec::new();
    let mut cursor = PairCursor::new(n64);
    let mut chunk_start = 0u64;
    let mut chunk_id = 0u64;
    while chunk_start < total {
        let chunk_end = (chunk_start + PAIR_CHUNK).min(total);
        let mut gap_rng = stream(seed, &[LBL_EXT_GAP, chunk_id]);
        let mut pos = chunk_start;
        loop {
            let k = pos.saturating_add(geometric_skip(&mut gap_rng, ln_rest));
            if k >= chunk_end {
                break;
            }
            pos = k + 1;
            while existing_iter.peek().is_some_and(|&ek| ek < k) {
                existing_iter.next();
            }
            if existing_iter.peek() == Some(&k) {
                continue; // pair already sampled; its law is already fixed
            }
            let (u, v) = cursor.seek(k);
            let mut triple_rng = stream(seed, &[LBL_EXT_TRIPLE, k]);
            additions.push(extension_triple(&mut triple_rng, u, v, p_old, p_new, epsilon));
        }
        chunk_start = chunk_end;
        chunk_id += 1;
    }
    // merge by pair order
    let mut triples = Vec::with_capacity(existing.len() + additions.len());
    let mut a = existing.iter().peekable();
    let mut b = additions.iter().peekable();
    while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
        if (x.u, x.v) < (y.u, y.v) {
            triples.push(**x);
            a.next();
        } else {
            triples.push(**y);
            b.next();
        }
    }
    triples.extend(a.copied());
    triples.extend(b.copied());
    Ok(CoupledSample {
        params,
        triples,
        seed: sample.seed,
    })
}
