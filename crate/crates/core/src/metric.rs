//! Finite measured metric spaces, graph rescalings, and
//! Gromov-Hausdorff-Prokhorov distances.
//!
//! `ghp_exact` minimizes max(distortion/2, untransportable mass) over all
//! full correspondences; it is feasible only for tiny spaces and everything
//! larger goes through `ghp_upper_bound`, which evaluates one particular
//! correspondence (the mass staircase). Sequences of spaces are compared in
//! the l4 sense after padding the shorter list with the zero space.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::graph::{bfs_distances, components, ComponentDecomposition, SimpleGraph, UNREACHABLE};
use crate::streams::stream;

/// Largest allowed `|x| * |y|` for exact GHP enumeration.
pub const GHP_ENUM_LIMIT: usize = 20;

const TRIANGLE_TOL: f64 = 1e-12;
const MASS_TOL: f64 = 1e-9;
const FLOW_EPS: f64 = 1e-15;
const LBL_PAIRWISE_SOURCES: u64 = 5;

#[derive(Clone, Debug, PartialEq)]
pub enum MetricError {
    ShapeMismatch { dist_len: usize, mass_len: usize, k: usize },
    EmptySpace,
    NonFiniteEntry,
    NegativeDistance { i: usize, j: usize },
    Asymmetric { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    TriangleViolation { i: usize, j: usize, k: usize },
    NegativeMass { i: usize },
    /// `|x| * |y|` exceeds [`GHP_ENUM_LIMIT`].
    TooLarge { nx: usize, ny: usize },
    MassMismatch { total_x: f64, total_y: f64 },
    Disconnected,
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::ShapeMismatch { dist_len, mass_len, k } => {
                write!(f, "{dist_len} distances / {mass_len} masses for {k} points")
            }
            MetricError::EmptySpace => write!(f, "space needs at least one point"),
            MetricError::NonFiniteEntry => write!(f, "non-finite distance or mass"),
            MetricError::NegativeDistance { i, j } => write!(f, "dist[{i}][{j}] is negative"),
            MetricError::Asymmetric { i, j } => write!(f, "dist[{i}][{j}] != dist[{j}][{i}]"),
            MetricError::NonzeroDiagonal { i } => write!(f, "dist[{i}][{i}] is nonzero"),
            MetricError::TriangleViolation { i, j, k } => {
                write!(f, "triangle inequality fails on ({i}, {j}, {k})")
            }
            MetricError::NegativeMass { i } => write!(f, "mass[{i}] is negative"),
            MetricError::TooLarge { nx, ny } => {
                write!(f, "{nx} x {ny} points exceed the exact enumeration limit")
            }
            MetricError::MassMismatch { total_x, total_y } => {
                write!(f, "total masses {total_x} and {total_y} differ")
            }
            MetricError::Disconnected => write!(f, "graph is not connected"),
        }
    }
}

impl core::error::Error for MetricError {}

/// A finite metric space with a nonnegative mass on every point.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMeasuredMetricSpace {
    k: usize,
    /// Row-major `k * k` matrix.
    dist: Vec<f64>,
    mass: Vec<f64>,
}

impl FiniteMeasuredMetricSpace {
    pub fn new(k: usize, dist: Vec<f64>, mass: Vec<f64>) -> Result<Self, MetricError> {
        if k == 0 {
            return Err(MetricError::EmptySpace);
        }
        if dist.len() != k * k || mass.len() != k {
            return Err(MetricError::ShapeMismatch {
                dist_len: dist.len(),
                mass_len: mass.len(),
                k,
            });
        }
        if dist.iter().chain(mass.iter()).any(|v| !v.is_finite()) {
            return Err(MetricError::NonFiniteEntry);
        }
        for i in 0..k {
            if dist[i * k + i] != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i });
            }
            if mass[i] < 0.0 {
                return Err(MetricError::NegativeMass { i });
            }
            for j in 0..i {
                if dist[i * k + j] < 0.0 {
                    return Err(MetricError::NegativeDistance { i, j });
                }
                if dist[i * k + j] != dist[j * k + i] {
                    return Err(MetricError::Asymmetric { i, j });
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if dist[i * k + j] > dist[i * k + l] + dist[l * k + j] + TRIANGLE_TOL {
                        return Err(MetricError::TriangleViolation { i, j, k: l });
                    }
                }
            }
        }
        Ok(FiniteMeasuredMetricSpace { k, dist, mass })
    }

    pub fn point_count(&self) -> usize {
        self.k
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.k + j]
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.mass[i]
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().fold(0.0f64, |a, &b| a.max(b))
    }

    /// Copy with points reindexed as `perm`.
    fn permuted(&self, perm: &[usize]) -> Self {
        let k = self.k;
        let mut dist = Vec::with_capacity(k * k);
        for &i in perm {
            for &j in perm {
                dist.push(self.dist[i * k + j]);
            }
        }
        let mass = perm.iter().map(|&i| self.mass[i]).collect();
        FiniteMeasuredMetricSpace { k, dist, mass }
    }
}

/// Sorts points into a labeling-independent order: by row sum, then mass,
/// then the sorted row of distances.
fn canonical_form(sp: &FiniteMeasuredMetricSpace) -> FiniteMeasuredMetricSpace {
    let k = sp.k;
    let mut sorted_rows: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut sums: Vec<f64> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row: Vec<f64> = sp.dist[i * k..(i + 1) * k].to_vec();
        sums.push(row.iter().sum());
        row.sort_by(f64::total_cmp);
        sorted_rows.push(row);
    }
    let mut perm: Vec<usize> = (0..k).collect();
    perm.sort_by(|&a, &b| {
        sums[a]
            .total_cmp(&sums[b])
            .then(sp.mass[a].total_cmp(&sp.mass[b]))
            .then_with(|| {
                for (x, y) in sorted_rows[a].iter().zip(&sorted_rows[b]) {
                    let c = x.total_cmp(y);
                    if c != core::cmp::Ordering::Equal {
                        return c;
                    }
                }
                core::cmp::Ordering::Equal
            })
    });
    sp.permuted(&perm)
}

fn canonical_cmp(a: &FiniteMeasuredMetricSpace, b: &FiniteMeasuredMetricSpace) -> core::cmp::Ordering {
    a.k.cmp(&b.k)
        .then_with(|| {
            for (x, y) in a.dist.iter().zip(&b.dist) {
                let c = x.total_cmp(y);
                if c != core::cmp::Ordering::Equal {
                    return c;
                }
            }
            core::cmp::Ordering::Equal
        })
        .then_with(|| {
            for (x, y) in a.mass.iter().zip(&b.mass) {
                let c = x.total_cmp(y);
                if c != core::cmp::Ordering::Equal {
                    return c;
                }
            }
            core::cmp::Ordering::Equal
        })
}

/// A list of spaces compared positionally, with an implicit infinite tail of
/// the zero space.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpaceSequence {
    pub spaces: Vec<FiniteMeasuredMetricSpace>,
}

impl SpaceSequence {
    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&FiniteMeasuredMetricSpace> {
        self.spaces.get(i)
    }
}

/// A relation between the points of two spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence {
    pub pairs: Vec<(u32, u32)>,
}

impl Correspondence {
    /// Every point of both spaces appears in some pair.
    pub fn is_full(&self, nx: usize, ny: usize) -> bool {
        let mut seen_x = alloc::vec![false; nx];
        let mut seen_y = alloc::vec![false; ny];
        for &(i, j) in &self.pairs {
            seen_x[i as usize] = true;
            seen_y[j as usize] = true;
        }
        seen_x.iter().all(|&s| s) && seen_y.iter().all(|&s| s)
    }

    /// max over pair-of-pairs of the distance discrepancy.
    pub fn distortion(
        &self,
        x: &FiniteMeasuredMetricSpace,
        y: &FiniteMeasuredMetricSpace,
    ) -> f64 {
        let mut d: f64 = 0.0;
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            for &(i2, j2) in &self.pairs[a..] {
                let dx = x.distance(i as usize, i2 as usize);
                let dy = y.distance(j as usize, j2 as usize);
                d = d.max((dx - dy).abs());
            }
        }
        d
    }
}

/// One space per component: hop distances scaled by `n^{-1/3}`, every vertex
/// given mass `n^{-2/3}`. Dense matrices; meant for desk-scale graphs.
pub fn scale_components(g: &SimpleGraph, n: usize) -> SpaceSequence {
    let decomp = components(g);
    let root = libm::cbrt(n as f64);
    let dist_scale = 1.0 / root;
    let mass_unit = 1.0 / (root * root);
    let mut spaces = Vec::with_capacity(decomp.component_count());
    for members in &decomp.members {
        spaces.push(space_from_members(g, members, dist_scale, mass_unit));
    }
    SpaceSequence { spaces }
}

/// A connected graph as one space: hop distances scaled by `n^{-1/3}`, the
/// uniform probability measure on its vertices.
pub fn scale_probability(
    g: &SimpleGraph,
    n: usize,
) -> Result<FiniteMeasuredMetricSpace, MetricError> {
    let decomp = components(g);
    if decomp.component_count() != 1 {
        return Err(MetricError::Disconnected);
    }
    let k = g.vertex_count();
    let dist_scale = 1.0 / libm::cbrt(n as f64);
    Ok(space_from_members(
        g,
        &decomp.members[0],
        dist_scale,
        1.0 / k as f64,
    ))
}

fn space_from_members(
    g: &SimpleGraph,
    members: &[u32],
    dist_scale: f64,
    mass_each: f64,
) -> FiniteMeasuredMetricSpace {
    let k = members.len();
    let mut dist = alloc::vec![0.0f64; k * k];
    for (row, &src) in members.iter().enumerate() {
        let hops = bfs_distances(g, src);
        for (col, &v) in members.iter().enumerate() {
            debug_assert_ne!(hops[v as usize], UNREACHABLE);
            dist[row * k + col] = hops[v as usize] as f64 * dist_scale;
        }
    }
    FiniteMeasuredMetricSpace {
        k,
        dist,
        mass: alloc::vec![mass_each; k],
    }
}

/// The staircase correspondence: both point lists walked in step with their
/// cumulative mass fractions, so overlapping quantile intervals get paired.
fn staircase(x: &FiniteMeasuredMetricSpace, y: &FiniteMeasuredMetricSpace) -> Correspondence {
    let fractions = |sp: &FiniteMeasuredMetricSpace| -> Vec<f64> {
        let total = sp.total_mass();
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(sp.k + 1);
        out.push(0.0);
        for i in 0..sp.k {
            acc += if total > 0.0 {
                sp.mass[i] / total
            } else {
                1.0 / sp.k as f64
            };
            out.push(acc);
        }
        out[sp.k] = 1.0;
        out
    };
    let fx = fractions(x);
    let fy = fractions(y);
    let mut pairs = Vec::with_capacity(x.k + y.k);
    let (mut i, mut j) = (0usize, 0usize);
    while i < x.k && j < y.k {
        pairs.push((i as u32, j as u32));
        let (ex, ey) = (fx[i + 1], fy[j + 1]);
        if ex < ey {
            i += 1;
        } else if ey < ex {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    while i < x.k {
        pairs.push((i as u32, y.k as u32 - 1));
        i += 1;
    }
    while j < y.k {
        pairs.push((x.k as u32 - 1, j as u32));
        j += 1;
    }
    Correspondence { pairs }
}

/// Distance from a full correspondence evaluated the cheap way: half its
/// distortion, or the total-mass discrepancy if that is larger. Always an
/// upper bound for [`ghp_exact`] when the latter is defined.
pub fn ghp_upper_bound(x: &FiniteMeasuredMetricSpace, y: &FiniteMeasuredMetricSpace) -> f64 {
    let cx = canonical_form(x);
    let cy = canonical_form(y);
    let (a, b) = if canonical_cmp(&cx, &cy) == core::cmp::Ordering::Greater {
        (&cy, &cx)
    } else {
        (&cx, &cy)
    };
    let r = staircase(a, b);
    debug_assert!(r.is_full(a.k, b.k));
    let mass_part = (a.total_mass() - b.total_mass()).abs();
    (r.distortion(a, b) * 0.5).max(mass_part)
}

/// Mass that cannot be transported between the two mass vectors while staying
/// on the correspondence, computed by max-flow on the bipartite support.
fn missing_mass(
    x: &FiniteMeasuredMetricSpace,
    y: &FiniteMeasuredMetricSpace,
    masks: &[u32],
) -> f64 {
    let (nx, ny) = (x.k, y.k);
    let nodes = nx + ny + 2;
    let (s, t) = (0usize, nodes - 1);
    let total = x.total_mass().max(y.total_mass());
    let mut cap = alloc::vec![alloc::vec![0.0f64; nodes]; nodes];
    for i in 0..nx {
        cap[s][1 + i] = x.mass[i];
    }
    for j in 0..ny {
        cap[1 + nx + j][t] = y.mass[j];
    }
    for i in 0..nx {
        for j in 0..ny {
            if masks[i] >> j & 1 == 1 {
                cap[1 + i][1 + nx + j] = total + 1.0;
            }
        }
    }
    let mut flow = 0.0f64;
    loop {
        let mut prev = alloc::vec![usize::MAX; nodes];
        prev[s] = s;
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..nodes {
                if prev[v] == usize::MAX && cap[u][v] > FLOW_EPS {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(cap[prev[v]][v]);
            v = prev[v];
        }
        v = t;
        while v != s {
            cap[prev[v]][v] -= bottleneck;
            cap[v][prev[v]] += bottleneck;
            v = prev[v];
        }
        flow += bottleneck;
    }
    (total - flow).max(0.0)
}

struct ExactSearch<'a> {
    x: &'a FiniteMeasuredMetricSpace,
    y: &'a FiniteMeasuredMetricSpace,
    masks: Vec<u32>,
    best: f64,
}

impl ExactSearch<'_> {
    fn dfs(&mut self, level: usize, covered: u32, dis: f64) {
        let nx = self.x.k;
        let full = (1u32 << self.y.k) - 1;
        if level == nx {
            debug_assert_eq!(covered, full);
            let mm = missing_mass(self.x, self.y, &self.masks);
            let value = (dis * 0.5).max(mm);
            if value < self.best {
                self.best = value;
            }
            return;
        }
        // the final point must absorb whatever is still uncovered
        let required = if level + 1 == nx { full & !covered } else { 0 };
        let free = full & !required;
        let mut sub = free;
        loop {
            let mask = required | sub;
            if mask != 0 {
                let nd = self.extended_distortion(level, mask, dis);
                if nd * 0.5 < self.best {
                    self.masks[level] = mask;
                    self.dfs(level + 1, covered | mask, nd);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }

    fn extended_distortion(&self, level: usize, mask: u32, dis: f64) -> f64 {
        let mut d = dis;
        for j in 0..self.y.k {
            if mask >> j & 1 == 0 {
                continue;
            }
            // two partners of the same point must be close in y
            for j2 in 0..j {
                if mask >> j2 & 1 == 1 {
                    d = d.max(self.y.distance(j, j2));
                }
            }
            for prev in 0..level {
                let dx = self.x.distance(level, prev);
                for j2 in 0..self.y.k {
                    if self.masks[prev] >> j2 & 1 == 1 {
                        d = d.max((dx - self.y.distance(j, j2)).abs());
                    }
                }
            }
        }
        d
    }
}

/// Exact GHP distance between tiny spaces of equal total mass: the minimum
/// over full correspondences of max(distortion / 2, untransportable mass).
pub fn ghp_exact(
    x: &FiniteMeasuredMetricSpace,
    y: &FiniteMeasuredMetricSpace,
) -> Result<f64, MetricError> {
    if x.k * y.k > GHP_ENUM_LIMIT {
        return Err(MetricError::TooLarge { nx: x.k, ny: y.k });
    }
    let cx = canonical_form(x);
    let cy = canonical_form(y);
    let (a, b) = if canonical_cmp(&cx, &cy) == core::cmp::Ordering::Greater {
        (&cy, &cx)
    } else {
        (&cx, &cy)
    };
    let (ta, tb) = (a.total_mass(), b.total_mass());
    if (ta - tb).abs() > MASS_TOL {
        return Err(MetricError::MassMismatch {
            total_x: ta,
            total_y: tb,
        });
    }
    let incumbent = {
        let r = staircase(a, b);
        (r.distortion(a, b) * 0.5).max((ta - tb).abs())
    };
    let mut search = ExactSearch {
        x: a,
        y: b,
        masks: alloc::vec![0u32; a.k],
        best: incumbent,
    };
    search.dfs(0, 0, 0.0);
    Ok(search.best)
}

/// Distance to the zero space: max(diameter / 2, total mass).
pub fn zero_distance(x: &FiniteMeasuredMetricSpace) -> f64 {
    (x.diameter() * 0.5).max(x.total_mass())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ghp4Mode {
    /// Exact distance wherever the enumeration is feasible and the totals
    /// match, staircase bound everywhere else.
    ExactOrBound,
    /// Staircase bound for every pair.
    BoundOnly,
}

/// l4 distance between two space sequences, the shorter padded with the zero
/// space.
pub fn ghp4(s: &SpaceSequence, t: &SpaceSequence, mode: Ghp4Mode) -> f64 {
    let len = s.len().max(t.len());
    let mut acc = 0.0f64;
    for idx in 0..len {
        let d = match (s.get(idx), t.get(idx)) {
            (Some(x), Some(y)) => pair_distance(x, y, mode),
            (Some(x), None) | (None, Some(x)) => zero_distance(x),
            (None, None) => unreachable!(),
        };
        let d2 = d * d;
        acc += d2 * d2;
    }
    libm::sqrt(libm::sqrt(acc))
}

fn pair_distance(
    x: &FiniteMeasuredMetricSpace,
    y: &FiniteMeasuredMetricSpace,
    mode: Ghp4Mode,
) -> f64 {
    match mode {
        Ghp4Mode::BoundOnly => ghp_upper_bound(x, y),
        Ghp4Mode::ExactOrBound => {
            let feasible = x.k * y.k <= GHP_ENUM_LIMIT
                && (x.total_mass() - y.total_mass()).abs() <= MASS_TOL;
            if feasible {
                ghp_exact(x, y).expect("admissibility checked")
            } else {
                ghp_upper_bound(x, y)
            }
        }
    }
}

/// Stability bound read off the two thresholded graphs: with `D` their edge
/// symmetric difference, returns max(n^{-2/3} |D|, n^{-1/3} diam(D)), the
/// diameter taken over the components of the subgraph spanned by `D`.
pub fn symmetric_difference_bound(g: &SimpleGraph, g_eps: &SimpleGraph, n: usize) -> f64 {
    assert_eq!(g.vertex_count(), g_eps.vertex_count());
    let mut delta: Vec<(u32, u32)> = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let (ea, eb) = (g.edges(), g_eps.edges());
    while i < ea.len() || j < eb.len() {
        match (ea.get(i), eb.get(j)) {
            (Some(&a), Some(&b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(&a), Some(&b)) if a < b => {
                delta.push(a);
                i += 1;
            }
            (Some(_), Some(&b)) => {
                delta.push(b);
                j += 1;
            }
            (Some(&a), None) => {
                delta.push(a);
                i += 1;
            }
            (None, Some(&b)) => {
                delta.push(b);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    if delta.is_empty() {
        return 0.0;
    }
    let sub = SimpleGraph::from_edges(g.vertex_count(), &delta)
        .expect("edges of valid graphs stay valid");
    let decomp = components(&sub);
    let mut diam = 0u32;
    for c in 0..decomp.component_count() {
        if decomp.size(c) > 1 {
            diam = diam.max(crate::graph::component_diameter(&sub, &decomp, c));
        }
    }
    let root = libm::cbrt(n as f64);
    (delta.len() as f64 / (root * root)).max(diam as f64 / root)
}

/// Mean over ordered vertex pairs of the hop distance inside one component,
/// estimated from at most `max_sources` BFS roots (exact when the component
/// has no more members than that). Root choice depends only on the seed.
pub fn mean_pairwise_hops(
    g: &SimpleGraph,
    decomp: &ComponentDecomposition,
    comp: usize,
    max_sources: usize,
    seed: u64,
) -> f64 {
    let members = &decomp.members[comp];
    let k = members.len();
    if k <= 1 || max_sources == 0 {
        return 0.0;
    }
    let mut pool: Vec<u32> = members.clone();
    let sources: &[u32] = if k <= max_sources {
        &pool
    } else {
        let mut rng = stream(seed, &[LBL_PAIRWISE_SOURCES, comp as u64]);
        for i in 0..max_sources {
            let j = i + rng.gen_range(0..pool.len() - i);
            pool.swap(i, j);
        }
        &pool[..max_sources]
    };
    let mut sum = 0.0f64;
    for &src in sources {
        let hops = bfs_distances(g, src);
        for &v in members.iter() {
            if v != src {
                debug_assert_ne!(hops[v as usize], UNREACHABLE);
                sum += hops[v as usize] as f64;
            }
        }
    }
    sum / (sources.len() as f64 * (k - 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn graph(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        SimpleGraph::from_edges(n, edges).unwrap()
    }

    fn space(k: usize, dist: &[f64], mass: &[f64]) -> FiniteMeasuredMetricSpace {
        FiniteMeasuredMetricSpace::new(k, dist.to_vec(), mass.to_vec()).unwrap()
    }

    #[test]
    fn validation_rejects_malformed_spaces() {
        assert!(FiniteMeasuredMetricSpace::new(0, Vec::new(), Vec::new()).is_err());
        assert!(matches!(
            FiniteMeasuredMetricSpace::new(2, alloc::vec![0.0, 1.0, 2.0, 0.0], alloc::vec![1.0, 1.0]),
            Err(MetricError::Asymmetric { .. })
        ));
        assert!(matches!(
            FiniteMeasuredMetricSpace::new(1, alloc::vec![0.5], alloc::vec![1.0]),
            Err(MetricError::NonzeroDiagonal { .. })
        ));
        assert!(matches!(
            FiniteMeasuredMetricSpace::new(2, alloc::vec![0.0, 1.0, 1.0, 0.0], alloc::vec![-1.0, 1.0]),
            Err(MetricError::NegativeMass { .. })
        ));
        // 0 -- 1 at 1, 1 -- 2 at 1, but 0 -- 2 at 5
        assert!(matches!(
            FiniteMeasuredMetricSpace::new(
                3,
                alloc::vec![0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0],
                alloc::vec![1.0, 1.0, 1.0]
            ),
            Err(MetricError::TriangleViolation { .. })
        ));
    }

    #[test]
    fn single_edge_scaling() {
        let g = graph(2, &[(0, 1)]);
        let s = scale_components(&g, 8);
        assert_eq!(s.len(), 1);
        let sp = &s.spaces[0];
        assert_eq!(sp.point_count(), 2);
        assert_eq!(sp.distance(0, 1), 0.5);
        assert_eq!(sp.mass(0), 0.25);
        assert_eq!(sp.mass(1), 0.25);
    }

    #[test]
    fn empty_graph_scales_to_singletons() {
        let g = SimpleGraph::new(5);
        let s = scale_components(&g, 5);
        assert_eq!(s.len(), 5);
        let unit = 1.0 / (libm::cbrt(5.0) * libm::cbrt(5.0));
        for sp in &s.spaces {
            assert_eq!(sp.point_count(), 1);
            assert_eq!(sp.mass(0), unit);
            assert_eq!(sp.diameter(), 0.0);
        }
    }

    #[test]
    fn path_scaling_in_large_ambient() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let s = scale_components(&g, 1000);
        let sp = &s.spaces[0];
        assert_eq!(sp.distance(0, 1), 0.1);
        assert_eq!(sp.distance(0, 2), 0.2);
        assert_eq!(sp.mass(0), 0.01);
    }

    #[test]
    fn probability_scaling() {
        let one = SimpleGraph::new(1);
        let sp = scale_probability(&one, 64).unwrap();
        assert_eq!(sp.point_count(), 1);
        assert_eq!(sp.mass(0), 1.0);

        let edge = graph(2, &[(0, 1)]);
        let sp = scale_probability(&edge, 8).unwrap();
        assert_eq!(sp.distance(0, 1), 0.5);
        assert_eq!(sp.mass(0), 0.5);

        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let sp = scale_probability(&star, 1000).unwrap();
        assert_eq!(sp.distance(1, 2), 0.2);
        assert_eq!(sp.mass(2), 0.25);
        assert!((sp.total_mass() - 1.0).abs() < 1e-12);

        let two = SimpleGraph::new(2);
        assert_eq!(scale_probability(&two, 8), Err(MetricError::Disconnected));
    }

    #[test]
    fn exact_distance_on_reference_pairs() {
        let two = space(2, &[0.0, 1.0, 1.0, 0.0], &[0.5, 0.5]);
        let one = space(1, &[0.0], &[1.0]);
        assert_eq!(ghp_exact(&two, &one).unwrap(), 0.5);
        assert_eq!(ghp_exact(&one, &one).unwrap(), 0.0);
        assert_eq!(ghp_exact(&two, &two).unwrap(), 0.0);
    }

    #[test]
    fn exact_distance_rejections() {
        let big = space(
            5,
            &{
                let mut d = alloc::vec![1.0; 25];
                for i in 0..5 {
                    d[i * 5 + i] = 0.0;
                }
                d
            },
            &[1.0; 5],
        );
        assert!(matches!(
            ghp_exact(&big, &big),
            Err(MetricError::TooLarge { nx: 5, ny: 5 })
        ));
        let a = space(1, &[0.0], &[1.0]);
        let b = space(1, &[0.0], &[2.0]);
        assert!(matches!(
            ghp_exact(&a, &b),
            Err(MetricError::MassMismatch { .. })
        ));
    }

    #[test]
    fn upper_bound_reference_values() {
        let two = space(2, &[0.0, 1.0, 1.0, 0.0], &[0.5, 0.5]);
        let one = space(1, &[0.0], &[1.0]);
        assert_eq!(ghp_upper_bound(&two, &two), 0.0);
        let b = ghp_upper_bound(&two, &one);
        assert!((0.5..=1.0).contains(&b), "bound {b}");
        // diameter discrepancy lower-bounds any full correspondence
        let far = space(2, &[0.0, 9.0, 9.0, 0.0], &[0.5, 0.5]);
        assert!(ghp_upper_bound(&far, &one) >= 4.5);
    }

    #[test]
    fn sequence_distance_basics() {
        let g = graph(4, &[(0, 1), (1, 2), (0, 3)]);
        let s = scale_components(&g, 4);
        assert_eq!(ghp4(&s, &s, Ghp4Mode::ExactOrBound), 0.0);
        assert_eq!(ghp4(&s, &s, Ghp4Mode::BoundOnly), 0.0);
        let empty = SpaceSequence::default();
        let one = SpaceSequence {
            spaces: alloc::vec![space(2, &[0.0, 3.0, 3.0, 0.0], &[0.2, 0.2])],
        };
        assert_eq!(ghp4(&one, &empty, Ghp4Mode::ExactOrBound), 1.5);
        let a = SpaceSequence {
            spaces: alloc::vec![space(1, &[0.0], &[0.7])],
        };
        assert_eq!(ghp4(&a, &a.clone(), Ghp4Mode::ExactOrBound), 0.0);
    }

    #[test]
    fn symmetric_difference_reference_values() {
        let g = graph(8, &[(0, 1), (2, 3)]);
        assert_eq!(symmetric_difference_bound(&g, &g, 8), 0.0);
        let h = graph(8, &[(0, 1)]);
        // one differing edge: max(1/4, 1/2)
        assert_eq!(symmetric_difference_bound(&g, &h, 8), 0.5);

        let a = graph(1000, &[(0, 1), (1, 2), (2, 3)]);
        let b = SimpleGraph::new(1000);
        // three-edge path: max(0.03, 3 * 0.1)
        assert!((symmetric_difference_bound(&a, &b, 1000) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn pairwise_hops_exact_and_sampled() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let d = components(&p3);
        let mpd = mean_pairwise_hops(&p3, &d, 0, 32, 1);
        assert!((mpd - 4.0 / 3.0).abs() < 1e-15);
        // every vertex of a cycle sees the same distance profile, so any
        // sampled subset of roots gives the exact answer
        let c5 = graph(5, &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let d = components(&c5);
        let exact = mean_pairwise_hops(&c5, &d, 0, 5, 7);
        let sampled = mean_pairwise_hops(&c5, &d, 0, 2, 7);
        assert!((exact - 1.5).abs() < 1e-15);
        assert!((sampled - 1.5).abs() < 1e-15);
        assert_eq!(
            mean_pairwise_hops(&c5, &d, 0, 2, 7),
            mean_pairwise_hops(&c5, &d, 0, 2, 7)
        );
    }
}
