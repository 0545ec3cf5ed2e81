//! Simple undirected graphs with the structural queries used throughout the
//! lab: components, BFS metrics, cycle edges, surplus, girth and simple-cycle
//! counts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dsu::DisjointSets;

/// Distance value reported for vertices a BFS never reaches.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// An endpoint is not in `0..n`.
    VertexOutOfRange { vertex: u32, n: usize },
    SelfLoop { vertex: u32 },
    DuplicateEdge { u: u32, v: u32 },
    /// A tree-only operation was applied to a component containing a cycle.
    CyclicComponent,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::CyclicComponent => write!(f, "component contains a cycle"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted lexicographically, so the
/// index of an edge in [`edges`](Self::edges) is a stable identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj_off: Vec<u32>,
    /// Flattened adjacency: `(neighbor, edge index)`.
    adj: Vec<(u32, u32)>,
}

impl SimpleGraph {
    /// Graph with `n` vertices and no edges.
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: Vec::new(),
            adj_off: vec![0; n + 1],
            adj: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Endpoint order within a pair does not
    /// matter; self-loops and repeated pairs are rejected.
    pub fn from_edges(n: usize, input: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(input.len());
        for &(a, b) in input {
            if a as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, n });
            }
            if b as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            edges.push(if a < b { (a, b) } else { (b, a) });
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
            }
        }
        let mut g = SimpleGraph {
            n,
            edges,
            adj_off: Vec::new(),
            adj: Vec::new(),
        };
        g.rebuild_adjacency();
        Ok(g)
    }

    fn rebuild_adjacency(&mut self) {
        let mut deg = vec![0u32; self.n + 1];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut off = vec![0u32; self.n + 1];
        for i in 0..self.n {
            off[i + 1] = off[i] + deg[i];
        }
        let mut fill = off.clone();
        let mut adj = vec![(0u32, 0u32); 2 * self.edges.len()];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            adj[fill[u as usize] as usize] = (v, idx as u32);
            fill[u as usize] += 1;
            adj[fill[v as usize] as usize] = (u, idx as u32);
            fill[v as usize] += 1;
        }
        self.adj_off = off;
        self.adj = adj;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized, lexicographically sorted edge list.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        let lo = self.adj_off[v as usize] as usize;
        let hi = self.adj_off[v as usize + 1] as usize;
        &self.adj[lo..hi]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    /// Index of the edge joining `a` and `b`, if present.
    pub fn edge_index(&self, a: u32, b: u32) -> Option<u32> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).ok().map(|i| i as u32)
    }
}

/// Connected components of a graph, ordered by decreasing vertex count with
/// ties broken by smallest contained vertex label. Ids are contiguous from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Component id of each vertex.
    pub assignment: Vec<u32>,
    /// Vertices of each component, ascending.
    pub members: Vec<Vec<u32>>,
    /// Number of edges inside each component.
    pub edge_counts: Vec<u64>,
}

impl ComponentDecomposition {
    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self, comp: usize) -> usize {
        self.members[comp].len()
    }
}

/// Labels connected components.
pub fn components(g: &SimpleGraph) -> ComponentDecomposition {
    let n = g.vertex_count();
    let mut label = vec![u32::MAX; n];
    let mut order: Vec<(usize, u32)> = Vec::new(); // (size, min vertex) per provisional id
    let mut queue = Vec::new();
    for start in 0..n as u32 {
        if label[start as usize] != u32::MAX {
            continue;
        }
        let id = order.len() as u32;
        let mut size = 0usize;
        label[start as usize] = id;
        queue.push(start);
        while let Some(v) = queue.pop() {
            size += 1;
            for &(w, _) in g.neighbors(v) {
                if label[w as usize] == u32::MAX {
                    label[w as usize] = id;
                    queue.push(w);
                }
            }
        }
        // vertices are scanned in increasing order, so `start` is the minimum
        order.push((size, start));
    }
    let mut ranked: Vec<u32> = (0..order.len() as u32).collect();
    ranked.sort_by_key(|&id| (usize::MAX - order[id as usize].0, order[id as usize].1));
    let mut remap = vec![0u32; order.len()];
    for (new_id, &old_id) in ranked.iter().enumerate() {
        remap[old_id as usize] = new_id as u32;
    }
    let mut assignment = label;
    for l in assignment.iter_mut() {
        *l = remap[*l as usize];
    }
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); order.len()];
    for v in 0..n as u32 {
        members[assignment[v as usize] as usize].push(v);
    }
    let mut edge_counts = vec![0u64; order.len()];
    for &(u, _) in g.edges() {
        edge_counts[assignment[u as usize] as usize] += 1;
    }
    ComponentDecomposition {
        assignment,
        members,
        edge_counts,
    }
}

/// BFS hop distances from `source`; unreached vertices get [`UNREACHABLE`].
pub fn bfs_distances(g: &SimpleGraph, source: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = alloc::collections::VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize];
        for &(w, _) in g.neighbors(v) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = d + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn farthest_in(dist: &[u32], members: &[u32]) -> (u32, u32) {
    let mut best = (members[0], 0);
    for &v in members {
        let d = dist[v as usize];
        if d != UNREACHABLE && d > best.1 {
            best = (v, d);
        }
    }
    best
}

/// Hop diameter of component `comp`, which must be acyclic (double BFS).
pub fn tree_diameter(
    g: &SimpleGraph,
    decomp: &ComponentDecomposition,
    comp: usize,
) -> Result<u32, GraphError> {
    let members = &decomp.members[comp];
    if decomp.edge_counts[comp] != members.len() as u64 - 1 {
        return Err(GraphError::CyclicComponent);
    }
    let first = bfs_distances(g, members[0]);
    let (far, _) = farthest_in(&first, members);
    let second = bfs_distances(g, far);
    Ok(farthest_in(&second, members).1)
}

/// Hop diameter of component `comp` by BFS from every member vertex; works for
/// cyclic components as well.
pub fn component_diameter(g: &SimpleGraph, decomp: &ComponentDecomposition, comp: usize) -> u32 {
    let members = &decomp.members[comp];
    let mut best = 0;
    for &v in members {
        let dist = bfs_distances(g, v);
        best = best.max(farthest_in(&dist, members).1);
    }
    best
}

/// Edges of `comp` beyond a spanning tree: `m - k + 1` for a connected
/// component with `k` vertices and `m` edges.
pub fn surplus(decomp: &ComponentDecomposition, comp: usize) -> u64 {
    decomp.edge_counts[comp] + 1 - decomp.members[comp].len() as u64
}

/// Indices of edges lying on at least one cycle (equivalently the
/// non-bridges), sorted ascending.
pub fn conn_edges(g: &SimpleGraph) -> Vec<u32> {
    conn_edges_masked(g, None)
}

/// Like [`conn_edges`] but restricted to edges whose `alive` flag is set.
pub fn conn_edges_masked(g: &SimpleGraph, alive: Option<&[bool]>) -> Vec<u32> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let is_alive = |e: u32| alive.map_or(true, |a| a[e as usize]);
    let mut ord = vec![UNREACHABLE; n];
    let mut low = vec![0u32; n];
    let mut bridge = vec![false; m];
    let mut counter = 0u32;
    // iterative DFS over (vertex, incoming edge, neighbor cursor)
    let mut stack: Vec<(u32, u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if ord[root as usize] != UNREACHABLE {
            continue;
        }
        ord[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push((root, u32::MAX, 0));
        while let Some(&mut (v, in_edge, ref mut cursor)) = stack.last_mut() {
            let nbrs = g.neighbors(v);
            if *cursor < nbrs.len() {
                let (w, e) = nbrs[*cursor];
                *cursor += 1;
                if !is_alive(e) || e == in_edge {
                    continue;
                }
                if ord[w as usize] == UNREACHABLE {
                    ord[w as usize] = counter;
                    low[w as usize] = counter;
                    counter += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v as usize] = low[v as usize].min(ord[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&mut (parent, _, _)) = stack.last_mut() {
                    if low[v as usize] > ord[parent as usize] {
                        bridge[in_edge as usize] = true;
                    }
                    low[parent as usize] = low[parent as usize].min(low[v as usize]);
                }
            }
        }
    }
    (0..m as u32)
        .filter(|&e| is_alive(e) && !bridge[e as usize])
        .collect()
}

/// Vertex flags for the 2-core: the maximal subgraph of minimum degree two.
fn two_core(g: &SimpleGraph, members: &[u32]) -> Vec<bool> {
    let mut keep = vec![false; g.vertex_count()];
    let mut deg = vec![0u32; g.vertex_count()];
    for &v in members {
        keep[v as usize] = true;
        deg[v as usize] = g.degree(v) as u32;
    }
    let mut queue: Vec<u32> = members
        .iter()
        .copied()
        .filter(|&v| deg[v as usize] <= 1)
        .collect();
    while let Some(v) = queue.pop() {
        if !keep[v as usize] {
            continue;
        }
        keep[v as usize] = false;
        for &(w, _) in g.neighbors(v) {
            if keep[w as usize] {
                deg[w as usize] -= 1;
                if deg[w as usize] <= 1 {
                    queue.push(w);
                }
            }
        }
    }
    keep
}

/// Length of the shortest cycle inside component `comp`; `None` if acyclic.
pub fn girth(g: &SimpleGraph, decomp: &ComponentDecomposition, comp: usize) -> Option<u32> {
    if surplus(decomp, comp) == 0 {
        return None;
    }
    let core = two_core(g, &decomp.members[comp]);
    let verts: Vec<u32> = decomp.members[comp]
        .iter()
        .copied()
        .filter(|&v| core[v as usize])
        .collect();
    let mut best = u32::MAX;
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut parent_edge = vec![u32::MAX; g.vertex_count()];
    let mut queue = alloc::collections::VecDeque::new();
    for &s in &verts {
        for &v in &verts {
            dist[v as usize] = UNREACHABLE;
        }
        dist[s as usize] = 0;
        parent_edge[s as usize] = u32::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            if 2 * d >= best {
                continue; // no shorter cycle can be found deeper
            }
            for &(w, e) in g.neighbors(v) {
                if !core[w as usize] {
                    continue;
                }
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = d + 1;
                    parent_edge[w as usize] = e;
                    queue.push_back(w);
                } else if e != parent_edge[v as usize] {
                    best = best.min(d + dist[w as usize] + 1);
                }
            }
        }
    }
    debug_assert!(best != u32::MAX);
    Some(best)
}

/// Result of [`count_simple_cycles`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleCount {
    Exact(u64),
    /// The count exceeds the cap (or the cycle space is too large to
    /// enumerate); signals a pathological input rather than a failure.
    Overflow,
}

/// Number of distinct simple cycles in component `comp`.
///
/// Reduces to the 2-core, then enumerates the cycle space spanned by the
/// fundamental cycles of a spanning tree and counts the members that form a
/// single connected cycle. Returns [`CycleCount::Overflow`] when the count
/// exceeds `cap` or the cycle space dimension makes enumeration infeasible.
pub fn count_simple_cycles(
    g: &SimpleGraph,
    decomp: &ComponentDecomposition,
    comp: usize,
    cap: u64,
) -> CycleCount {
    let s = surplus(decomp, comp);
    if s == 0 {
        return CycleCount::Exact(0);
    }
    if s > 26 {
        return CycleCount::Overflow;
    }
    let core = two_core(g, &decomp.members[comp]);
    let verts: Vec<u32> = decomp.members[comp]
        .iter()
        .copied()
        .filter(|&v| core[v as usize])
        .collect();
    // core-local edge ids
    let mut core_edges: Vec<u32> = Vec::new();
    let mut edge_slot = alloc::collections::BTreeMap::new();
    for &v in &verts {
        for &(w, e) in g.neighbors(v) {
            if v < w && core[w as usize] {
                edge_slot.insert(e, core_edges.len() as u32);
                core_edges.push(e);
            }
        }
    }
    let mc = core_edges.len();
    // stripping to the 2-core preserves the surplus
    debug_assert_eq!(mc as u64, verts.len() as u64 + s - 1);
    // BFS spanning tree of the core; non-tree edges generate the cycle space
    let mut visited = vec![false; g.vertex_count()];
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX); g.vertex_count()];
    let mut tree_edge = vec![false; mc];
    let root = verts[0];
    visited[root as usize] = true;
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(root);
    let mut non_tree: Vec<u32> = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &(w, e) in g.neighbors(v) {
            if !core[w as usize] {
                continue;
            }
            if !visited[w as usize] {
                visited[w as usize] = true;
                parent[w as usize] = (v, e);
                tree_edge[edge_slot[&e] as usize] = true;
                queue.push_back(w);
            }
        }
    }
    for (slot, &e) in core_edges.iter().enumerate() {
        if !tree_edge[slot] {
            non_tree.push(e);
        }
    }
    debug_assert_eq!(non_tree.len() as u64, s);
    let words = mc.div_ceil(64);
    let mut fundamental: Vec<Vec<u64>> = Vec::with_capacity(non_tree.len());
    for &e in &non_tree {
        let (u, v) = g.edges()[e as usize];
        let mut bits = vec![0u64; words];
        let set = |bits: &mut Vec<u64>, slot: u32| {
            bits[slot as usize / 64] ^= 1u64 << (slot % 64);
        };
        set(&mut bits, edge_slot[&e]);
        // walk both endpoints to the root, XORing tree-path edges; shared
        // prefix above the meeting point cancels out
        for mut x in [u, v] {
            while parent[x as usize].0 != u32::MAX {
                let (p, pe) = parent[x as usize];
                set(&mut bits, edge_slot[&pe]);
                x = p;
            }
        }
        fundamental.push(bits);
    }
    let s = non_tree.len();
    let mut current = vec![0u64; words];
    let mut count = 0u64;
    let mut dsu_scratch = DisjointSets::new(verts.len());
    let mut vert_slot = alloc::collections::BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        vert_slot.insert(v, i as u32);
    }
    // Gray-code walk over all nonzero combinations
    for k in 1u64..(1u64 << s) {
        let flip = k.trailing_zeros() as usize;
        for w in 0..words {
            current[w] ^= fundamental[flip][w];
        }
        if is_single_cycle(g, &core_edges, &current, &vert_slot, &mut dsu_scratch) {
            count += 1;
            if count > cap {
                return CycleCount::Overflow;
            }
        }
    }
    CycleCount::Exact(count)
}

fn is_single_cycle(
    g: &SimpleGraph,
    core_edges: &[u32],
    bits: &[u64],
    vert_slot: &alloc::collections::BTreeMap<u32, u32>,
    dsu: &mut DisjointSets,
) -> bool {
    let mut selected: Vec<u32> = Vec::new();
    for (slot, &e) in core_edges.iter().enumerate() {
        if bits[slot / 64] >> (slot % 64) & 1 == 1 {
            selected.push(e);
        }
    }
    let mut deg = alloc::collections::BTreeMap::new();
    for &e in &selected {
        let (u, v) = g.edges()[e as usize];
        *deg.entry(u).or_insert(0u32) += 1;
        *deg.entry(v).or_insert(0u32) += 1;
    }
    if deg.values().any(|&d| d != 2) || deg.len() != selected.len() {
        return false;
    }
    *dsu = DisjointSets::new(vert_slot.len());
    let mut merges = 0;
    for &e in &selected {
        let (u, v) = g.edges()[e as usize];
        if dsu.union(vert_slot[&u], vert_slot[&v]) {
            merges += 1;
        }
    }
    // connected 2-regular: exactly |V|-1 merges among the touched vertices
    merges + 1 == deg.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> SimpleGraph {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        SimpleGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            SimpleGraph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            SimpleGraph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop { vertex: 1 })
        );
        assert_eq!(
            SimpleGraph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
    }

    #[test]
    fn edges_are_normalized_and_indexed() {
        let g = SimpleGraph::from_edges(4, &[(2, 0), (3, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(g.edge_index(2, 0), Some(1));
        assert_eq!(g.edge_index(2, 3), None);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn empty_and_single_vertex() {
        let g = SimpleGraph::new(0);
        assert_eq!(components(&g).component_count(), 0);
        let g = SimpleGraph::new(1);
        let d = components(&g);
        assert_eq!(d.component_count(), 1);
        assert_eq!(tree_diameter(&g, &d, 0), Ok(0));
        assert_eq!(girth(&g, &d, 0), None);
        assert_eq!(count_simple_cycles(&g, &d, 0, 10), CycleCount::Exact(0));
    }

    #[test]
    fn component_ordering_is_by_size_then_label() {
        // components: {0,1} {2,3,4} {5} {6,7}
        let g = SimpleGraph::from_edges(8, &[(0, 1), (2, 3), (3, 4), (6, 7)]).unwrap();
        let d = components(&g);
        assert_eq!(d.component_count(), 4);
        assert_eq!(d.members[0], vec![2, 3, 4]);
        assert_eq!(d.members[1], vec![0, 1]);
        assert_eq!(d.members[2], vec![6, 7]);
        assert_eq!(d.members[3], vec![5]);
        assert_eq!(d.assignment[5], 3);
        assert_eq!(d.edge_counts, vec![2, 1, 1, 0]);
    }

    #[test]
    fn components_deterministic() {
        let g = SimpleGraph::from_edges(6, &[(0, 5), (1, 2), (3, 4), (4, 1)]).unwrap();
        assert_eq!(components(&g), components(&g));
    }

    #[test]
    fn bfs_and_diameter_on_path() {
        let g = path(5);
        let dist = bfs_distances(&g, 0);
        assert_eq!(dist, vec![0, 1, 2, 3, 4]);
        let d = components(&g);
        assert_eq!(tree_diameter(&g, &d, 0), Ok(4));
        assert_eq!(component_diameter(&g, &d, 0), 4);
    }

    #[test]
    fn bfs_unreachable_sentinel() {
        let g = SimpleGraph::from_edges(4, &[(0, 1)]).unwrap();
        let dist = bfs_distances(&g, 0);
        assert_eq!(dist, vec![0, 1, UNREACHABLE, UNREACHABLE]);
    }

    #[test]
    fn tree_diameter_rejects_cycles() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = components(&g);
        assert_eq!(tree_diameter(&g, &d, 0), Err(GraphError::CyclicComponent));
        assert_eq!(component_diameter(&g, &d, 0), 1);
    }

    #[test]
    fn conn_edges_of_triangle_with_pendant() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let conn = conn_edges(&g);
        let expect: Vec<u32> = [(0u32, 1u32), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| g.edge_index(a, b).unwrap())
            .collect();
        assert_eq!(conn, expect);
    }

    #[test]
    fn conn_edges_empty_on_forest() {
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(conn_edges(&g).is_empty());
    }

    #[test]
    fn surplus_counts_extra_edges() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let d = components(&g);
        assert_eq!(surplus(&d, 0), 1);
        assert_eq!(surplus(&d, 1), 0);
    }

    #[test]
    fn girth_of_small_graphs() {
        let tri = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = components(&tri);
        assert_eq!(girth(&tri, &d, 0), Some(3));

        let c5 = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let d = components(&c5);
        assert_eq!(girth(&c5, &d, 0), Some(5));

        // C5 with a chord: shortest cycle has length 3
        let g =
            SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]).unwrap();
        let d = components(&g);
        assert_eq!(girth(&g, &d, 0), Some(3));

        let tree = path(6);
        let d = components(&tree);
        assert_eq!(girth(&tree, &d, 0), None);
    }

    #[test]
    fn even_girth_detected() {
        let c4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let d = components(&c4);
        assert_eq!(girth(&c4, &d, 0), Some(4));
    }

    #[test]
    fn cycle_counts_on_known_graphs() {
        // theta graph: two hubs joined by three disjoint paths -> 3 cycles
        let theta =
            SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]).unwrap();
        let d = components(&theta);
        assert_eq!(count_simple_cycles(&theta, &d, 0, 1000), CycleCount::Exact(3));

        // K4 has 3 + 4 = 7 simple cycles
        let k4 = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let d = components(&k4);
        assert_eq!(count_simple_cycles(&k4, &d, 0, 1000), CycleCount::Exact(7));

        let tri_pendant = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let d = components(&tri_pendant);
        assert_eq!(count_simple_cycles(&tri_pendant, &d, 0, 1000), CycleCount::Exact(1));
    }

    #[test]
    fn cycle_count_overflow_marker() {
        let k4 = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let d = components(&k4);
        assert_eq!(count_simple_cycles(&k4, &d, 0, 6), CycleCount::Overflow);
    }
}
