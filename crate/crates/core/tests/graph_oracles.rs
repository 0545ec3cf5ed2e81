//! Cross-checks of the graph queries against independent brute-force
//! implementations on small random instances.

use mstlab_core::graph::{
    self, components, conn_edges, count_simple_cycles, girth, surplus, tree_diameter, CycleCount,
    SimpleGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges).unwrap()
}

fn component_count_without(g: &SimpleGraph, skip: Option<u32>) -> usize {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] {
            continue;
        }
        count += 1;
        seen[s as usize] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &(w, e) in g.neighbors(v) {
                if Some(e) != skip && !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// An edge lies on a cycle iff deleting it keeps the component count.
fn brute_cycle_edges(g: &SimpleGraph) -> Vec<u32> {
    let base = component_count_without(g, None);
    (0..g.edge_count() as u32)
        .filter(|&e| component_count_without(g, Some(e)) == base)
        .collect()
}

fn all_pairs_hops(g: &SimpleGraph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    const INF: u64 = 1 << 40;
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Shortest cycle through any edge (u,v): 1 + shortest u-v path avoiding that
/// edge, minimized over edges.
fn brute_girth(g: &SimpleGraph) -> Option<u64> {
    let mut best = None;
    for skip in 0..g.edge_count() {
        let (u, v) = g.edges()[skip];
        let mut edges: Vec<(u32, u32)> = g.edges().to_vec();
        edges.remove(skip);
        let reduced = SimpleGraph::from_edges(g.vertex_count(), &edges).unwrap();
        let d = all_pairs_hops(&reduced);
        let len = d[u as usize][v as usize] + 1;
        if len < (1 << 40) && best.map_or(true, |b| len < b) {
            best = Some(len);
        }
    }
    best
}

/// Counts connected 2-regular edge subsets by full enumeration.
fn brute_cycle_count(g: &SimpleGraph) -> u64 {
    let m = g.edge_count();
    assert!(m <= 16);
    let mut count = 0;
    'subset: for mask in 1u32..1 << m {
        let mut deg = std::collections::HashMap::new();
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (u, v) = g.edges()[e];
                *deg.entry(u).or_insert(0) += 1;
                *deg.entry(v).or_insert(0) += 1;
            }
        }
        if deg.values().any(|&d: &i32| d != 2) {
            continue;
        }
        // connectivity of the selected subgraph
        let verts: Vec<u32> = deg.keys().copied().collect();
        let start = verts[0];
        let mut seen = std::collections::HashSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for e in 0..m {
                if mask >> e & 1 == 1 {
                    let (u, v) = g.edges()[e];
                    let other = if u == x {
                        v
                    } else if v == x {
                        u
                    } else {
                        continue;
                    };
                    if seen.insert(other) {
                        stack.push(other);
                    }
                }
            }
        }
        if seen.len() != verts.len() {
            continue 'subset;
        }
        count += 1;
    }
    count
}

#[test]
fn conn_edges_matches_removal_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..500 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.5);
        let g = random_graph(&mut rng, n, p);
        assert_eq!(conn_edges(&g), brute_cycle_edges(&g), "trial {trial}");
    }
}

#[test]
fn surplus_zero_iff_no_cycle_edges_in_component() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let n = rng.gen_range(2..=14);
        let g = random_graph(&mut rng, n, 0.25);
        let d = components(&g);
        let conn = conn_edges(&g);
        for comp in 0..d.component_count() {
            let in_comp = conn.iter().any(|&e| {
                let (u, _) = g.edges()[e as usize];
                d.assignment[u as usize] == comp as u32
            });
            assert_eq!(surplus(&d, comp) == 0, !in_comp);
        }
    }
}

#[test]
fn tree_diameter_matches_all_pairs_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let n = rng.gen_range(1..=64);
        // random recursive tree
        let edges: Vec<(u32, u32)> = (1..n as u32)
            .map(|v| (rng.gen_range(0..v), v))
            .collect();
        let g = SimpleGraph::from_edges(n, &edges).unwrap();
        let d = components(&g);
        let pairs = all_pairs_hops(&g);
        let want = pairs
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap();
        assert_eq!(tree_diameter(&g, &d, 0).unwrap() as u64, want);
        assert_eq!(graph::component_diameter(&g, &d, 0) as u64, want);
    }
}

#[test]
fn girth_matches_shortest_cycle_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut cyclic_seen = 0;
    for _ in 0..300 {
        let n = rng.gen_range(3..=10);
        let g = random_graph(&mut rng, n, 0.3);
        let d = components(&g);
        let want = brute_girth(&g);
        let got = (0..d.component_count())
            .filter_map(|c| girth(&g, &d, c))
            .min()
            .map(u64::from);
        assert_eq!(got, want);
        if want.is_some() {
            cyclic_seen += 1;
        }
    }
    assert!(cyclic_seen > 50, "test generated too few cyclic graphs");
}

#[test]
fn cycle_counts_match_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for _ in 0..400 {
        let n = rng.gen_range(3..=8);
        let g = random_graph(&mut rng, n, 0.35);
        if g.edge_count() > 16 {
            continue;
        }
        checked += 1;
        let d = components(&g);
        let total: u64 = (0..d.component_count())
            .map(|c| match count_simple_cycles(&g, &d, c, 1_000_000) {
                CycleCount::Exact(k) => k,
                CycleCount::Overflow => panic!("unexpected overflow"),
            })
            .sum();
        assert_eq!(total, brute_cycle_count(&g));
    }
    assert!(checked > 300);
}
