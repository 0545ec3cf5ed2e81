//! Independent checks of the GHP machinery.
//!
//! The reference implementation here enumerates every full correspondence as
//! a raw subset of the product and scores its mass part by min-cut
//! enumeration instead of max-flow, so it shares no code with the search
//! under test.

use mstlab_core::metric::{
    ghp4, ghp_exact, ghp_upper_bound, scale_components, FiniteMeasuredMetricSpace, Ghp4Mode,
    SpaceSequence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random space from points in the unit square, masses normalized to sum 1.
fn random_space(rng: &mut ChaCha8Rng, max_points: usize) -> FiniteMeasuredMetricSpace {
    let k = 1 + (rng.gen::<u64>() as usize) % max_points;
    let pts: Vec<(f64, f64)> = (0..k).map(|_| (rng.gen(), rng.gen())).collect();
    let mut dist = vec![0.0f64; k * k];
    for i in 0..k {
        for j in 0..k {
            dist[i * k + j] = (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1);
        }
    }
    let mut mass: Vec<f64> = (0..k).map(|_| 0.05 + rng.gen::<f64>()).collect();
    let total: f64 = mass.iter().sum();
    for m in &mut mass {
        *m /= total;
    }
    FiniteMeasuredMetricSpace::new(k, dist, mass).unwrap()
}

/// Exhaustive GHP: every full correspondence, mass part by min-cut.
fn brute_ghp(x: &FiniteMeasuredMetricSpace, y: &FiniteMeasuredMetricSpace) -> f64 {
    let (nx, ny) = (x.point_count(), y.point_count());
    let cells = nx * ny;
    assert!(cells <= 12);
    let mut best = f64::INFINITY;
    'outer: for r in 1u32..(1 << cells) {
        let has = |i: usize, j: usize| r >> (i * ny + j) & 1 == 1;
        for i in 0..nx {
            if (0..ny).all(|j| !has(i, j)) {
                continue 'outer;
            }
        }
        for j in 0..ny {
            if (0..nx).all(|i| !has(i, j)) {
                continue 'outer;
            }
        }
        let mut dis: f64 = 0.0;
        for i in 0..nx {
            for j in 0..ny {
                if !has(i, j) {
                    continue;
                }
                for i2 in 0..nx {
                    for j2 in 0..ny {
                        if has(i2, j2) {
                            dis = dis.max((x.distance(i, i2) - y.distance(j, j2)).abs());
                        }
                    }
                }
            }
        }
        // least uncovered mass: by LP duality the best coupling leaves
        // max over A of [mass_x(A) - mass_y(neighbors of A)] uncovered
        let mut worst_gap = 0.0f64;
        for a in 0u32..(1 << nx) {
            let mut mx = 0.0;
            let mut covered = vec![false; ny];
            for i in 0..nx {
                if a >> i & 1 == 1 {
                    mx += x.masses()[i];
                    for j in 0..ny {
                        if has(i, j) {
                            covered[j] = true;
                        }
                    }
                }
            }
            let my: f64 = (0..ny).filter(|&j| covered[j]).map(|j| y.masses()[j]).sum();
            worst_gap = worst_gap.max(mx - my);
        }
        for b in 0u32..(1 << ny) {
            let mut my = 0.0;
            let mut covered = vec![false; nx];
            for j in 0..ny {
                if b >> j & 1 == 1 {
                    my += y.masses()[j];
                    for i in 0..nx {
                        if has(i, j) {
                            covered[i] = true;
                        }
                    }
                }
            }
            let mx: f64 = (0..nx).filter(|&i| covered[i]).map(|i| x.masses()[i]).sum();
            worst_gap = worst_gap.max(my - mx);
        }
        best = best.min((dis * 0.5).max(worst_gap));
    }
    best
}

#[test]
fn exact_distance_matches_exhaustive_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for round in 0..60 {
        let x = random_space(&mut rng, 3);
        let y = random_space(&mut rng, 3);
        let got = ghp_exact(&x, &y).unwrap();
        let want = brute_ghp(&x, &y);
        assert!(
            (got - want).abs() < 1e-12,
            "round {round}: search {got}, reference {want}"
        );
    }
}

#[test]
fn metric_axioms_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..1000 {
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let z = random_space(&mut rng, 4);
        let dxy = ghp_exact(&x, &y).unwrap();
        let dyx = ghp_exact(&y, &x).unwrap();
        assert_eq!(dxy.to_bits(), dyx.to_bits(), "symmetry must be bitwise");
        assert!(dxy >= 0.0);
        let dxz = ghp_exact(&x, &z).unwrap();
        let dyz = ghp_exact(&y, &z).unwrap();
        assert!(
            dxz <= dxy + dyz + 1e-9,
            "triangle: {dxz} > {dxy} + {dyz}"
        );
    }
}

#[test]
fn self_distance_is_exactly_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        let x = random_space(&mut rng, 4);
        assert_eq!(ghp_exact(&x, &x).unwrap(), 0.0);
        assert_eq!(ghp_upper_bound(&x, &x), 0.0);
    }
}

#[test]
fn upper_bound_dominates_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..1000 {
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let exact = ghp_exact(&x, &y).unwrap();
        let bound = ghp_upper_bound(&x, &y);
        assert!(
            bound >= exact - 1e-12,
            "bound {bound} below exact {exact}"
        );
    }
}

#[test]
fn exact_distance_ignores_point_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..300 {
        let x = random_space(&mut rng, 4);
        let y = random_space(&mut rng, 4);
        let base = ghp_exact(&x, &y).unwrap();
        // rebuild x with its points in a rotated order
        let k = x.point_count();
        let perm: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let mut dist = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                dist[i * k + j] = x.distance(perm[i], perm[j]);
            }
        }
        let mass: Vec<f64> = perm.iter().map(|&i| x.masses()[i]).collect();
        let xr = FiniteMeasuredMetricSpace::new(k, dist, mass).unwrap();
        let relabeled = ghp_exact(&xr, &y).unwrap();
        assert_eq!(base.to_bits(), relabeled.to_bits());
    }
}

#[test]
fn rescaled_graph_sequences_are_at_distance_zero_from_themselves() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..10 {
        let n = 12 + (rng.gen::<u64>() % 20) as usize;
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.gen::<f64>() < 0.08 {
                    edges.push((u, v));
                }
            }
        }
        let g = mstlab_core::graph::SimpleGraph::from_edges(n, &edges).unwrap();
        let s = scale_components(&g, n);
        assert_eq!(ghp4(&s, &s, Ghp4Mode::ExactOrBound), 0.0);
        assert_eq!(ghp4(&s, &s.clone(), Ghp4Mode::BoundOnly), 0.0);
    }
}

#[test]
fn sequence_distance_respects_padding_order() {
    // distance to the empty sequence is the l4 norm of the zero distances
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let spaces: Vec<FiniteMeasuredMetricSpace> =
        (0..3).map(|_| random_space(&mut rng, 4)).collect();
    let s = SpaceSequence { spaces };
    let empty = SpaceSequence::default();
    let direct = ghp4(&s, &empty, Ghp4Mode::ExactOrBound);
    let manual: f64 = s
        .spaces
        .iter()
        .map(|x| {
            let z = (x.diameter() * 0.5).max(x.masses().iter().sum::<f64>());
            z.powi(4)
        })
        .sum::<f64>()
        .powf(0.25);
    assert!((direct - manual).abs() < 1e-12);
    assert_eq!(
        ghp4(&s, &empty, Ghp4Mode::ExactOrBound).to_bits(),
        ghp4(&empty, &s, Ghp4Mode::ExactOrBound).to_bits()
    );
}
