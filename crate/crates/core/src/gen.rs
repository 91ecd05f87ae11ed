//! Seeded random fixtures: scenes, point sets and graphs.

use rand::seq::index::sample;
use rand::Rng;

use crate::geom::{PlanePoint, Scene};
use crate::graph::Graph;

/// `count` distinct integers drawn from `0..range`, in random order.
fn distinct<R: Rng + ?Sized>(rng: &mut R, range: usize, count: usize) -> Vec<i64> {
    sample(rng, range, count)
        .into_iter()
        .map(|v| v as i64)
        .collect()
}

/// Points `p0, p1, ..` with pairwise distinct coordinates drawn uniformly from a
/// grid ten times wider than the point count.
pub fn random_points<R: Rng + ?Sized>(rng: &mut R, n: usize, prefix: &str) -> Vec<PlanePoint> {
    let range = 10 * n.max(1);
    let xs = distinct(rng, range, n);
    let ys = distinct(rng, range, n);
    (0..n)
        .map(|i| PlanePoint::new(format!("{prefix}{i}"), xs[i], ys[i]))
        .collect()
}

/// A positive-witness scene in general position with `n` vertices `p*` and `m` witnesses `w*`.
pub fn random_scene<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Scene {
    let all = random_points(rng, n + m, "");
    let points = all[..n]
        .iter()
        .enumerate()
        .map(|(i, p)| PlanePoint::new(format!("p{i}"), p.x, p.y));
    let ws = all[n..]
        .iter()
        .enumerate()
        .map(|(i, p)| PlanePoint::new(format!("w{i}"), p.x, p.y));
    Scene::new(points.collect(), ws.collect())
}

/// Erdős–Rényi graph on vertices named `0..n`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::numbered(n, edges)
}

/// Disjointness graph of `n` random intervals (a co-interval graph), names `0..n`.
pub fn random_cointerval<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let ends = distinct(rng, 4 * n.max(1), 2 * n);
    let iv: Vec<(i64, i64)> = ends
        .chunks(2)
        .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if iv[u].1 < iv[v].0 || iv[v].1 < iv[u].0 {
                edges.push((u, v));
            }
        }
    }
    Graph::numbered(n, edges)
}

/// A connected co-interval graph on exactly `n >= 2` vertices (rejection sampling).
pub fn random_connected_cointerval<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2);
    loop {
        let g = random_cointerval(rng, n);
        if g.components().len() == 1 {
            return g;
        }
    }
}
