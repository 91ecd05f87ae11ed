//! Mutual neighbourhood graphs versus linear separability of two classes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::build::{build_oracle, BuildError, Mode};
use crate::geom::{PlanePoint, Scene};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparateError {
    #[error("no instance found within {0} trials")]
    BudgetExhausted(u64),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Two point classes, in general position together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoClassInstance {
    #[serde(rename = "a")]
    pub class_a: Vec<PlanePoint>,
    #[serde(rename = "b")]
    pub class_b: Vec<PlanePoint>,
}

/// The shipped instance: complete mutual neighbourhood graphs, overlapping hulls.
pub const COUNTEREXAMPLE_JSON: &str = include_str!("../fixtures/mng_counterexample.json");

pub fn stored_counterexample() -> TwoClassInstance {
    serde_json::from_str(COUNTEREXAMPLE_JSON).expect("fixture parses")
}

fn negative_complete(
    vertices: &[PlanePoint],
    witnesses: &[PlanePoint],
) -> Result<bool, BuildError> {
    let g = build_oracle(
        &Scene::new(vertices.to_vec(), witnesses.to_vec()),
        Mode::Negative,
    )?;
    let n = vertices.len();
    Ok(g.edge_count() == n * n.saturating_sub(1) / 2)
}

/// No box spanned by one class contains a point of the other.
pub fn mutual_complete(inst: &TwoClassInstance) -> Result<bool, BuildError> {
    Ok(negative_complete(&inst.class_a, &inst.class_b)?
        && negative_complete(&inst.class_b, &inst.class_a)?)
}

/// A line `(a, b, c)` with `a*x + b*y < c` on every point of class A and
/// `> c` on every point of class B, if the convex hulls are disjoint.
pub fn linearly_separable(inst: &TwoClassInstance) -> Option<(i64, i64, i64)> {
    let (a, b) = (&inst.class_a, &inst.class_b);
    if a.is_empty() {
        return Some((0, 0, -1));
    }
    if b.is_empty() {
        return Some((0, 0, 1));
    }
    let ha = hull(a);
    let hb = hull(b);
    // a closest pair of hull features is vertex-vertex or vertex-edge, so a
    // separating normal is some vertex difference or some edge normal
    let mut dirs = Vec::new();
    for h in [&ha, &hb] {
        for i in 0..h.len() {
            let (p, q) = (h[i], h[(i + 1) % h.len()]);
            dirs.push((q.1 - p.1, p.0 - q.0));
        }
    }
    for p in &ha {
        for q in &hb {
            dirs.push((q.0 - p.0, q.1 - p.1));
        }
    }
    for (nx, ny) in dirs {
        for (nx, ny) in [(nx, ny), (-nx, -ny)] {
            let max_a = ha.iter().map(|p| nx * p.0 + ny * p.1).max().unwrap();
            let min_b = hb.iter().map(|p| nx * p.0 + ny * p.1).min().unwrap();
            if max_a < min_b {
                return Some((2 * nx, 2 * ny, max_a + min_b));
            }
        }
    }
    None
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull vertices counter-clockwise (monotone chain); collinear points dropped.
fn hull(points: &[PlanePoint]) -> Vec<(i64, i64)> {
    let mut p: Vec<(i64, i64)> = points.iter().map(|q| (q.x, q.y)).collect();
    p.sort_unstable();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<(i64, i64)> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for &q in iter {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h
}

/// Seeded random search over small permuted grids for an instance that is
/// mutually complete but not linearly separable.
pub fn search_counterexample(seed: u64, budget: u64) -> Result<TwoClassInstance, SeparateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let na = rng.gen_range(2..=6);
        let nb = rng.gen_range(2..=6);
        let m = na + nb;
        let mut xs: Vec<i64> = (0..m as i64).collect();
        let mut ys = xs.clone();
        xs.shuffle(&mut rng);
        ys.shuffle(&mut rng);
        let pt = |i: usize, tag: &str, k: usize| PlanePoint::new(format!("{tag}{k}"), xs[i], ys[i]);
        let inst = TwoClassInstance {
            class_a: (0..na).map(|i| pt(i, "a", i)).collect(),
            class_b: (na..m).map(|i| pt(i, "b", i - na)).collect(),
        };
        if mutual_complete(&inst)? && linearly_separable(&inst).is_none() {
            return Ok(inst);
        }
    }
    Err(SeparateError::BudgetExhausted(budget))
}
