//! Structural analysis of graphs and witness scenes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::geom::{PlanePoint, Quadrant, Scene};
use crate::graph::Graph;

pub use crate::graph::families::supernova as gen_supernova;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("vertex set is not connected")]
    DisconnectedInput,
}

/// Connected components with at least one edge, in order of their smallest vertex.
pub fn nontrivial_components(g: &Graph) -> Vec<Vec<usize>> {
    g.components().into_iter().filter(|c| c.len() > 1).collect()
}

pub fn isolated_vertices(g: &Graph) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 0)
        .collect()
}

/// Largest BFS distance between two vertices of `component`, within the induced subgraph.
pub fn diameter(g: &Graph, component: &[usize]) -> Result<usize, AnalyzeError> {
    let sub = g.induced(component);
    let adj = sub.adjacency();
    let mut best = 0;
    for s in 0..sub.vertex_count() {
        for d in sub.distances_from(&adj, s) {
            best = best.max(d.ok_or(AnalyzeError::DisconnectedInput)?);
        }
    }
    Ok(best)
}

fn closed_neighbourhoods(g: &Graph) -> Vec<FixedBitSet> {
    let mut sets = g.neighbour_sets();
    for (v, s) in sets.iter_mut().enumerate() {
        s.insert(v);
    }
    sets
}

/// Three pairwise independent edges, if any: no shared endpoints and no
/// further edge among their six endpoints.
pub fn find_independent_triple(g: &Graph) -> Option<[(usize, usize); 3]> {
    let n = g.vertex_count();
    let closed = closed_neighbourhoods(g);
    let edges = g.edges();
    // far[i]: vertices outside the closed neighbourhoods of both ends of edge i
    let far: Vec<FixedBitSet> = edges
        .iter()
        .map(|&(a, b)| {
            let mut f = closed[a].clone();
            f.union_with(&closed[b]);
            f.toggle_range(..);
            f
        })
        .collect();
    let mut both = FixedBitSet::with_capacity(n);
    for (i, fi) in far.iter().enumerate() {
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            if !fi.contains(c) || !fi.contains(d) {
                continue;
            }
            both.clone_from(fi);
            both.intersect_with(&far[j]);
            if let Some(k) = (j + 1..edges.len())
                .find(|&k| both.contains(edges[k].0) && both.contains(edges[k].1))
            {
                return Some([edges[i], edges[j], edges[k]]);
            }
        }
    }
    None
}

/// Result of a capped domination search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domination {
    Exact(usize),
    /// No dominating set of size at most the cap exists.
    Exceeds(usize),
}

impl fmt::Display for Domination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domination::Exact(k) => write!(f, "{k}"),
            Domination::Exceeds(c) => write!(f, ">{c}"),
        }
    }
}

impl Serialize for Domination {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Domination::Exact(k) => s.serialize_u64(*k as u64),
            Domination::Exceeds(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// Exact domination number by iterative deepening over sizes `0..=cap`.
pub fn domination_number(g: &Graph, cap: usize) -> Domination {
    match minimum_dominating_set(g, cap) {
        Some(s) => Domination::Exact(s.len()),
        None => Domination::Exceeds(cap),
    }
}

/// A minimum dominating set, if one of size at most `cap` exists.
pub fn minimum_dominating_set(g: &Graph, cap: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let closed = closed_neighbourhoods(g);
    let widest = closed.iter().map(|s| s.count_ones(..)).max().unwrap_or(0);
    let mut open = FixedBitSet::with_capacity(n);
    open.insert_range(..);
    let mut chosen = Vec::new();
    for k in 0..=cap.min(n) {
        if dominate(&open, k, &closed, widest, &mut chosen) {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

fn dominate(
    open: &FixedBitSet,
    budget: usize,
    closed: &[FixedBitSet],
    widest: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let left = open.count_ones(..);
    if left == 0 {
        return true;
    }
    if budget == 0 || left > budget * widest {
        return false;
    }
    // some vertex of N[u] must be chosen; branch on the u with the fewest options
    let u = open
        .ones()
        .min_by_key(|&u| closed[u].count_ones(..))
        .unwrap();
    for v in closed[u].ones() {
        let mut rest = open.clone();
        rest.difference_with(&closed[v]);
        chosen.push(v);
        if dominate(&rest, budget - 1, closed, widest, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Drops witnesses, in input order and until nothing changes, whose removal
/// leaves the positive graph unchanged. Negative witnesses are kept as is.
pub fn minimize_witnesses(scene: &Scene) -> Scene {
    let pts = &scene.points;
    let n = pts.len();
    let pair = |i: usize, j: usize| i * n + j;
    let covers = |w: &PlanePoint| {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (p, q) = (&pts[i], &pts[j]);
                if p.x.min(q.x) < w.x
                    && w.x < p.x.max(q.x)
                    && p.y.min(q.y) < w.y
                    && w.y < p.y.max(q.y)
                {
                    out.push(pair(i, j));
                }
            }
        }
        out
    };
    let cover: Vec<Vec<usize>> = scene.pos_witnesses.iter().map(covers).collect();
    let mut count = vec![0u32; n * n];
    for c in &cover {
        for &p in c {
            count[p] += 1;
        }
    }
    let mut keep = vec![true; cover.len()];
    loop {
        let mut changed = false;
        for (w, c) in cover.iter().enumerate() {
            if keep[w] && c.iter().all(|&p| count[p] >= 2) {
                keep[w] = false;
                changed = true;
                for &p in c {
                    count[p] -= 1;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let pos = scene
        .pos_witnesses
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(w, _)| w.clone())
        .collect();
    Scene {
        points: scene.points.clone(),
        pos_witnesses: pos,
        neg_witnesses: scene.neg_witnesses.clone(),
    }
}

/// Staircase types of a minimized scene: type `t` holds when quadrant `t` of
/// every witness is free of vertices and the witnesses form the matching
/// chain (ascending for II and IV, descending for I and III).
pub fn detect_staircase_type(scene: &Scene) -> BTreeSet<Quadrant> {
    let mut ws: Vec<&PlanePoint> = scene
        .pos_witnesses
        .iter()
        .chain(&scene.neg_witnesses)
        .collect();
    ws.sort_by_key(|w| w.x);
    let ascending = ws.windows(2).all(|p| p[0].y < p[1].y);
    let descending = ws.windows(2).all(|p| p[0].y > p[1].y);
    Quadrant::ALL
        .into_iter()
        .filter(|&t| match t {
            Quadrant::II | Quadrant::IV => ascending,
            Quadrant::I | Quadrant::III => descending,
        })
        .filter(|&t| {
            ws.iter().all(|w| {
                scene
                    .points
                    .iter()
                    .all(|p| Quadrant::of_offset(p.x - w.x, p.y - w.y) != Some(t))
            })
        })
        .collect()
}

/// Necessary conditions for being a positive witness rectangle graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    pub violations: Vec<String>,
    pub nontrivial_component_count: usize,
    /// Diameter per non-trivial component, keyed by its smallest vertex name.
    pub diameters: BTreeMap<String, usize>,
    pub independent_triple: Option<[[String; 2]; 3]>,
    /// Domination number of the graph without its isolated vertices, capped at 5.
    pub domination_number_or_cap: Domination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

pub const FEASIBILITY_DOMINATION_CAP: usize = 5;

pub fn feasibility_report(g: &Graph) -> FeasibilityReport {
    let comps = nontrivial_components(g);
    let mut violations = Vec::new();
    let mut diameters = BTreeMap::new();
    let mut worst = 0;
    for c in &comps {
        let d = diameter(g, c).expect("components are connected");
        worst = worst.max(d);
        let key = c.iter().map(|&v| g.name(v)).min().unwrap().to_string();
        diameters.insert(key, d);
    }
    match comps.len() {
        0 => {}
        1 if worst > 6 => violations.push("diameter>6".to_string()),
        2 if worst > 3 => violations.push("diameter>3".to_string()),
        k if k > 2 => violations.push("components>2".to_string()),
        _ => {}
    }
    let independent_triple = find_independent_triple(g).map(|t| {
        t.map(|(u, v)| {
            let (a, b) = (g.name(u).to_string(), g.name(v).to_string());
            if a <= b {
                [a, b]
            } else {
                [b, a]
            }
        })
    });
    if independent_triple.is_some() {
        violations.push("independent-triple".to_string());
    }
    // induced subgraphs of a witness graph are witness graphs, so the bound
    // applies to the part without isolated vertices
    let core: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
    let dom = domination_number(&g.induced(&core), FEASIBILITY_DOMINATION_CAP);
    if !matches!(dom, Domination::Exact(k) if k <= 4) {
        violations.push("domination>4".to_string());
    }
    FeasibilityReport {
        verdict: if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        violations,
        nontrivial_component_count: comps.len(),
        diameters,
        independent_triple,
        domination_number_or_cap: dom,
    }
}
