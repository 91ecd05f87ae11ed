//! Recognition and drawing of witness rectangle graphs.
//!
//! Every realizer checks its own output with [`build_oracle`] before
//! returning it.

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analyze::{
    detect_staircase_type, find_independent_triple, isolated_vertices, minimize_witnesses,
    nontrivial_components,
};
use crate::build::{build_oracle, Mode};
use crate::geom::{GeomError, PlanePoint, Quadrant, Scene};
use crate::graph::Graph;
use crate::io::RawScene;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("invalid interval model: {0}")]
    InvalidModel(String),
    #[error("scene is not a staircase")]
    NotStaircase,
    #[error("expected exactly two non-trivial components, found {0}")]
    NotTwoComponents(usize),
    #[error("component containing {vertices:?} is not a co-interval graph")]
    NotCointerval {
        component: usize,
        vertices: Vec<String>,
    },
    #[error("input is not a tree")]
    NotATree,
    #[error("no template accepts this triple-free tree")]
    TemplateMismatch,
    #[error("realization does not rebuild the input graph")]
    VerificationFailed,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One closed interval per vertex; all endpoints distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalModel {
    pub intervals: BTreeMap<String, (i64, i64)>,
}

impl IntervalModel {
    pub fn validate(&self) -> Result<(), RealizeError> {
        let mut seen = HashSet::new();
        for (v, &(a, b)) in &self.intervals {
            if a >= b {
                return Err(RealizeError::InvalidModel(format!(
                    "interval of {v} is empty"
                )));
            }
            if !seen.insert(a) || !seen.insert(b) {
                return Err(RealizeError::InvalidModel(format!(
                    "endpoint of {v} is shared"
                )));
            }
        }
        Ok(())
    }

    /// Vertices adjacent when their intervals meet; vertices in name order.
    pub fn intersection_graph(&self) -> Graph {
        let iv: Vec<(i64, i64)> = self.intervals.values().copied().collect();
        let mut edges = Vec::new();
        for u in 0..iv.len() {
            for v in u + 1..iv.len() {
                if iv[u].0 <= iv[v].1 && iv[v].0 <= iv[u].1 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.intervals.keys().cloned().collect(), edges)
    }
}

/// A scene drawing a graph, with the graph-to-scene vertex correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub scene: Scene,
    pub vertex_map: BTreeMap<String, String>,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub scene: RawScene,
    pub vertex_map: BTreeMap<String, String>,
    pub mode: Mode,
}

impl Realization {
    fn identity(scene: Scene, mode: Mode) -> Realization {
        let vertex_map = scene
            .points
            .iter()
            .map(|p| (p.id.clone(), p.id.clone()))
            .collect();
        Realization {
            scene,
            vertex_map,
            mode,
        }
    }

    /// Rebuilds the graph from the scene and compares it with `g` through the vertex map.
    pub fn verify(&self, g: &Graph) -> Result<(), RealizeError> {
        let built =
            build_oracle(&self.scene, self.mode).map_err(|_| RealizeError::VerificationFailed)?;
        let back: HashMap<&str, &str> = self
            .vertex_map
            .iter()
            .map(|(k, v)| (v.as_str(), k.as_str()))
            .collect();
        if back.len() != self.vertex_map.len() || back.len() != built.vertex_count() {
            return Err(RealizeError::VerificationFailed);
        }
        let rebuilt = built.without_slopes().relabel(|n| {
            back.get(n)
                .map_or_else(|| format!("?{n}"), |s| s.to_string())
        });
        if rebuilt.same_as(g) {
            Ok(())
        } else {
            Err(RealizeError::VerificationFailed)
        }
    }

    pub fn to_json(&self) -> RealizationJson {
        RealizationJson {
            scene: RawScene::from_scene(&self.scene),
            vertex_map: self.vertex_map.clone(),
            mode: self.mode,
        }
    }
}

/// A prefix that no name in `taken` starts with.
fn fresh_prefix(taken: &[&str], base: &str) -> String {
    let mut p = base.to_string();
    while taken.iter().any(|t| t.starts_with(&p)) {
        p.push('_');
    }
    p
}

fn rename_witnesses(mut scene: Scene) -> Scene {
    let ids: Vec<&str> = scene.points.iter().map(|p| p.id.as_str()).collect();
    let prefix = fresh_prefix(&ids, "w");
    for (i, w) in scene
        .pos_witnesses
        .iter_mut()
        .chain(scene.neg_witnesses.iter_mut())
        .enumerate()
    {
        w.id = format!("{prefix}{i}");
    }
    scene
}

// ---------------------------------------------------------------- co-interval

/// An interval model of the complement of `g`, so that vertices adjacent in
/// `g` get disjoint intervals; `None` if `g` is not a co-interval graph.
pub fn recognize_cointerval(g: &Graph) -> Option<IntervalModel> {
    let h = g.complement();
    let n = h.vertex_count();
    if n == 0 {
        return Some(IntervalModel {
            intervals: BTreeMap::new(),
        });
    }
    let nb = h.neighbour_sets();
    let peo = perfect_elimination_order(&nb)?;
    let cliques = maximal_cliques(&nb, &peo);
    let chain = clique_path(n, &cliques)?;

    let mut first = vec![usize::MAX; n];
    let mut last = vec![0; n];
    for (pos, &c) in chain.iter().enumerate() {
        for v in cliques[c].ones() {
            first[v] = first[v].min(pos);
            last[v] = pos;
        }
    }
    let mut ends: Vec<(usize, u8, usize)> = (0..n)
        .flat_map(|v| [(first[v], 0, v), (last[v], 1, v)])
        .collect();
    ends.sort_unstable();
    let mut iv = vec![(0i64, 0i64); n];
    for (rank, &(_, side, v)) in ends.iter().enumerate() {
        if side == 0 {
            iv[v].0 = rank as i64 + 1;
        } else {
            iv[v].1 = rank as i64 + 1;
        }
    }
    let model = IntervalModel {
        intervals: (0..n).map(|v| (g.name(v).to_string(), iv[v])).collect(),
    };
    assert!(
        model.intersection_graph().same_as(&h),
        "interval model does not certify the complement"
    );
    Some(model)
}

/// Reverse maximum cardinality search order, if it is a perfect elimination order.
fn perfect_elimination_order(nb: &[FixedBitSet]) -> Option<Vec<usize>> {
    let n = nb.len();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))?;
        done[v] = true;
        visit.push(v);
        for u in nb[v].ones() {
            weight[u] += 1;
        }
    }
    visit.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &visit {
        let later: Vec<usize> = nb[v].ones().filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&u) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&w| w != u && !nb[u].contains(w)) {
                return None;
            }
        }
    }
    Some(visit)
}

fn maximal_cliques(nb: &[FixedBitSet], peo: &[usize]) -> Vec<FixedBitSet> {
    let n = nb.len();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let candidates: Vec<FixedBitSet> = peo
        .iter()
        .map(|&v| {
            let mut c = FixedBitSet::with_capacity(n);
            c.insert(v);
            c.extend(nb[v].ones().filter(|&u| pos[u] > pos[v]));
            c
        })
        .collect();
    let mut out: Vec<FixedBitSet> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && c.is_subset(d) && (c != d || j < i));
        if !dominated {
            out.push(c.clone());
        }
    }
    out
}

/// An order of the cliques in which every vertex occupies a consecutive run.
fn clique_path(n: usize, cliques: &[FixedBitSet]) -> Option<Vec<usize>> {
    let k = cliques.len();
    let mut remaining = vec![0usize; n];
    for c in cliques {
        for v in c.ones() {
            remaining[v] += 1;
        }
    }
    let mut st = PathSearch {
        cliques,
        remaining,
        seen: FixedBitSet::with_capacity(n),
        placed: FixedBitSet::with_capacity(k),
        order: Vec::with_capacity(k),
        dead: HashSet::new(),
    };
    for c in 0..k {
        if st.extend(c) {
            return Some(st.order);
        }
    }
    None
}

struct PathSearch<'a> {
    cliques: &'a [FixedBitSet],
    remaining: Vec<usize>,
    seen: FixedBitSet,
    placed: FixedBitSet,
    order: Vec<usize>,
    dead: HashSet<(FixedBitSet, usize)>,
}

impl PathSearch<'_> {
    /// Appends clique `c` (already checked compatible) and tries to finish.
    fn extend(&mut self, c: usize) -> bool {
        let clique = &self.cliques[c];
        let seen_before = self.seen.clone();
        self.placed.insert(c);
        self.order.push(c);
        self.seen.union_with(clique);
        for v in clique.ones() {
            self.remaining[v] -= 1;
        }
        if self.order.len() == self.cliques.len() {
            return true;
        }
        let key = (self.placed.clone(), c);
        if !self.dead.contains(&key) {
            for next in 0..self.cliques.len() {
                if !self.placed.contains(next) && self.fits(c, next) && self.extend(next) {
                    return true;
                }
            }
            self.dead.insert(key);
        }
        for v in clique.ones() {
            self.remaining[v] += 1;
        }
        self.seen = seen_before;
        self.order.pop();
        self.placed.set(c, false);
        false
    }

    fn fits(&self, last: usize, next: usize) -> bool {
        let (l, c) = (&self.cliques[last], &self.cliques[next]);
        // vertices already closed may not reappear, open ones must continue
        c.ones().all(|v| !self.seen.contains(v) || l.contains(v))
            && l.ones().all(|v| self.remaining[v] == 0 || c.contains(v))
    }
}

/// Staircase drawing of the complement of the model's intersection graph.
pub fn intervals_to_staircase(m: &IntervalModel) -> Result<Realization, RealizeError> {
    m.validate()?;
    let mut ends: Vec<i64> = m.intervals.values().flat_map(|&(a, b)| [a, b]).collect();
    ends.sort_unstable();
    let rank = |e: i64| ends.binary_search(&e).unwrap() as i64 + 1;
    let points = m
        .intervals
        .iter()
        .map(|(v, &(a, b))| PlanePoint::new(v.clone(), 2 * rank(a), 2 * rank(b)))
        .collect();
    let witnesses = (1..ends.len() as i64)
        .map(|r| PlanePoint::new("", 2 * r + 1, 2 * r + 1))
        .collect();
    let real = Realization::identity(
        rename_witnesses(Scene::new(points, witnesses)),
        Mode::Positive,
    );
    real.verify(&m.intersection_graph().complement())?;
    Ok(real)
}

/// Interval model of a staircase scene; its intersection graph is the
/// complement of the scene's graph.
pub fn staircase_to_intervals(scene: &Scene) -> Result<IntervalModel, RealizeError> {
    if !scene.neg_witnesses.is_empty() {
        return Err(RealizeError::NotStaircase);
    }
    let mut s = minimize_witnesses(scene);
    let types = detect_staircase_type(&s);
    let turns = [Quadrant::IV, Quadrant::III, Quadrant::II, Quadrant::I]
        .iter()
        .position(|t| types.contains(t))
        .ok_or(RealizeError::NotStaircase)?;
    for _ in 0..turns {
        s = s.map_coords(|x, y| (-y, x));
    }
    let mut wx: Vec<i64> = s.pos_witnesses.iter().map(|w| w.x).collect();
    let mut wy: Vec<i64> = s.pos_witnesses.iter().map(|w| w.y).collect();
    wx.sort_unstable();
    wy.sort_unstable();
    let mut ends: Vec<(usize, u8, usize)> = Vec::new();
    for (i, p) in s.points.iter().enumerate() {
        let lo = wx.partition_point(|&x| x < p.x);
        let hi = wy.partition_point(|&y| y < p.y);
        ends.push((lo, 0, i));
        ends.push((hi, 1, i));
    }
    ends.sort_unstable();
    let mut iv = vec![(0i64, 0i64); s.points.len()];
    for (rank, &(_, side, i)) in ends.iter().enumerate() {
        if side == 0 {
            iv[i].0 = rank as i64 + 1;
        } else {
            iv[i].1 = rank as i64 + 1;
        }
    }
    Ok(IntervalModel {
        intervals: s
            .points
            .iter()
            .zip(iv)
            .map(|(p, i)| (p.id.clone(), i))
            .collect(),
    })
}

/// Joins two type IV staircases through a new witness at the origin, with
/// `a` in its first quadrant and `b` in its third.
pub fn compose_join(a: &Scene, b: &Scene) -> Result<Scene, GeomError> {
    let shift = |s: &Scene, toward_first: bool| match s.bounds() {
        None => s.clone(),
        Some((x0, _, y0, _)) if toward_first => s.map_coords(|x, y| (x - x0 + 1, y - y0 + 1)),
        Some((_, x1, _, y1)) => s.map_coords(|x, y| (x - x1 - 1, y - y1 - 1)),
    };
    let (a, b) = (shift(a, true), shift(b, false));
    let ids: Vec<&str> = a
        .elements()
        .chain(b.elements())
        .map(|p| p.id.as_str())
        .collect();
    let origin = PlanePoint::new(fresh_prefix(&ids, "j"), 0, 0);
    let scene = Scene {
        points: a.points.iter().chain(&b.points).cloned().collect(),
        pos_witnesses: b
            .pos_witnesses
            .iter()
            .cloned()
            .chain([origin])
            .chain(a.pos_witnesses.iter().cloned())
            .collect(),
        neg_witnesses: Vec::new(),
    };
    scene.validate()?;
    Ok(scene)
}

/// Interval models of the two non-trivial components of `g`.
pub fn recognize_two_components(
    g: &Graph,
) -> Result<[(Vec<String>, IntervalModel); 2], RealizeError> {
    let comps = nontrivial_components(g);
    if comps.len() != 2 {
        return Err(RealizeError::NotTwoComponents(comps.len()));
    }
    let mut out = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        let vertices: Vec<String> = c.iter().map(|&v| g.name(v).to_string()).collect();
        match recognize_cointerval(&g.induced(c)) {
            Some(m) => out.push((vertices, m)),
            None => {
                return Err(RealizeError::NotCointerval {
                    component: k,
                    vertices,
                })
            }
        }
    }
    Ok(out.try_into().unwrap())
}

/// Draws a graph with exactly two non-trivial components, both co-interval,
/// plus any number of isolated vertices.
pub fn realize_two_components(g: &Graph) -> Result<Realization, RealizeError> {
    let mut stairs = Vec::new();
    for (_, model) in recognize_two_components(g)? {
        stairs.push(intervals_to_staircase(&model)?.scene);
    }
    let isolated = isolated_vertices(g);
    let m = stairs
        .iter()
        .filter_map(Scene::bounds)
        .map(|(_, x1, _, y1)| x1.max(y1))
        .max()
        .unwrap_or(0);
    let off = isolated.len() as i64 + 1;
    // flipping y turns each chain into a descending one with the vertices below it
    let first = stairs[0].map_coords(|x, y| (x + off, m + 1 - y + off));
    let second = stairs[1].map_coords(|x, y| (-(x + off), -(m + 1 - y + off)));
    let lone = isolated
        .iter()
        .zip(1..)
        .map(|(&v, j)| PlanePoint::new(g.name(v), j, -j));
    let scene = Scene {
        points: first
            .points
            .into_iter()
            .chain(second.points)
            .chain(lone)
            .collect(),
        pos_witnesses: first
            .pos_witnesses
            .into_iter()
            .chain(second.pos_witnesses)
            .collect(),
        neg_witnesses: Vec::new(),
    };
    let real = Realization::identity(rename_witnesses(scene), Mode::Positive);
    real.scene.validate()?;
    real.verify(g)?;
    Ok(real)
}

// ---------------------------------------------------------------- trees

/// Outcome of [`realize_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeOutcome {
    Realized(Realization),
    /// Three pairwise independent edges; no drawing exists.
    Certificate([(String, String); 3]),
}

struct Skeleton {
    points: &'static [(i64, i64)],
    witnesses: &'static [(i64, i64)],
    edges: &'static [(usize, usize)],
}

// Maximal triple-free trees of diameter 3 to 6, drawn in rank space.
const SKELETONS: [Skeleton; 4] = [
    Skeleton {
        points: &[(3, 0), (0, 4), (5, 5), (1, 1)],
        witnesses: &[(2, 2), (4, 3)],
        edges: &[(0, 1), (0, 2), (2, 3)],
    },
    Skeleton {
        points: &[(4, 0), (6, 4), (8, 6), (3, 8), (0, 5), (2, 2)],
        witnesses: &[(7, 7), (1, 3), (5, 1)],
        edges: &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)],
    },
    Skeleton {
        points: &[
            (0, 2),
            (6, 9),
            (7, 11),
            (2, 6),
            (11, 5),
            (4, 3),
            (5, 0),
            (9, 7),
        ],
        witnesses: &[(3, 10), (1, 8), (8, 1), (10, 4)],
        edges: &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (4, 6), (6, 7)],
    },
    Skeleton {
        points: &[
            (9, 9),
            (7, 0),
            (10, 5),
            (12, 4),
            (4, 2),
            (0, 6),
            (6, 10),
            (5, 12),
            (2, 7),
        ],
        witnesses: &[(8, 1), (11, 3), (3, 11), (1, 8)],
        edges: &[
            (0, 1),
            (1, 2),
            (1, 3),
            (3, 4),
            (0, 5),
            (5, 6),
            (5, 7),
            (7, 8),
        ],
    },
];

impl Skeleton {
    fn graph(&self) -> Graph {
        Graph::numbered(self.points.len(), self.edges.iter().copied())
    }
}

/// Draws a tree, or returns three independent edges proving that none exists.
pub fn realize_tree(t: &Graph) -> Result<TreeOutcome, RealizeError> {
    if !t.is_tree() {
        return Err(RealizeError::NotATree);
    }
    if let Some(triple) = find_independent_triple(t) {
        return Ok(TreeOutcome::Certificate(
            triple.map(|(u, v)| (t.name(u).to_string(), t.name(v).to_string())),
        ));
    }
    let n = t.vertex_count();
    if n == 1 {
        return Ok(TreeOutcome::Realized(Realization::identity(
            Scene::new(vec![PlanePoint::new(t.name(0), 0, 0)], vec![]),
            Mode::Positive,
        )));
    }

    // leaves hanging off the same vertex are twins; keep one of each class
    let adj = t.adjacency();
    let mut class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in (0..n).filter(|&v| adj[v].len() == 1) {
        class.entry(adj[v][0]).or_default().push(v);
    }
    let mut twins: HashMap<usize, Vec<usize>> = HashMap::new();
    for leaves in class.values() {
        twins.insert(leaves[0], leaves.clone());
    }
    let kept: Vec<usize> = (0..n)
        .filter(|&v| adj[v].len() > 1 || twins.contains_key(&v))
        .collect();
    let reduced = t.induced(&kept);

    let (sk, map) = SKELETONS
        .iter()
        .filter(|sk| sk.points.len() >= kept.len())
        .find_map(|sk| embed_tree(&reduced, &sk.graph()).map(|m| (sk, m)))
        .ok_or(RealizeError::TemplateMismatch)?;

    let scale = class.values().map(Vec::len).max().unwrap_or(1) as i64 + 1;
    let mut points = Vec::new();
    for (r, &v) in kept.iter().enumerate() {
        let (x, y) = sk.points[map[r]];
        let members = twins.get(&v).cloned().unwrap_or_else(|| vec![v]);
        for (i, &u) in members.iter().enumerate() {
            points.push(PlanePoint::new(
                t.name(u),
                scale * x + i as i64,
                scale * y + i as i64,
            ));
        }
    }
    let witnesses = sk
        .witnesses
        .iter()
        .map(|&(x, y)| PlanePoint::new("", scale * x, scale * y))
        .collect();
    let real = Realization::identity(
        rename_witnesses(Scene::new(points, witnesses)),
        Mode::Positive,
    );
    real.scene.validate()?;
    real.verify(t).map_err(|_| RealizeError::TemplateMismatch)?;
    Ok(TreeOutcome::Realized(real))
}

/// Injective edge-preserving map of tree `small` into tree `big`.
fn embed_tree(small: &Graph, big: &Graph) -> Option<Vec<usize>> {
    let adj = small.adjacency();
    let big_adj = big.adjacency();
    // vertices of `small` in BFS order, each after its parent
    let mut order = vec![(0, usize::MAX)];
    let mut seen = vec![false; small.vertex_count()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i].0;
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                order.push((v, u));
            }
        }
        i += 1;
    }
    let mut map = vec![usize::MAX; small.vertex_count()];
    let mut used = vec![false; big.vertex_count()];
    fn go(
        k: usize,
        order: &[(usize, usize)],
        big_adj: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&(v, parent)) = order.get(k) else {
            return true;
        };
        let options: Vec<usize> = if parent == usize::MAX {
            (0..used.len()).collect()
        } else {
            big_adj[map[parent]].clone()
        };
        for b in options {
            if used[b] {
                continue;
            }
            used[b] = true;
            map[v] = b;
            if go(k + 1, order, big_adj, map, used) {
                return true;
            }
            used[b] = false;
        }
        false
    }
    go(0, &order, &big_adj, &mut map, &mut used).then_some(map)
}

// ---------------------------------------------------------------- mixed signs

/// Draws any graph with positive and negative witnesses: vertices on the
/// diagonal in input order, at most one witness per grid cell.
pub fn realize_pm(g: &Graph) -> Realization {
    let n = g.vertex_count();
    let cells = n.saturating_sub(1).pow(2) as i64;
    let step = 2 * (cells + 1);
    let points: Vec<PlanePoint> = (0..n)
        .map(|i| PlanePoint::new(g.name(i), step * i as i64, step * i as i64))
        .collect();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut placed = 0i64;
    let mut put = |col: usize,
                   row: usize,
                   sign: i64,
                   pos: &mut Vec<PlanePoint>,
                   neg: &mut Vec<PlanePoint>| {
        let w = PlanePoint::new(
            "",
            step * col as i64 + 2 * placed + 1,
            step * row as i64 + 2 * placed + 1,
        );
        placed += 1;
        if sign > 0 {
            pos.push(w)
        } else {
            neg.push(w)
        }
    };
    // s[i][j]: positive minus negative witnesses in the box of vertices i < j
    let mut s = vec![vec![0i64; n]; n];
    for k in 1..n {
        for i in 0..n - k {
            let j = i + k;
            let target = g.has_edge(i, j) as i64;
            if k == 1 {
                if target == 1 {
                    put(i, i, 1, &mut pos, &mut neg);
                }
                s[i][j] = target;
                continue;
            }
            let inner = s[i + 1][j] + s[i][j - 1] - s[i + 1][j - 1];
            let need = target - inner;
            match need.abs() {
                0 => {}
                1 => put(i, j - 1, need, &mut pos, &mut neg),
                _ => {
                    put(i, j - 1, need.signum(), &mut pos, &mut neg);
                    put(j - 1, i, need.signum(), &mut pos, &mut neg);
                }
            }
            s[i][j] = target;
        }
    }
    let scene = rename_witnesses(Scene::new(points, pos).with_negative(neg));
    let real = Realization::identity(scene, Mode::Mixed);
    real.verify(g)
        .expect("mixed-sign drawing rebuilds its graph");
    real
}
