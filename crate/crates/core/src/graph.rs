//! Combinatorial graphs over named vertices.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex {0}")]
    UnknownVertex(String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("edge {0}-{1} is listed more than once")]
    DuplicateEdge(String, String),
    #[error("malformed slope key {0:?}")]
    BadSlopeKey(String),
}

/// Slope sign of an edge drawn as a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slope {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// Simple undirected graph. Edges are stored as sorted index pairs `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    slopes: Option<Vec<Slope>>,
}

impl Graph {
    /// Builds a graph, sorting and deduplicating the edge list. Panics on self-loops.
    pub fn from_edges(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        let mut e: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| {
                assert!(u != v, "self-loop at vertex {u}");
                assert!(u < names.len() && v < names.len());
                (u.min(v), u.max(v))
            })
            .collect();
        e.sort_unstable();
        e.dedup();
        Graph {
            names,
            edges: e,
            slopes: None,
        }
    }

    /// Like [`Graph::from_edges`], keeping a slope per edge.
    pub fn from_sloped_edges(
        names: Vec<String>,
        edges: impl IntoIterator<Item = ((usize, usize), Slope)>,
    ) -> Graph {
        let mut e: Vec<((usize, usize), Slope)> = edges
            .into_iter()
            .map(|((u, v), s)| ((u.min(v), u.max(v)), s))
            .collect();
        e.sort_unstable_by_key(|&(k, _)| k);
        e.dedup_by_key(|&mut (k, _)| k);
        let (edges, slopes) = e.into_iter().unzip();
        Graph {
            names,
            edges,
            slopes: Some(slopes),
        }
    }

    pub fn empty(names: Vec<String>) -> Graph {
        Graph {
            names,
            edges: Vec::new(),
            slopes: None,
        }
    }

    /// Graph on vertices `0..n` named by their index.
    pub fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        Graph::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn slopes(&self) -> Option<&[Slope]> {
        self.slopes.as_deref()
    }

    pub fn slope(&self, u: usize, v: usize) -> Option<Slope> {
        let i = self.edges.binary_search(&(u.min(v), u.max(v))).ok()?;
        self.slopes.as_ref().map(|s| s[i])
    }

    pub fn without_slopes(mut self) -> Graph {
        self.slopes = None;
        self
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Open neighbourhoods as bitsets.
    pub fn neighbour_sets(&self) -> Vec<FixedBitSet> {
        let n = self.names.len();
        let mut sets = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in &self.edges {
            sets[u].insert(v);
            sets[v].insert(u);
        }
        sets
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn complement(&self) -> Graph {
        let n = self.names.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph {
            names: self.names.clone(),
            edges,
            slopes: None,
        }
    }

    /// Subgraph induced by `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let pos: HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let mut edges = Vec::new();
        let mut slopes = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                edges.push((a, b));
                if let Some(s) = &self.slopes {
                    slopes.push(s[i]);
                }
            }
        }
        match self.slopes {
            Some(_) => Graph::from_sloped_edges(names, edges.into_iter().zip(slopes)),
            None => Graph::from_edges(names, edges),
        }
    }

    /// Disjoint union; vertex names of `other` must not clash with ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.names.len();
        let names = self.names.iter().chain(&other.names).cloned().collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_edges(names, edges)
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.names.len();
        let cross = (0..off).flat_map(|u| (0..other.names.len()).map(move |v| (u, v + off)));
        let u = self.disjoint_union(other);
        Graph::from_edges(u.names.clone(), u.edges.iter().copied().chain(cross))
    }

    /// Renames every vertex through `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Graph {
        Graph {
            names: self.names.iter().map(|n| f(n)).collect(),
            ..self.clone()
        }
    }

    /// Edge set as sorted name pairs (each pair sorted), independent of vertex order.
    pub fn named_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (&self.names[u], &self.names[v]);
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Same vertex names and the same edges between them, regardless of vertex order.
    pub fn same_as(&self, other: &Graph) -> bool {
        let mut a = self.names.clone();
        let mut b = other.names.clone();
        a.sort();
        b.sort();
        a == b && self.named_edges() == other.named_edges()
    }

    /// Copy with vertices sorted by name and edges in lexicographic order.
    pub fn canonical(&self) -> Graph {
        let mut order: Vec<usize> = (0..self.names.len()).collect();
        order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        self.induced(&order)
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.names.len()];
        let mut out = Vec::new();
        for s in 0..self.names.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.names.len()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_tree(&self) -> bool {
        let n = self.names.len();
        n > 0 && self.edges.len() == n - 1 && self.components().len() == 1
    }

    pub fn to_json(&self) -> GraphJson {
        let g = self.canonical();
        let edges = g.named_edges().into_iter().map(|(a, b)| [a, b]).collect();
        let slope = g.slopes.as_ref().map(|_| {
            g.edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = sorted_pair(&g.names[u], &g.names[v]);
                    (format!("{a}|{b}"), g.slope(u, v).unwrap())
                })
                .collect()
        });
        GraphJson {
            vertices: g.names.clone(),
            edges,
            slope,
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph, GraphError> {
        let mut index = HashMap::new();
        for (i, v) in j.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |v: &String| {
            index
                .get(v.as_str())
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
        };
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for [a, b] in &j.edges {
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(a.clone(), b.clone()));
            }
            edges.push((u, v));
        }
        let Some(slope) = &j.slope else {
            return Ok(Graph::from_edges(j.vertices.clone(), edges));
        };
        let mut by_pair = HashMap::new();
        for (key, &s) in slope {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| GraphError::BadSlopeKey(key.clone()))?;
            let (u, v) = (lookup(&a.to_string())?, lookup(&b.to_string())?);
            by_pair.insert((u.min(v), u.max(v)), s);
        }
        let mut sloped = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            let key = (u.min(v), u.max(v));
            match by_pair.get(&key) {
                Some(&s) => sloped.push((key, s)),
                // a partial slope map is dropped as a whole
                None => return Ok(Graph::from_edges(j.vertices.clone(), edges)),
            }
        }
        Ok(Graph::from_sloped_edges(j.vertices.clone(), sloped))
    }
}

fn sorted_pair<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Wire form: `{"vertices":[..],"edges":[["a","b"],..],"slope":{"a|b":"+"}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<BTreeMap<String, Slope>>,
}

/// Small graph families used as fixtures.
pub mod families {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::numbered(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::numbered(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::numbered(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::numbered(n, [])
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::numbered(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    /// A centre with one path of each given length hanging off it.
    pub fn spider(legs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::numbered(next, edges)
    }

    /// `K_c` with a pendant leaf on every clique vertex. Clique vertices are `0..c`,
    /// the leaf of `i` is `c + i`.
    pub fn supernova(c: usize) -> Graph {
        let clique = (0..c).flat_map(|u| (u + 1..c).map(move |v| (u, v)));
        Graph::numbered(2 * c, clique.chain((0..c).map(|i| (i, c + i))))
    }

    /// Disjoint union of several graphs, vertices renamed `"{k}.{name}"`.
    pub fn union_of(parts: &[Graph]) -> Graph {
        let mut acc = Graph::numbered(0, []);
        for (k, g) in parts.iter().enumerate() {
            acc = acc.disjoint_union(&g.relabel(|n| format!("{k}.{n}")));
        }
        acc
    }
}
