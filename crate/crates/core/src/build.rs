//! Construction of witness rectangle graphs.
//!
//! [`build_oracle`] tests every vertex pair against every witness.
//! [`build_sweep`] is output-sensitive: it reports the dominance pairs whose
//! box does (positive mode) or does not (negative mode) hold a witness,
//! in `O(n log n + k)` up to an inverse-Ackermann factor, once for
//! positive-slope pairs and once more on the mirrored scene for
//! negative-slope pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{GeomError, PlanePoint, Scene};
use crate::graph::{Graph, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("positive mode does not accept negative witnesses")]
    NegativeWitnessInPositiveMode,
    #[error("the sweep does not support mixed-sign scenes")]
    MixedSweepUnsupported,
}

/// Adjacency rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Adjacent when the box holds at least one witness.
    #[serde(rename = "pos")]
    Positive,
    /// Adjacent when the box holds no witness; witness signs are ignored.
    #[serde(rename = "neg")]
    Negative,
    /// Adjacent when positive witnesses in the box outnumber negative ones.
    #[serde(rename = "pm")]
    Mixed,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "pos" | "positive" | "+" => Ok(Mode::Positive),
            "neg" | "negative" | "-" => Ok(Mode::Negative),
            "pm" | "mixed" | "+-" => Ok(Mode::Mixed),
            _ => Err(format!("unknown mode {s:?} (expected pos, neg or pm)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Positive => "pos",
            Mode::Negative => "neg",
            Mode::Mixed => "pm",
        })
    }
}

pub fn slope_of(p: &PlanePoint, q: &PlanePoint) -> Slope {
    if (p.x - q.x).signum() == (p.y - q.y).signum() {
        Slope::Positive
    } else {
        Slope::Negative
    }
}

fn names(scene: &Scene) -> Vec<String> {
    scene.points.iter().map(|p| p.id.clone()).collect()
}

fn check_mode(scene: &Scene, mode: Mode) -> Result<(), BuildError> {
    scene.validate()?;
    if mode == Mode::Positive && !scene.neg_witnesses.is_empty() {
        return Err(BuildError::NegativeWitnessInPositiveMode);
    }
    Ok(())
}

/// Brute force over all pairs and witnesses.
pub fn build_oracle(scene: &Scene, mode: Mode) -> Result<Graph, BuildError> {
    check_mode(scene, mode)?;
    let pos: Vec<(i64, i64)> = scene.pos_witnesses.iter().map(|w| (w.x, w.y)).collect();
    let neg: Vec<(i64, i64)> = scene.neg_witnesses.iter().map(|w| (w.x, w.y)).collect();
    let all: Vec<(i64, i64)> = pos.iter().chain(&neg).copied().collect();
    let pts = &scene.points;
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (p, q) = (&pts[i], &pts[j]);
            let (x0, x1) = (p.x.min(q.x), p.x.max(q.x));
            let (y0, y1) = (p.y.min(q.y), p.y.max(q.y));
            let inside = |&(x, y): &(i64, i64)| x0 < x && x < x1 && y0 < y && y < y1;
            let adjacent = match mode {
                Mode::Positive => pos.iter().any(inside),
                Mode::Negative => !all.iter().any(inside),
                Mode::Mixed => {
                    let s = pos.iter().filter(|w| inside(w)).count() as i64
                        - neg.iter().filter(|w| inside(w)).count() as i64;
                    s > 0
                }
            };
            if adjacent {
                edges.push(((i, j), slope_of(p, q)));
            }
        }
    }
    Ok(Graph::from_sloped_edges(names(scene), edges))
}

/// Output-sensitive construction; same edge set as [`build_oracle`].
pub fn build_sweep(scene: &Scene, mode: Mode) -> Result<Graph, BuildError> {
    check_mode(scene, mode)?;
    let witnessed = match mode {
        Mode::Positive => true,
        Mode::Negative => false,
        Mode::Mixed => return Err(BuildError::MixedSweepUnsupported),
    };
    let (pts, ws) = sweep_frame(scene, 1)?;
    let mut edges = Vec::new();
    dominance_pairs(&pts, &ws, witnessed, |a, b| {
        edges.push(((a, b), Slope::Positive))
    });
    let (pts, ws) = sweep_frame(scene, -1)?;
    dominance_pairs(&pts, &ws, witnessed, |a, b| {
        edges.push(((a, b), Slope::Negative))
    });
    Ok(Graph::from_sloped_edges(names(scene), edges))
}

type Coords = Vec<(i64, i64)>;

/// Coordinates for one sweep pass, x negated when `sx` is -1.
///
/// The sweep reports pairs with the first point down-left of the second. A
/// witness on a vertex must stay out of those boxes, so on a tripled grid it
/// moves one step right and one step down.
fn sweep_frame(scene: &Scene, sx: i64) -> Result<(Coords, Coords), GeomError> {
    let pts: Vec<(i64, i64)> = scene.points.iter().map(|p| (sx * p.x, p.y)).collect();
    let ws = scene.pos_witnesses.iter().chain(&scene.neg_witnesses);
    let on: std::collections::HashSet<(i64, i64)> = pts.iter().copied().collect();
    let ws: Vec<(i64, i64)> = ws.map(|w| (sx * w.x, w.y)).collect();
    if !ws.iter().any(|w| on.contains(w)) {
        return Ok((pts, ws));
    }
    let t = |v: i64| v.checked_mul(3).ok_or(GeomError::Overflow);
    let pts = pts
        .iter()
        .map(|&(x, y)| Ok((t(x)?, t(y)?)))
        .collect::<Result<_, GeomError>>()?;
    let ws = ws
        .iter()
        .map(|&(x, y)| {
            let d = on.contains(&(x, y)) as i64;
            Ok((t(x)? + d, t(y)? - d))
        })
        .collect::<Result<_, GeomError>>()?;
    Ok((pts, ws))
}

/// Rectangle-of-influence graph: adjacent when no third point lies in the box.
pub fn build_rig(points: &[PlanePoint]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (p, q) = (&points[i], &points[j]);
            let (x0, x1) = (p.x.min(q.x), p.x.max(q.x));
            let (y0, y1) = (p.y.min(q.y), p.y.max(q.y));
            let blocked = points
                .iter()
                .any(|r| x0 < r.x && r.x < x1 && y0 < r.y && r.y < y1);
            if !blocked {
                edges.push(((i, j), slope_of(p, q)));
            }
        }
    }
    Graph::from_sloped_edges(points.iter().map(|p| p.id.clone()).collect(), edges)
}

const NONE: u32 = u32::MAX;

/// Decremental "next active index at or after i", union-find style.
/// Index `len` is a permanent sentinel.
struct NextActive {
    parent: Vec<u32>,
}

impl NextActive {
    fn new(len: usize) -> Self {
        NextActive {
            parent: (0..=len as u32).collect(),
        }
    }

    fn remove(&mut self, i: usize) {
        self.parent[i] = i as u32 + 1;
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            let p = self.parent[i] as usize;
            self.parent[i] = self.parent[p];
            i = p;
        }
        i
    }
}

/// One element of the combined point/witness set in rank space, indexed by x-rank.
#[derive(Clone, Copy)]
struct Elem {
    y: u32,
    /// Vertex index, or `NONE` for a witness.
    vertex: u32,
}

impl Elem {
    fn is_vertex(&self) -> bool {
        self.vertex != NONE
    }
}

/// Reports every pair `(a, b)` of vertices with `a` strictly below-left of `b`
/// whose open box holds a witness (`witnessed`) or holds none (`!witnessed`).
///
/// Divide and conquer on x-rank. For a split at `mid`, a left vertex `a` and
/// right vertex `b` have a witness in their box iff the lowest left-half witness
/// right of and above `a` lies below `b` (`b.y > low(a)`), or the highest
/// right-half witness left of and below `b` lies above `a` (`high(b) > a.y`).
/// Both thresholds come from decremental successor sweeps; the reports are
/// then enumerated by walking skip lists so every step yields a pair.
fn dominance_pairs(
    pts: &[(i64, i64)],
    ws: &[(i64, i64)],
    witnessed: bool,
    mut emit: impl FnMut(usize, usize),
) {
    let n = pts.len() + ws.len();
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<(i64, i64)> = pts.iter().chain(ws).copied().collect();
    let mut by_x: Vec<u32> = (0..n as u32).collect();
    by_x.sort_unstable_by_key(|&i| coords[i as usize].0);
    let mut by_y: Vec<u32> = (0..n as u32).collect();
    by_y.sort_unstable_by_key(|&i| coords[i as usize].1);
    let mut y_rank = vec![0u32; n];
    for (r, &i) in by_y.iter().enumerate() {
        y_rank[i as usize] = r as u32;
    }
    let mut x_rank = vec![0u32; n];
    for (r, &i) in by_x.iter().enumerate() {
        x_rank[i as usize] = r as u32;
    }
    let elems: Vec<Elem> = by_x
        .iter()
        .map(|&i| {
            let i = i as usize;
            Elem {
                y: y_rank[i],
                vertex: if i < pts.len() { i as u32 } else { NONE },
            }
        })
        .collect();
    let order: Vec<u32> = by_y.iter().map(|&i| x_rank[i as usize]).collect();
    let mut scratch = Scratch {
        a: vec![0; n],
        b: vec![0; n],
        c: vec![0; n],
    };
    solve(&elems, 0, n, &order, witnessed, &mut scratch, &mut emit);
}

/// Per-element work arrays indexed by x-rank, reused across levels.
struct Scratch {
    a: Vec<u32>,
    b: Vec<u32>,
    c: Vec<u32>,
}

fn solve(
    elems: &[Elem],
    lo: usize,
    hi: usize,
    by_y: &[u32],
    witnessed: bool,
    s: &mut Scratch,
    emit: &mut impl FnMut(usize, usize),
) {
    if hi - lo <= LEAF {
        leaf(elems, lo, hi, witnessed, emit);
        return;
    }
    let mid = (lo + hi) / 2;
    let (left, right): (Vec<u32>, Vec<u32>) = by_y.iter().partition(|&&x| (x as usize) < mid);
    let has_left_vertex = left.iter().any(|&x| elems[x as usize].is_vertex());
    let has_right_vertex = right.iter().any(|&x| elems[x as usize].is_vertex());
    if has_left_vertex && has_right_vertex {
        cross(elems, mid, by_y, &left, &right, witnessed, s, emit);
    }
    if has_left_vertex {
        solve(elems, lo, mid, &left, witnessed, s, emit);
    }
    if has_right_vertex {
        solve(elems, mid, hi, &right, witnessed, s, emit);
    }
}

const LEAF: usize = 24;

/// Direct check of every pair in a short x-rank range.
fn leaf(
    elems: &[Elem],
    lo: usize,
    hi: usize,
    witnessed: bool,
    emit: &mut impl FnMut(usize, usize),
) {
    for a in lo..hi {
        if !elems[a].is_vertex() {
            continue;
        }
        let ay = elems[a].y;
        // lowest witness above a seen so far, scanning right
        let mut low = u32::MAX;
        for e in &elems[a + 1..hi] {
            if e.y <= ay {
                continue;
            }
            if e.is_vertex() {
                if (low < e.y) == witnessed {
                    emit(elems[a].vertex as usize, e.vertex as usize);
                }
            } else {
                low = low.min(e.y);
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cross(
    elems: &[Elem],
    mid: usize,
    by_y: &[u32],
    left: &[u32],
    right: &[u32],
    witnessed: bool,
    s: &mut Scratch,
    emit: &mut impl FnMut(usize, usize),
) {
    let lo = left.iter().copied().min().unwrap() as usize;
    let hi = right.iter().copied().max().unwrap() as usize + 1;

    // Right vertices in y order; for every element, how many of them lie below it.
    let rv: Vec<u32> = right
        .iter()
        .copied()
        .filter(|&x| elems[x as usize].is_vertex())
        .collect();
    let rv_below = &mut s.a;
    let mut count = 0u32;
    for &x in by_y {
        rv_below[x as usize] = count;
        if x as usize >= mid && elems[x as usize].is_vertex() {
            count += 1;
        }
    }

    // low(a): lowest left witness to the right of and above a (stored as its x-rank).
    let lw: Vec<u32> = left
        .iter()
        .copied()
        .filter(|&x| !elems[x as usize].is_vertex())
        .collect();
    let lw_below = &mut s.b;
    let mut count = 0u32;
    for &x in left {
        lw_below[x as usize] = count;
        if !elems[x as usize].is_vertex() {
            count += 1;
        }
    }
    let low = &mut s.c;
    let mut active = NextActive::new(lw.len());
    for x in lo..mid {
        if elems[x].is_vertex() {
            let j = active.find(lw_below[x] as usize);
            low[x] = if j < lw.len() { lw[j] } else { NONE };
        } else {
            active.remove(lw_below[x] as usize);
        }
    }

    // high(b): y-rank of the highest right witness to the left of and below b.
    let rw: Vec<u32> = right
        .iter()
        .copied()
        .filter(|&x| !elems[x as usize].is_vertex())
        .collect();
    let m = rw.len();
    let rw_below = &mut s.b;
    let mut count = 0u32;
    for &x in right {
        rw_below[x as usize] = count;
        if !elems[x as usize].is_vertex() {
            count += 1;
        }
    }
    // mirrored indexing turns "previous active" into "next active"
    let mut active = NextActive::new(m);
    let mut high = vec![NONE; rv.len()];
    let mut high_w = vec![NONE; rv.len()];
    let mut rv_index = vec![0u32; hi - mid];
    for (i, &x) in rv.iter().enumerate() {
        rv_index[x as usize - mid] = i as u32;
    }
    for x in (mid..hi).rev() {
        let below = rw_below[x] as usize;
        if elems[x].is_vertex() {
            if below > 0 {
                let j = active.find(m - below);
                if j < m {
                    let i = rv_index[x - mid] as usize;
                    high_w[i] = (m - 1 - j) as u32;
                    high[i] = elems[rw[m - 1 - j] as usize].y;
                }
            }
        } else {
            active.remove(m - 1 - below);
        }
    }

    // right vertices ordered by high(), ascending; those without one are left out
    // (counting sort on the witness index keeps each level linear)
    let mut start = vec![0u32; m + 1];
    for &w in high_w.iter().filter(|&&w| w != NONE) {
        start[w as usize + 1] += 1;
    }
    for j in 0..m {
        start[j + 1] += start[j];
    }
    let mut by_high = vec![0u32; start[m] as usize];
    for (i, &w) in high_w.iter().enumerate() {
        if w != NONE {
            by_high[start[w as usize] as usize] = i as u32;
            start[w as usize] += 1;
        }
    }

    let left_vertices = left
        .iter()
        .copied()
        .filter(|&x| elems[x as usize].is_vertex());
    let vid = |x: u32| elems[x as usize].vertex as usize;
    let k = rv.len();

    if witnessed {
        // b.y > low(a): a suffix of rv.
        for x in left_vertices.clone() {
            let w = low[x as usize];
            if w != NONE {
                for &b in &rv[rv_below[w as usize] as usize..] {
                    emit(vid(x), vid(b));
                }
            }
        }
        // high(b) > a.y and b.y < low(a): a y-ascending sweep over a, retiring b
        // once high(b) drops below a.y; walk the active prefix backwards.
        let mut active = NextActive::new(k);
        for i in 0..k {
            if high[i] == NONE {
                active.remove(k - 1 - i);
            }
        }
        let mut next = 0;
        for x in left_vertices {
            let ay = elems[x as usize].y;
            while next < by_high.len() && high[by_high[next] as usize] < ay {
                active.remove(k - 1 - by_high[next] as usize);
                next += 1;
            }
            let w = low[x as usize];
            let end = if w == NONE {
                k
            } else {
                rv_below[w as usize] as usize
            };
            if end == 0 {
                continue;
            }
            let mut j = active.find(k - end);
            while j < k {
                emit(vid(x), vid(rv[k - 1 - j]));
                j = active.find(j + 1);
            }
        }
    } else {
        // a.y < b.y < low(a) and (no high(b) or high(b) < a.y): a y-descending
        // sweep over a, retiring b once high(b) exceeds a.y.
        let mut active = NextActive::new(k);
        let mut next = by_high.len();
        let verts: Vec<u32> = left_vertices.collect();
        for &x in verts.iter().rev() {
            let ay = elems[x as usize].y;
            while next > 0 && high[by_high[next - 1] as usize] > ay {
                active.remove(by_high[next - 1] as usize);
                next -= 1;
            }
            let w = low[x as usize];
            let end = if w == NONE {
                k
            } else {
                rv_below[w as usize] as usize
            };
            let mut j = active.find(rv_below[x as usize] as usize);
            while j < end {
                emit(vid(x), vid(rv[j]));
                j = active.find(j + 1);
            }
        }
    }
}
