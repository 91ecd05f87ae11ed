//! Exact planar primitives over integer coordinates.
//!
//! Everything here is order-theoretic: open boxes, quadrants and monotone
//! chains depend only on the relative order of coordinates, so all
//! predicates are plain integer comparisons.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points {0} and {1} share an {2} coordinate")]
    DuplicateCoordinate(String, String, Axis),
    #[error("identifier {0} is used more than once")]
    DuplicateId(String),
    #[error("degenerate box between {0} and {1}")]
    DegenerateBox(String, String),
    #[error("coordinate scaling overflows 64-bit range")]
    Overflow,
    #[error("invalid coordinate {0:?}")]
    InvalidCoordinate(String),
    #[error("invalid witness sign {0:?}")]
    InvalidSign(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanePoint {
    pub id: String,
    pub x: i64,
    pub y: i64,
}

impl PlanePoint {
    pub fn new(id: impl Into<String>, x: i64, y: i64) -> Self {
        PlanePoint {
            id: id.into(),
            x,
            y,
        }
    }
}

/// Sign of a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// Vertex points together with positive and negative witnesses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scene {
    pub points: Vec<PlanePoint>,
    pub pos_witnesses: Vec<PlanePoint>,
    pub neg_witnesses: Vec<PlanePoint>,
}

impl Scene {
    pub fn new(points: Vec<PlanePoint>, pos_witnesses: Vec<PlanePoint>) -> Self {
        Scene {
            points,
            pos_witnesses,
            neg_witnesses: Vec::new(),
        }
    }

    pub fn with_negative(mut self, neg_witnesses: Vec<PlanePoint>) -> Self {
        self.neg_witnesses = neg_witnesses;
        self
    }

    /// All elements: points, then positive witnesses, then negative witnesses.
    pub fn elements(&self) -> impl Iterator<Item = &PlanePoint> {
        self.points
            .iter()
            .chain(&self.pos_witnesses)
            .chain(&self.neg_witnesses)
    }

    pub fn witness_count(&self) -> usize {
        self.pos_witnesses.len() + self.neg_witnesses.len()
    }

    /// Checks identifier uniqueness and general position.
    ///
    /// A witness sitting exactly on a vertex is allowed: it is a corner of
    /// every box that vertex spans and lies on no other box's boundary.
    pub fn validate(&self) -> Result<(), GeomError> {
        let mut ids = HashSet::new();
        for p in self.elements() {
            if !ids.insert(p.id.as_str()) {
                return Err(GeomError::DuplicateId(p.id.clone()));
            }
        }
        let at_vertex: HashSet<(i64, i64)> = self.points.iter().map(|p| (p.x, p.y)).collect();
        let mut seen = HashSet::new();
        let free = self
            .pos_witnesses
            .iter()
            .chain(&self.neg_witnesses)
            .filter(|w| !at_vertex.contains(&(w.x, w.y)) || !seen.insert((w.x, w.y)));
        check_general_position(self.points.iter().chain(free))
    }

    /// Replaces every coordinate by its rank among all elements of the scene.
    /// Equal coordinates keep equal ranks.
    pub fn to_rank_space(&self) -> Scene {
        let all: Vec<&PlanePoint> = self.elements().collect();
        let dense = |v: Vec<i64>| {
            let mut sorted = v.clone();
            sorted.sort_unstable();
            sorted.dedup();
            v.iter()
                .map(|c| sorted.binary_search(c).unwrap())
                .collect::<Vec<_>>()
        };
        let xr = dense(all.iter().map(|p| p.x).collect());
        let yr = dense(all.iter().map(|p| p.y).collect());
        let mut it = all
            .iter()
            .enumerate()
            .map(|(i, p)| PlanePoint::new(p.id.clone(), xr[i] as i64, yr[i] as i64));
        let points = it.by_ref().take(self.points.len()).collect();
        let pos = it.by_ref().take(self.pos_witnesses.len()).collect();
        let neg = it.collect();
        Scene {
            points,
            pos_witnesses: pos,
            neg_witnesses: neg,
        }
    }

    /// Applies `f` to every coordinate pair of the scene.
    pub fn map_coords(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> Scene {
        let m = |v: &[PlanePoint]| {
            v.iter()
                .map(|p| {
                    let (x, y) = f(p.x, p.y);
                    PlanePoint::new(p.id.clone(), x, y)
                })
                .collect()
        };
        Scene {
            points: m(&self.points),
            pos_witnesses: m(&self.pos_witnesses),
            neg_witnesses: m(&self.neg_witnesses),
        }
    }

    /// Bounding box of all elements as `(x_min, x_max, y_min, y_max)`.
    pub fn bounds(&self) -> Option<(i64, i64, i64, i64)> {
        self.elements().fold(None, |acc, p| {
            Some(match acc {
                None => (p.x, p.x, p.y, p.y),
                Some((a, b, c, d)) => (a.min(p.x), b.max(p.x), c.min(p.y), d.max(p.y)),
            })
        })
    }
}

/// Rank of every value in `values` (0-based, ties broken by position).
pub fn ranks(values: impl Iterator<Item = i64>) -> Vec<usize> {
    let v: Vec<i64> = values.collect();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by_key(|&i| (v[i], i));
    let mut r = vec![0; v.len()];
    for (rank, i) in order.into_iter().enumerate() {
        r[i] = rank;
    }
    r
}

pub fn check_general_position<'a>(
    points: impl Iterator<Item = &'a PlanePoint>,
) -> Result<(), GeomError> {
    let pts: Vec<&PlanePoint> = points.collect();
    for axis in [Axis::X, Axis::Y] {
        let key = |p: &PlanePoint| if axis == Axis::X { p.x } else { p.y };
        let mut sorted = pts.clone();
        sorted.sort_by_key(|p| key(p));
        for w in sorted.windows(2) {
            if key(w[0]) == key(w[1]) {
                return Err(GeomError::DuplicateCoordinate(
                    w[0].id.clone(),
                    w[1].id.clone(),
                    axis,
                ));
            }
        }
    }
    Ok(())
}

/// The open rectangle `(x_lo, x_hi) x (y_lo, y_hi)`; never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpenBox {
    x_lo: i64,
    x_hi: i64,
    y_lo: i64,
    y_hi: i64,
}

impl OpenBox {
    pub fn new(x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Option<OpenBox> {
        (x_lo < x_hi && y_lo < y_hi).then_some(OpenBox {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        })
    }

    pub fn x_lo(&self) -> i64 {
        self.x_lo
    }
    pub fn x_hi(&self) -> i64 {
        self.x_hi
    }
    pub fn y_lo(&self) -> i64 {
        self.y_lo
    }
    pub fn y_hi(&self) -> i64 {
        self.y_hi
    }

    pub fn contains_xy(&self, x: i64, y: i64) -> bool {
        self.x_lo < x && x < self.x_hi && self.y_lo < y && y < self.y_hi
    }

    pub fn contains(&self, w: &PlanePoint) -> bool {
        self.contains_xy(w.x, w.y)
    }

    /// True when the interiors of the two boxes intersect.
    pub fn overlaps(&self, other: &OpenBox) -> bool {
        self.x_lo < other.x_hi
            && other.x_lo < self.x_hi
            && self.y_lo < other.y_hi
            && other.y_lo < self.y_hi
    }
}

/// The open box spanned by `p` and `q` as opposite corners.
pub fn box_of(p: &PlanePoint, q: &PlanePoint) -> Result<OpenBox, GeomError> {
    OpenBox::new(p.x.min(q.x), p.x.max(q.x), p.y.min(q.y), p.y.max(q.y))
        .ok_or_else(|| GeomError::DegenerateBox(p.id.clone(), q.id.clone()))
}

pub fn box_contains(b: &OpenBox, w: &PlanePoint) -> bool {
    b.contains(w)
}

/// Open quadrants around a reference point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV];

    pub fn opposite(self) -> Quadrant {
        match self {
            Quadrant::I => Quadrant::III,
            Quadrant::II => Quadrant::IV,
            Quadrant::III => Quadrant::I,
            Quadrant::IV => Quadrant::II,
        }
    }

    /// Image under a counter-clockwise quarter turn.
    pub fn rotated_ccw(self) -> Quadrant {
        match self {
            Quadrant::I => Quadrant::II,
            Quadrant::II => Quadrant::III,
            Quadrant::III => Quadrant::IV,
            Quadrant::IV => Quadrant::I,
        }
    }

    /// Quadrant of offset `(dx, dy)`; `None` on an axis.
    pub fn of_offset(dx: i64, dy: i64) -> Option<Quadrant> {
        use std::cmp::Ordering::*;
        match (dx.cmp(&0), dy.cmp(&0)) {
            (Greater, Greater) => Some(Quadrant::I),
            (Less, Greater) => Some(Quadrant::II),
            (Less, Less) => Some(Quadrant::III),
            (Greater, Less) => Some(Quadrant::IV),
            _ => None,
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrant::I => "I",
            Quadrant::II => "II",
            Quadrant::III => "III",
            Quadrant::IV => "IV",
        })
    }
}

pub fn quadrant_of(center: &PlanePoint, other: &PlanePoint) -> Result<Quadrant, GeomError> {
    Quadrant::of_offset(other.x - center.x, other.y - center.y)
        .ok_or_else(|| GeomError::DegenerateBox(center.id.clone(), other.id.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    /// x and y both increase.
    Ascending,
    /// x increases while y decreases.
    Descending,
}

/// A longest chain of points monotone in both coordinates, in increasing x.
pub fn longest_monotone_chain(points: &[PlanePoint], direction: ChainDirection) -> Vec<PlanePoint> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i].x);
    let key = |i: usize| match direction {
        ChainDirection::Ascending => points[i].y,
        ChainDirection::Descending => -points[i].y,
    };
    // patience sorting: tails[l] is the index ending the best chain of length l + 1
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; points.len()];
    for &i in &order {
        let k = key(i);
        let pos = tails.partition_point(|&t| key(t) < k);
        prev[i] = pos.checked_sub(1).map(|p| tails[p]);
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    let mut chain = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(i) = cur {
        chain.push(points[i].clone());
        cur = prev[i];
    }
    chain.reverse();
    chain
}
