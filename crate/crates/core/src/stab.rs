//! Witness sets that stab every box spanned by a point set.

use serde::Serialize;
use thiserror::Error;

use crate::build::{build_sweep, Mode};
use crate::geom::{box_of, check_general_position, GeomError, OpenBox, PlanePoint, Scene};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabError {
    #[error("at least two points are needed")]
    TooFewPoints,
    #[error("exact search supports at most {max} points, got {got}")]
    TooManyPoints { max: usize, got: usize },
    #[error("more than {0} witnesses are needed")]
    CapExceeded(usize),
    #[error("boxes {0} and {1} overlap")]
    NotDisjoint(String, String),
    #[error("expected {expected} grid points, got {got}")]
    WrongGridSize { expected: usize, got: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Bounds on the number of witnesses needed to make the graph on `instance` complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabbingCertificate {
    pub instance: Vec<PlanePoint>,
    /// Pairwise disjoint boxes spanned by instance points; each needs its own witness.
    #[serde(rename = "boxes", skip_serializing_if = "Option::is_none")]
    pub lower_bound_boxes: Option<Vec<OpenBox>>,
    /// Witnesses making the graph complete, in the coordinates of `instance`.
    #[serde(rename = "witnesses", skip_serializing_if = "Option::is_none")]
    pub upper_witnesses: Option<Vec<PlanePoint>>,
    pub lower: usize,
    pub upper: usize,
}

/// Stabs every box: each point gets a witness just up-left of it when its
/// second quadrant holds a point, and one just down-left when its third does.
///
/// Coordinates are scaled to make room for the offsets, so the returned
/// scene holds the scaled points together with the witnesses.
pub fn stab_construct(points: &[PlanePoint]) -> Result<Scene, StabError> {
    if points.len() < 2 {
        return Err(StabError::TooFewPoints);
    }
    check_general_position(points.iter())?;
    let n = points.len() as i64;
    let f = 4 * (2 * n + 1);
    let scale = |v: i64| v.checked_mul(f).ok_or(GeomError::Overflow);
    let mut scaled = Vec::with_capacity(points.len());
    for p in points {
        scaled.push(PlanePoint::new(p.id.clone(), scale(p.x)?, scale(p.y)?));
    }
    let frontier = frontiers(points);
    let prefix = {
        let mut p = "s".to_string();
        while points.iter().any(|q| q.id.starts_with(&p)) {
            p.push('_');
        }
        p
    };
    let mut witnesses = Vec::new();
    for (i, p) in scaled.iter().enumerate() {
        let (upper_left_empty, lower_left_empty) = frontier[i];
        if !upper_left_empty {
            let j = witnesses.len() as i64 + 1;
            witnesses.push(PlanePoint::new(
                format!("{prefix}{}", j - 1),
                p.x - j,
                p.y + j,
            ));
        }
        if !lower_left_empty {
            let j = witnesses.len() as i64 + 1;
            witnesses.push(PlanePoint::new(
                format!("{prefix}{}", j - 1),
                p.x - j,
                p.y - j,
            ));
        }
    }
    let scene = Scene::new(scaled, witnesses);
    scene.validate()?;
    let g = build_sweep(&scene, Mode::Positive).expect("scene is valid");
    let n = scene.points.len();
    assert_eq!(
        g.edge_count(),
        n * (n - 1) / 2,
        "stabbing construction left a box empty"
    );
    Ok(scene)
}

/// Per point: (second quadrant empty, third quadrant empty).
pub fn frontiers(points: &[PlanePoint]) -> Vec<(bool, bool)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i].x);
    let mut out = vec![(true, true); points.len()];
    let (mut max_y, mut min_y) = (i64::MIN, i64::MAX);
    for i in order {
        let y = points[i].y;
        out[i] = (max_y < y, min_y > y);
        max_y = max_y.max(y);
        min_y = min_y.min(y);
    }
    out
}

/// Rotated `k x k` grid: `(i*D + j, j*D - i)` for `1 <= i, j <= k`, `D = 10k^2`, row by row in `i`.
pub fn grid_instance(k: usize) -> Vec<PlanePoint> {
    let d = 10 * (k * k) as i64;
    let mut out = Vec::with_capacity(k * k);
    for i in 1..=k as i64 {
        for j in 1..=k as i64 {
            out.push(PlanePoint::new(format!("g{i}_{j}"), i * d + j, j * d - i));
        }
    }
    out
}

/// Boxes of the grid-neighbour pairs of a [`grid_instance`], checked pairwise disjoint.
pub fn disjoint_certificate(
    points: &[PlanePoint],
    k: usize,
) -> Result<StabbingCertificate, StabError> {
    if points.len() != k * k {
        return Err(StabError::WrongGridSize {
            expected: k * k,
            got: points.len(),
        });
    }
    let at = |i: usize, j: usize| &points[i * k + j];
    let mut boxes = Vec::new();
    let mut names = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for (a, b) in [(i + 1, j), (i, j + 1)] {
                if a < k && b < k {
                    boxes.push(box_of(at(i, j), at(a, b))?);
                    names.push(format!("{}-{}", at(i, j).id, at(a, b).id));
                }
            }
        }
    }
    for x in 0..boxes.len() {
        for y in x + 1..boxes.len() {
            if boxes[x].overlaps(&boxes[y]) {
                return Err(StabError::NotDisjoint(names[x].clone(), names[y].clone()));
            }
        }
    }
    let lower = boxes.len();
    Ok(StabbingCertificate {
        instance: points.to_vec(),
        lower_bound_boxes: Some(boxes),
        upper_witnesses: None,
        lower,
        upper: usize::MAX,
    })
}

/// Lower and upper bounds for a grid instance, without search.
pub fn grid_certificate(k: usize) -> Result<StabbingCertificate, StabError> {
    let scene = stab_construct(&grid_instance(k))?;
    let mut cert = disjoint_certificate(&scene.points, k)?;
    cert.upper = scene.pos_witnesses.len();
    cert.upper_witnesses = Some(scene.pos_witnesses);
    Ok(cert)
}

/// Boxes between x-consecutive points; their x-ranges are disjoint.
pub fn consecutive_boxes(points: &[PlanePoint]) -> Result<Vec<OpenBox>, GeomError> {
    let mut sorted: Vec<&PlanePoint> = points.iter().collect();
    sorted.sort_by_key(|p| p.x);
    sorted.windows(2).map(|w| box_of(w[0], w[1])).collect()
}

/// [`stab_construct`] as a certificate, with the consecutive boxes as lower bound.
pub fn construct_certificate(points: &[PlanePoint]) -> Result<StabbingCertificate, StabError> {
    let scene = stab_construct(points)?;
    let boxes = consecutive_boxes(&scene.points)?;
    Ok(StabbingCertificate {
        lower: boxes.len(),
        upper: scene.pos_witnesses.len(),
        lower_bound_boxes: Some(boxes),
        upper_witnesses: Some(scene.pos_witnesses),
        instance: scene.points,
    })
}

pub const EXACT_MAX_POINTS: usize = 16;

/// Minimum number of witnesses making the graph on `points` complete.
///
/// Witnesses only matter up to the rank cell they fall in, so this is a
/// minimum hitting set of the `C(n,2)` boxes by the `(n-1)^2` cells.
pub fn stab_exact(points: &[PlanePoint], cap: usize) -> Result<usize, StabError> {
    let n = points.len();
    if n > EXACT_MAX_POINTS {
        return Err(StabError::TooManyPoints {
            max: EXACT_MAX_POINTS,
            got: n,
        });
    }
    check_general_position(points.iter())?;
    if n < 2 {
        return Ok(0);
    }
    let scene = Scene::new(points.to_vec(), vec![]).to_rank_space();
    let p = &scene.points;
    let mut boxes = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            boxes.push(box_of(&p[a], &p[b])?);
        }
    }
    let all: u128 = if boxes.len() == 128 {
        u128::MAX
    } else {
        (1u128 << boxes.len()) - 1
    };
    // cell (c, r) sits at rank-space point (c + 1/2, r + 1/2); doubled coordinates keep it integral
    let mut cells: Vec<u128> = Vec::new();
    for c in 0..n as i64 - 1 {
        for r in 0..n as i64 - 1 {
            let mask = boxes.iter().enumerate().fold(0u128, |m, (i, b)| {
                let hit = 2 * b.x_lo() < 2 * c + 1
                    && 2 * c + 1 < 2 * b.x_hi()
                    && 2 * b.y_lo() < 2 * r + 1
                    && 2 * r + 1 < 2 * b.y_hi();
                if hit {
                    m | 1 << i
                } else {
                    m
                }
            });
            if mask != 0 {
                cells.push(mask);
            }
        }
    }
    cells.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    cells.dedup();
    let cells: Vec<u128> = cells
        .iter()
        .enumerate()
        .filter(|&(i, &m)| {
            !cells
                .iter()
                .enumerate()
                .any(|(j, &o)| j != i && m & o == m && (m != o || j < i))
        })
        .map(|(_, &m)| m)
        .collect();
    let by_box: Vec<Vec<u128>> = (0..boxes.len())
        .map(|b| cells.iter().copied().filter(|m| m >> b & 1 == 1).collect())
        .collect();

    let mut best = greedy(&cells, all) + 1;
    search(0, 0, all, &by_box, &mut best);
    if best > cap {
        return Err(StabError::CapExceeded(cap));
    }
    Ok(best)
}

fn greedy(cells: &[u128], all: u128) -> usize {
    let mut covered = 0u128;
    let mut used = 0;
    while covered != all {
        let m = cells
            .iter()
            .max_by_key(|&&m| (m & !covered).count_ones())
            .unwrap();
        covered |= m;
        used += 1;
    }
    used
}

/// Boxes no two of which share a cell: each needs a separate witness.
fn packing_bound(uncovered: u128, by_box: &[Vec<u128>]) -> usize {
    let mut left = uncovered;
    let mut count = 0;
    while left != 0 {
        let b = left.trailing_zeros() as usize;
        count += 1;
        left &= !(1u128 << b);
        for m in &by_box[b] {
            left &= !m;
        }
    }
    count
}

fn search(covered: u128, used: usize, all: u128, by_box: &[Vec<u128>], best: &mut usize) {
    if covered == all {
        *best = (*best).min(used);
        return;
    }
    let uncovered = all & !covered;
    if used + packing_bound(uncovered, by_box) >= *best {
        return;
    }
    let b = (0..by_box.len())
        .filter(|&b| uncovered >> b & 1 == 1)
        .min_by_key(|&b| by_box[b].len())
        .unwrap();
    for &m in &by_box[b] {
        search(covered | m, used + 1, all, by_box, best);
    }
}
