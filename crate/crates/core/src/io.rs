//! JSON forms of scenes and decimal normalization.

use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::geom::{ranks, GeomError, PlanePoint, Scene, Sign};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawPoint {
    pub id: String,
    pub x: Number,
    pub y: Number,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawWitness {
    pub id: String,
    pub x: Number,
    pub y: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
}

/// Scene as read from JSON; coordinates may be decimals.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RawScene {
    #[serde(default)]
    pub points: Vec<RawPoint>,
    #[serde(default)]
    pub witnesses: Vec<RawWitness>,
}

impl RawScene {
    pub fn from_scene(scene: &Scene) -> RawScene {
        let pt = |p: &PlanePoint| RawPoint {
            id: p.id.clone(),
            x: p.x.into(),
            y: p.y.into(),
        };
        let wt = |p: &PlanePoint, s: &str| RawWitness {
            id: p.id.clone(),
            x: p.x.into(),
            y: p.y.into(),
            sign: Some(s.to_string()),
        };
        RawScene {
            points: scene.points.iter().map(pt).collect(),
            witnesses: scene
                .pos_witnesses
                .iter()
                .map(|w| wt(w, "+"))
                .chain(scene.neg_witnesses.iter().map(|w| wt(w, "-")))
                .collect(),
        }
    }
}

/// A normalized scene with its rank-space metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub scene: Scene,
    /// Power of ten the input was multiplied by.
    pub scale_exponent: u32,
    /// Element ids sorted by x, then by y.
    pub x_order: Vec<String>,
    pub y_order: Vec<String>,
}

/// A decimal literal as `mantissa * 10^exponent`.
fn parse_decimal(n: &Number) -> Result<(i128, i32), GeomError> {
    let s = n.to_string();
    let bad = || GeomError::InvalidCoordinate(s.clone());
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s.as_str(), 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let frac = frac.trim_end_matches('0');
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = digits.trim_start_matches('0');
    if digits.len() > 36 {
        return Err(GeomError::Overflow);
    }
    let m: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    Ok((if neg { -m } else { m }, exp - frac.len() as i32))
}

fn scaled(m: i128, e: i32, base: i32) -> Result<i64, GeomError> {
    let shift = (e - base) as u32;
    let f = 10i128.checked_pow(shift).ok_or(GeomError::Overflow)?;
    let v = m.checked_mul(f).ok_or(GeomError::Overflow)?;
    i64::try_from(v).map_err(|_| GeomError::Overflow)
}

/// Scales decimal coordinates to integers and checks general position.
///
/// With `tie_break`, shared coordinates are not an error: every coordinate
/// is replaced by its rank, ties ordered by input position.
pub fn normalize_scene(raw: &RawScene, tie_break: bool) -> Result<Normalized, GeomError> {
    let mut coords = Vec::new();
    for (x, y) in raw
        .points
        .iter()
        .map(|p| (&p.x, &p.y))
        .chain(raw.witnesses.iter().map(|w| (&w.x, &w.y)))
    {
        coords.push((parse_decimal(x)?, parse_decimal(y)?));
    }
    let base = coords
        .iter()
        .flat_map(|&((mx, ex), (my, ey))| [(mx, ex), (my, ey)])
        .filter(|&(m, _)| m != 0)
        .map(|(_, e)| e)
        .min()
        .unwrap_or(0)
        .min(0);
    let mut ints = Vec::with_capacity(coords.len());
    for &((mx, ex), (my, ey)) in &coords {
        let x = if mx == 0 { 0 } else { scaled(mx, ex, base)? };
        let y = if my == 0 { 0 } else { scaled(my, ey, base)? };
        ints.push((x, y));
    }
    if tie_break {
        let xr = ranks(ints.iter().map(|c| c.0));
        let yr = ranks(ints.iter().map(|c| c.1));
        for (i, c) in ints.iter_mut().enumerate() {
            *c = (xr[i] as i64, yr[i] as i64);
        }
    }

    let mut scene = Scene::default();
    let np = raw.points.len();
    for (i, p) in raw.points.iter().enumerate() {
        scene
            .points
            .push(PlanePoint::new(p.id.clone(), ints[i].0, ints[i].1));
    }
    for (i, w) in raw.witnesses.iter().enumerate() {
        let (x, y) = ints[np + i];
        let pt = PlanePoint::new(w.id.clone(), x, y);
        match parse_sign(w.sign.as_deref())? {
            Sign::Positive => scene.pos_witnesses.push(pt),
            Sign::Negative => scene.neg_witnesses.push(pt),
        }
    }
    scene.validate()?;

    let order = |key: fn(&PlanePoint) -> i64| {
        let mut v: Vec<&PlanePoint> = scene.elements().collect();
        v.sort_by_key(|p| key(p));
        v.into_iter().map(|p| p.id.clone()).collect::<Vec<_>>()
    };
    let x_order = order(|p| p.x);
    let y_order = order(|p| p.y);
    Ok(Normalized {
        scene,
        scale_exponent: (-base) as u32,
        x_order,
        y_order,
    })
}

fn parse_sign(s: Option<&str>) -> Result<Sign, GeomError> {
    match s {
        None | Some("+") => Ok(Sign::Positive),
        Some("-") => Ok(Sign::Negative),
        Some(other) => Err(GeomError::InvalidSign(other.to_string())),
    }
}

/// Parses scene JSON and normalizes it without tie-breaking.
pub fn scene_from_json(text: &str) -> Result<Scene, SceneIoError> {
    let raw: RawScene = serde_json::from_str(text)?;
    Ok(normalize_scene(&raw, false)?.scene)
}

pub fn scene_to_json(scene: &Scene) -> String {
    serde_json::to_string_pretty(&RawScene::from_scene(scene)).expect("scene serializes")
}

#[derive(Debug, thiserror::Error)]
pub enum SceneIoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geom(#[from] GeomError),
}
