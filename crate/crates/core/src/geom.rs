//! Points, angles, the shear that turns skewed quadrants into ordinary
//! coordinate dominance, and general-position checks.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angles closer than this are treated as the same event angle.
pub const ANGLE_EPS: f64 = 1e-12;

/// Smallest distance kept between a working angle and 0 or π.
pub const ANGLE_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation angle of the second axis, in radians, strictly inside (0, π).
///
/// Values are clamped to `[ANGLE_CLAMP, π - ANGLE_CLAMP]` so that `cot` and
/// `csc` stay finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const RIGHT: Angle = Angle(PI / 2.0);

    /// Rejects non-finite values and anything outside the open interval (0, π).
    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() || radians <= 0.0 || radians >= PI {
            return Err(Error::InvalidAngle(radians));
        }
        Ok(Self::clamped(radians))
    }

    pub fn clamped(radians: f64) -> Self {
        Angle(radians.clamp(ANGLE_CLAMP, PI - ANGLE_CLAMP))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::new(deg.to_radians())
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn cot(self) -> f64 {
        self.0.cos() / self.0.sin()
    }

    #[inline]
    pub fn csc(self) -> f64 {
        1.0 / self.0.sin()
    }

    /// The angle seen from the mirrored plane `x -> -x`.
    pub fn mirrored(self) -> Self {
        Angle(PI - self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Point expressed in the skewed frame: `u = x - y cot β`, `v = y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewPoint {
    pub u: f64,
    pub v: f64,
}

#[inline]
pub fn shear(beta: Angle, p: Point) -> SkewPoint {
    SkewPoint {
        u: p.x - p.y * beta.cot(),
        v: p.y,
    }
}

#[inline]
pub fn unshear(beta: Angle, s: SkewPoint) -> Point {
    Point {
        x: s.u + s.v * beta.cot(),
        y: s.v,
    }
}

/// Angle in (0, π) of the line through `p` and `q`.
///
/// The difference is always taken from the lower point to the upper one, so
/// the result is bitwise symmetric in its arguments.
pub fn slope_angle(p: Point, q: Point) -> Result<Angle> {
    if p.y == q.y {
        return Err(Error::HorizontalPair(p, q));
    }
    let (lo, hi) = if p.y < q.y { (p, q) } else { (q, p) };
    let a = (hi.y - lo.y).atan2(hi.x - lo.x);
    Ok(Angle::clamped(a))
}

/// Value of a quantity that depends linearly on `cot β`: `k + c·cot β`.
///
/// The skewed abscissa of a point is `x - y·cot β`, so every length or area
/// along the horizontal axis of the skewed frame is of this form.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CotLinear {
    pub k: f64,
    pub c: f64,
}

impl CotLinear {
    #[inline]
    pub fn skew_u(p: Point) -> Self {
        CotLinear { k: p.x, c: -p.y }
    }

    #[inline]
    pub fn eval(self, beta: Angle) -> f64 {
        self.k + self.c * beta.cot()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        CotLinear {
            k: self.k * s,
            c: self.c * s,
        }
    }
}

impl std::ops::Add for CotLinear {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CotLinear {
            k: self.k + o.k,
            c: self.c + o.c,
        }
    }
}

impl std::ops::Sub for CotLinear {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        CotLinear {
            k: self.k - o.k,
            c: self.c - o.c,
        }
    }
}

impl std::ops::AddAssign for CotLinear {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl std::ops::SubAssign for CotLinear {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ViolationReport {
    /// Index pairs sharing a y-coordinate.
    pub horizontal_pairs: Vec<(usize, usize)>,
    /// Index triples (ascending) lying on a common line.
    pub collinear_triples: Vec<(usize, usize, usize)>,
    /// Indices of points with a NaN or infinite coordinate.
    pub non_finite: Vec<usize>,
}

impl ViolationReport {
    pub fn is_ok(&self) -> bool {
        self.horizontal_pairs.is_empty()
            && self.collinear_triples.is_empty()
            && self.non_finite.is_empty()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.non_finite.is_empty() {
            parts.push(format!("non-finite points {:?}", self.non_finite));
        }
        if !self.horizontal_pairs.is_empty() {
            parts.push(format!("horizontal pairs {:?}", self.horizontal_pairs));
        }
        if !self.collinear_triples.is_empty() {
            parts.push(format!("collinear triples {:?}", self.collinear_triples));
        }
        if parts.is_empty() {
            write!(f, "general position")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Sign test for `a, b, c` lying on one line, relative to coordinate magnitude.
pub fn nearly_collinear(a: Point, b: Point, c: Point) -> bool {
    let cr = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let scale = [a.x, a.y, b.x, b.y, c.x, c.y]
        .iter()
        .fold(1.0f64, |m, v| m.max(v.abs()));
    cr.abs() <= 1e-12 * scale * scale
}

/// Indices of points ordered by ascending y (ties by index).
pub fn y_order(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].y.total_cmp(&points[b].y).then(a.cmp(&b)));
    idx
}

/// Horizontal pairs and non-finite points only; O(n log n).
pub fn quick_violations(points: &[Point]) -> ViolationReport {
    let mut rep = ViolationReport {
        non_finite: points
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_finite())
            .map(|(i, _)| i)
            .collect(),
        ..Default::default()
    };
    if !rep.non_finite.is_empty() {
        return rep;
    }
    let order = y_order(points);
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && points[order[end]].y == points[order[start]].y {
            end += 1;
        }
        for a in start..end {
            for b in a + 1..end {
                let (i, j) = (order[a], order[b]);
                rep.horizontal_pairs.push((i.min(j), i.max(j)));
            }
        }
        start = end;
    }
    rep.horizontal_pairs.sort_unstable();
    rep
}

/// Full general-position check: no horizontal pair, no collinear triple.
///
/// Triples are found by sorting, around each point, the directions to every
/// later point; O(n² log n).
pub fn validate_general_position(points: &[Point]) -> ViolationReport {
    let mut rep = quick_violations(points);
    if !rep.non_finite.is_empty() {
        return rep;
    }
    let n = points.len();
    let mut triples = Vec::new();
    let mut dirs: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        for j in i + 1..n {
            let d = Point::new(points[j].x - points[i].x, points[j].y - points[i].y);
            if d.x == 0.0 && d.y == 0.0 {
                // coincident points: every third point is "collinear" with them
                for k in (0..n).filter(|&k| k != i && k != j) {
                    triples.push(sorted3(i, j, k));
                }
                continue;
            }
            let mut a = d.y.atan2(d.x);
            if a < 0.0 {
                a += PI;
            }
            if a >= PI {
                a -= PI;
            }
            dirs.push((a, j));
        }
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let m = dirs.len();
        for s in 0..m {
            // check forward neighbours that are angularly close, including wrap
            for t in 1..m {
                let (a1, j) = dirs[s];
                let (a2, k) = dirs[(s + t) % m];
                let mut gap = a2 - a1;
                if s + t >= m {
                    gap += PI;
                }
                if gap > 1e-6 {
                    break;
                }
                if nearly_collinear(points[i], points[j], points[k]) {
                    triples.push(sorted3(i, j, k));
                }
            }
        }
    }
    triples.sort_unstable();
    triples.dedup();
    rep.collinear_triples = triples;
    rep
}

fn sorted3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Rejects empty and non-finite input, then checks general position.
///
/// Collinear triples are only searched for when `points.len() <=
/// FULL_CHECK_LIMIT`; above that only horizontal pairs are checked.
pub fn require_general_position(points: &[Point]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let rep = if points.len() <= FULL_CHECK_LIMIT {
        validate_general_position(points)
    } else {
        quick_violations(points)
    };
    if rep.is_ok() {
        Ok(())
    } else {
        Err(Error::Degenerate(rep))
    }
}

pub const FULL_CHECK_LIMIT: usize = 2048;

/// Shoelace area (signed, counter-clockwise positive).
pub fn shoelace(poly: &[Point]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * s
}
