//! The O_β-hull at one fixed angle: four staircases of maximal points, the
//! overlap regions between opposite staircases, and the hull's area and
//! perimeter.
//!
//! All staircases list their vertices by ascending y. In the skewed frame
//! (`u = x - y cot β`, `v = y`) that means:
//!
//! | kind | u along the list | maximal quadrant of step `(a, b)` |
//! |------|------------------|-----------------------------------|
//! | TR   | decreasing       | `u > u_b, v > v_a`                |
//! | TL   | increasing       | `u < u_b, v > v_a`                |
//! | BR   | increasing       | `u > u_a, v < v_b`                |
//! | BL   | decreasing       | `u < u_a, v < v_b`                |

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{self, shear, unshear, Angle, Point, SkewPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StaircaseKind {
    TR,
    TL,
    BR,
    BL,
}

impl StaircaseKind {
    pub const ALL: [StaircaseKind; 4] = [Self::TR, Self::TL, Self::BR, Self::BL];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Self {
        match self {
            Self::TR => Self::BL,
            Self::BL => Self::TR,
            Self::TL => Self::BR,
            Self::BR => Self::TL,
        }
    }

    /// Whether the staircase bounds the hull from above.
    pub fn is_top(self) -> bool {
        matches!(self, Self::TR | Self::TL)
    }

    /// Whether the quadrants of this kind open towards increasing u.
    pub fn is_right(self) -> bool {
        matches!(self, Self::TR | Self::BR)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::TR => "tr",
            Self::TL => "tl",
            Self::BR => "br",
            Self::BL => "bl",
        }
    }

    /// Corner of the step from `a` (lower) to `b` (upper), in skewed coordinates.
    #[inline]
    pub fn corner(self, a: SkewPoint, b: SkewPoint) -> SkewPoint {
        if self.is_top() {
            SkewPoint { u: b.u, v: a.v }
        } else {
            SkewPoint { u: a.u, v: b.v }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    TrBl,
    TlBr,
}

impl PairKind {
    pub fn kinds(self) -> (StaircaseKind, StaircaseKind) {
        match self {
            PairKind::TrBl => (StaircaseKind::TR, StaircaseKind::BL),
            PairKind::TlBr => (StaircaseKind::TL, StaircaseKind::BR),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairKind::TrBl => "tr/bl",
            PairKind::TlBr => "tl/br",
        }
    }
}

/// Two consecutive vertices of a staircase, lower one first (point indices).
pub type Edge = (usize, usize);

/// Intersection of two opposite maximal quadrants.
///
/// `first` is the step on the top staircase (TR or TL), `second` the step on
/// the opposite bottom staircase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OverlapRegion {
    pub pair: PairKind,
    pub first: Edge,
    pub second: Edge,
}

impl OverlapRegion {
    /// Skewed-frame rectangle `(u_lo, u_hi, v_lo, v_hi)` at the given angle.
    pub fn skew_rect(&self, points: &[Point], beta: Angle) -> (f64, f64, f64, f64) {
        let s = |i: usize| shear(beta, points[i]);
        let (f0, f1) = (s(self.first.0), s(self.first.1));
        let (s0, s1) = (s(self.second.0), s(self.second.1));
        match self.pair {
            // TR quad u > u(f1), v > v(f0); BL quad u < u(s0), v < v(s1)
            PairKind::TrBl => (f1.u, s0.u, f0.v, s1.v),
            // TL quad u < u(f1), v > v(f0); BR quad u > u(s0), v < v(s1)
            PairKind::TlBr => (s0.u, f1.u, f0.v, s1.v),
        }
    }

    /// Parallelogram corners in the plane, counter-clockwise.
    pub fn corners(&self, points: &[Point], beta: Angle) -> [Point; 4] {
        let (u0, u1, v0, v1) = self.skew_rect(points, beta);
        [
            unshear(beta, SkewPoint { u: u0, v: v0 }),
            unshear(beta, SkewPoint { u: u1, v: v0 }),
            unshear(beta, SkewPoint { u: u1, v: v1 }),
            unshear(beta, SkewPoint { u: u0, v: v1 }),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Staircase {
    pub kind: StaircaseKind,
    /// Point indices by ascending y.
    pub vertices: Vec<usize>,
}

impl Staircase {
    pub fn steps(&self) -> impl DoubleEndedIterator<Item = Edge> + ExactSizeIterator + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn points(&self, points: &[Point]) -> Vec<Point> {
        self.vertices.iter().map(|&i| points[i]).collect()
    }
}

/// A point set sorted once by y so that hulls at many angles are cheap.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Arc<[Point]>,
    order: Vec<usize>,
}

impl PointSet {
    /// Validates general position.
    pub fn new(points: &[Point]) -> Result<Self> {
        geom::require_general_position(points)?;
        Ok(Self::new_unchecked(points))
    }

    /// Rejects only empty input; ties in y are broken by index.
    pub fn new_unchecked(points: &[Point]) -> Self {
        PointSet {
            points: points.into(),
            order: geom::y_order(points),
        }
    }

    pub fn points(&self) -> &Arc<[Point]> {
        &self.points
    }

    pub fn y_order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn staircase(&self, beta: Angle, kind: StaircaseKind) -> Staircase {
        let cot = beta.cot();
        let u = |i: usize| self.points[i].x - self.points[i].y * cot;
        let mut out = Vec::new();
        match kind {
            StaircaseKind::TR | StaircaseKind::TL => {
                let mut best = if kind == StaircaseKind::TR {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                };
                for &i in self.order.iter().rev() {
                    let ui = u(i);
                    let keep = if kind == StaircaseKind::TR { ui > best } else { ui < best };
                    if keep {
                        out.push(i);
                        best = ui;
                    }
                }
                out.reverse();
            }
            StaircaseKind::BR | StaircaseKind::BL => {
                let mut best = if kind == StaircaseKind::BR {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                };
                for &i in &self.order {
                    let ui = u(i);
                    let keep = if kind == StaircaseKind::BR { ui > best } else { ui < best };
                    if keep {
                        out.push(i);
                        best = ui;
                    }
                }
            }
        }
        Staircase {
            kind,
            vertices: out,
        }
    }

    pub fn hull(&self, beta: Angle) -> HullSnapshot {
        let staircases = StaircaseKind::ALL.map(|k| self.staircase(beta, k));
        let mut overlaps = overlaps_between(
            &self.points,
            beta,
            PairKind::TrBl,
            &staircases[StaircaseKind::TR.index()],
            &staircases[StaircaseKind::BL.index()],
        );
        overlaps.extend(overlaps_between(
            &self.points,
            beta,
            PairKind::TlBr,
            &staircases[StaircaseKind::TL.index()],
            &staircases[StaircaseKind::BR.index()],
        ));
        sort_overlaps(&self.points, &mut overlaps);
        HullSnapshot {
            beta,
            points: self.points.clone(),
            staircases,
            overlaps,
        }
    }
}

/// Canonical order of overlap regions: by pair, then by the y of the lower
/// vertex of the top-staircase step.
pub fn sort_overlaps(points: &[Point], overlaps: &mut [OverlapRegion]) {
    overlaps.sort_by(|a, b| {
        a.pair
            .cmp(&b.pair)
            .then(points[a.first.0].y.total_cmp(&points[b.first.0].y))
            .then(a.cmp(b))
    });
}

/// Merge walk over the steps of two opposite staircases.
///
/// Both step lists are ordered by ascending v; for each top step the only
/// candidate partner is the first bottom step whose upper v clears the top
/// step's lower v.
fn overlaps_between(
    points: &[Point],
    beta: Angle,
    pair: PairKind,
    top: &Staircase,
    bottom: &Staircase,
) -> Vec<OverlapRegion> {
    let s = |i: usize| shear(beta, points[i]);
    let bottom_steps: Vec<Edge> = bottom.steps().collect();
    let mut out = Vec::new();
    let mut k = 0;
    for (a, b) in top.steps() {
        let lo_v = points[a].y;
        while k < bottom_steps.len() && points[bottom_steps[k].1].y <= lo_v {
            k += 1;
        }
        if k == bottom_steps.len() {
            break;
        }
        let (c, _) = bottom_steps[k];
        let overlap = match pair {
            // TR quad u > u_b ; BL quad u < u_c
            PairKind::TrBl => s(b).u < s(c).u,
            // TL quad u < u_b ; BR quad u > u_c
            PairKind::TlBr => s(c).u < s(b).u,
        };
        if overlap {
            out.push(OverlapRegion {
                pair,
                first: (a, b),
                second: bottom_steps[k],
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullSnapshot {
    pub beta: Angle,
    #[serde(skip)]
    pub points: Arc<[Point]>,
    /// Indexed by `StaircaseKind::index`.
    pub staircases: [Staircase; 4],
    pub overlaps: Vec<OverlapRegion>,
}

impl HullSnapshot {
    pub fn staircase(&self, kind: StaircaseKind) -> &Staircase {
        &self.staircases[kind.index()]
    }

    /// Same combinatorial structure, ignoring the angle.
    pub fn same_structure(&self, other: &HullSnapshot) -> bool {
        self.staircases == other.staircases && self.overlaps == other.overlaps
    }

    /// Union of staircase vertices, sorted.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .staircases
            .iter()
            .flat_map(|s| s.vertices.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Steps in counter-clockwise traversal order, as `(from, to, kind)`.
    ///
    /// BR and TR are walked upwards, TL and BL downwards.
    pub fn traversal_steps(&self) -> Vec<(usize, usize, StaircaseKind)> {
        let mut out = Vec::new();
        for kind in [StaircaseKind::BR, StaircaseKind::TR] {
            out.extend(self.staircase(kind).steps().map(|(a, b)| (a, b, kind)));
        }
        for kind in [StaircaseKind::TL, StaircaseKind::BL] {
            out.extend(self.staircase(kind).steps().rev().map(|(a, b)| (b, a, kind)));
        }
        out
    }

    /// Vertices of the polygon joining consecutive staircase vertices, in
    /// counter-clockwise order.
    pub fn polygon(&self) -> Vec<Point> {
        let mut loop_idx: Vec<usize> = Vec::new();
        for (a, _, _) in self.traversal_steps() {
            loop_idx.push(a);
        }
        loop_idx.iter().map(|&i| self.points[i]).collect()
    }

    /// Step corner in the plane for a step given by its lower and upper vertex.
    pub fn step_corner(&self, kind: StaircaseKind, lower: usize, upper: usize) -> Point {
        let a = shear(self.beta, self.points[lower]);
        let b = shear(self.beta, self.points[upper]);
        unshear(self.beta, kind.corner(a, b))
    }

    fn bbox_area(&self) -> f64 {
        let (mut x0, mut x1, mut y0, mut y1) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in self.points.iter() {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        (x1 - x0) * (y1 - y0)
    }

    /// Antenna segments: at each extreme point, the part shared by the two
    /// semisteps that leave it in the same direction. Returned as
    /// `(extreme point, length)`; at most four entries.
    pub fn antennas(&self) -> Vec<(usize, f64)> {
        use StaircaseKind::*;
        let st = |k: StaircaseKind| &self.staircase(k).vertices;
        let pt = |i: usize| self.points[i];
        let mut out = Vec::new();
        let mut push = |p: usize, a: Option<f64>, b: Option<f64>| {
            if let (Some(a), Some(b)) = (a, b) {
                out.push((p, a.min(b)));
            }
        };
        // first / last semistep lengths in the plane
        let first = |k: StaircaseKind| -> Option<f64> {
            let v = st(k);
            (v.len() >= 2).then(|| pt(v[0]).dist(self.step_corner(k, v[0], v[1])))
        };
        let last = |k: StaircaseKind| -> Option<f64> {
            let v = st(k);
            let n = v.len();
            (n >= 2).then(|| pt(v[n - 1]).dist(self.step_corner(k, v[n - 2], v[n - 1])))
        };
        // rightmost: TR first (horizontal), BR last (horizontal)
        push(st(TR)[0], first(TR), last(BR));
        // topmost: TR last (slanted), TL last (slanted)
        push(*st(TR).last().unwrap(), last(TR), last(TL));
        // leftmost: TL first (horizontal), BL last (horizontal)
        push(st(TL)[0], first(TL), last(BL));
        // bottommost: BL first (slanted), BR first (slanted)
        push(st(BL)[0], first(BL), first(BR));
        out
    }
}

/// Rejects empty input and inputs outside general position.
pub fn hull_fixed(points: &[Point], beta: Angle) -> Result<HullSnapshot> {
    Ok(PointSet::new(points)?.hull(beta))
}

pub fn staircase(points: &[Point], beta: Angle, kind: StaircaseKind) -> Result<Staircase> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    Ok(PointSet::new_unchecked(points).staircase(beta, kind))
}

/// Area terms of the hull: polygon, triangles cut off by the steps, and the
/// overlap parallelograms added back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaTerms {
    pub polygon: f64,
    pub triangles: f64,
    pub overlaps: f64,
}

impl AreaTerms {
    pub fn total(&self) -> f64 {
        self.polygon - self.triangles + self.overlaps
    }
}

pub fn area_terms(snap: &HullSnapshot) -> AreaTerms {
    let polygon = geom::shoelace(&snap.polygon());
    let mut triangles = 0.0;
    for (from, to, kind) in snap.traversal_steps() {
        let (lo, hi) = if snap.points[from].y < snap.points[to].y {
            (from, to)
        } else {
            (to, from)
        };
        let a = snap.points[from];
        let b = snap.points[to];
        let c = snap.step_corner(kind, lo, hi);
        // polygon edge a->b replaced by a->c->b
        triangles += 0.5 * (a.cross(b) - a.cross(c) - c.cross(b));
    }
    let overlaps = snap
        .overlaps
        .iter()
        .map(|r| {
            let (u0, u1, v0, v1) = r.skew_rect(&snap.points, snap.beta);
            (u1 - u0) * (v1 - v0)
        })
        .sum();
    AreaTerms {
        polygon,
        triangles,
        overlaps,
    }
}

/// Hull area; values within `1e-9 ×` bounding-box area of zero are clamped to 0.
pub fn area_of(snap: &HullSnapshot) -> f64 {
    let a = area_terms(snap).total();
    if a.abs() <= 1e-9 * snap.bbox_area() {
        0.0
    } else {
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerimeterTerms {
    pub steps: f64,
    pub overlaps: f64,
    pub antennas: f64,
}

impl PerimeterTerms {
    pub fn total(&self, include_antennas: bool) -> f64 {
        let v = self.steps - self.overlaps;
        if include_antennas {
            v - self.antennas
        } else {
            v
        }
    }
}

pub fn perimeter_terms(snap: &HullSnapshot) -> PerimeterTerms {
    let mut steps = 0.0;
    for kind in StaircaseKind::ALL {
        for (a, b) in snap.staircase(kind).steps() {
            let c = snap.step_corner(kind, a, b);
            steps += snap.points[a].dist(c) + c.dist(snap.points[b]);
        }
    }
    let overlaps = snap
        .overlaps
        .iter()
        .map(|r| {
            let q = r.corners(&snap.points, snap.beta);
            (0..4).map(|i| q[i].dist(q[(i + 1) % 4])).sum::<f64>()
        })
        .sum();
    let antennas = snap.antennas().iter().map(|a| a.1).sum();
    PerimeterTerms {
        steps,
        overlaps,
        antennas,
    }
}

/// Hull perimeter. Without antennas this is the objective that is maximized.
pub fn perimeter_of(snap: &HullSnapshot, include_antennas: bool) -> f64 {
    let v = perimeter_terms(snap).total(include_antennas);
    if v.abs() < 1e-12 {
        0.0
    } else {
        v
    }
}
