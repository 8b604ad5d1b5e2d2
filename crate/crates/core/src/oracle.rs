//! Brute-force references. Nothing here shares dominance code with the hull,
//! sweep or fitting modules; quadrant tests are cross products in the
//! original plane.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{Angle, Point};
use crate::geom::ANGLE_CLAMP;
use crate::hull::{PairKind, Staircase, StaircaseKind};

/// Where `q` lies relative to the open quadrant of `kind` with apex `p`.
///
/// The quadrant is bounded by the horizontal through `p` and the line through
/// `p` with direction `(cos β, sin β)`.
fn in_open_quadrant(kind: StaircaseKind, beta: Angle, p: Point, q: Point) -> bool {
    let (s, c) = beta.radians().sin_cos();
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    // positive when q is right of the slanted line through p
    let side = dx * s - dy * c;
    match kind {
        StaircaseKind::TR => dy > 0.0 && side > 0.0,
        StaircaseKind::TL => dy > 0.0 && side < 0.0,
        StaircaseKind::BR => dy < 0.0 && side > 0.0,
        StaircaseKind::BL => dy < 0.0 && side < 0.0,
    }
}

/// Points whose open quadrant of `kind` holds no other point, by ascending y.
pub fn naive_staircase(points: &[Point], beta: Angle, kind: StaircaseKind) -> Result<Staircase> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let mut vertices: Vec<usize> = (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .enumerate()
                .any(|(j, &q)| j != i && in_open_quadrant(kind, beta, points[i], q))
        })
        .collect();
    vertices.sort_by(|&a, &b| points[a].y.total_cmp(&points[b].y).then(a.cmp(&b)));
    Ok(Staircase { kind, vertices })
}

/// Interior test: every open quadrant with apex `q` contains a point.
pub fn membership(points: &[Point], beta: Angle, q: Point) -> bool {
    StaircaseKind::ALL
        .iter()
        .all(|&k| points.iter().any(|&p| in_open_quadrant(k, beta, q, p)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub resolution: usize,
}

impl GridSpec {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::Parse {
                line: 0,
                msg: format!("grid resolution must be at least 2, got {resolution}"),
            });
        }
        Ok(GridSpec { resolution })
    }

    /// Bounding box of `points` grown by 5% on each side.
    pub fn bounds(points: &[Point]) -> (f64, f64, f64, f64) {
        let (mut x0, mut x1, mut y0, mut y1) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let mx = 0.05 * (x1 - x0).max(1e-12);
        let my = 0.05 * (y1 - y0).max(1e-12);
        (x0 - mx, x1 + mx, y0 - my, y1 + my)
    }

    /// Cell-center sample positions along each axis, offset by an irrational
    /// fraction of a cell so they avoid the boundary of the hull.
    pub fn samples(&self, points: &[Point]) -> (Vec<f64>, Vec<f64>, f64) {
        let (x0, x1, y0, y1) = Self::bounds(points);
        let r = self.resolution;
        let (hx, hy) = ((x1 - x0) / r as f64, (y1 - y0) / r as f64);
        let xs = (0..r).map(|i| x0 + (i as f64 + FRAC_1_SQRT_2) * hx).collect();
        let ys = (0..r).map(|j| y0 + (j as f64 + FRAC_1_SQRT_2) * hy).collect();
        (xs, ys, hx * hy)
    }
}

/// Riemann estimate: cells whose sample point passes [`membership`].
///
/// Rows are independent; each row reduces the point set to four thresholds
/// once and then classifies its cells.
pub fn grid_area(points: &[Point], beta: Angle, grid: GridSpec) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let (xs, ys, cell) = grid.samples(points);
    let (s, c) = beta.radians().sin_cos();
    let count: usize = ys
        .par_iter()
        .map(|&y| {
            // side(q) of a point p relative to the slanted line through q is
            // (p.x - q.x) s - (p.y - y) c; a row's thresholds are in terms of
            // w(p) = p.x s - (p.y - y) c compared against q.x s.
            let (mut above_max, mut above_min) = (f64::NEG_INFINITY, f64::INFINITY);
            let (mut below_max, mut below_min) = (f64::NEG_INFINITY, f64::INFINITY);
            for p in points {
                let w = p.x * s - (p.y - y) * c;
                if p.y > y {
                    above_max = above_max.max(w);
                    above_min = above_min.min(w);
                } else if p.y < y {
                    below_max = below_max.max(w);
                    below_min = below_min.min(w);
                }
            }
            let hi = above_max.min(below_max);
            let lo = above_min.max(below_min);
            xs.iter()
                .filter(|&&x| {
                    let w = x * s;
                    w < hi && w > lo
                })
                .count()
        })
        .sum();
    count as f64 * cell
}

/// For a horizontal line at height `y`, the extreme skewed coordinates of the
/// points on each side: `(max_above, min_above, max_below, min_below)`.
/// Points exactly at `y` count on both sides.
fn side_extremes(points: &[Point], cot: f64, y: f64, closed: bool) -> (f64, f64, f64, f64) {
    let mut r = (f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY);
    for p in points {
        let u = p.x - p.y * cot;
        if p.y > y || (closed && p.y == y) {
            r.0 = r.0.max(u);
            r.1 = r.1.min(u);
        }
        if p.y < y || (closed && p.y == y) {
            r.2 = r.2.max(u);
            r.3 = r.3.min(u);
        }
    }
    r
}

/// Exact hull cross-section `[lo, hi]` in skewed coordinates, either strictly
/// between point heights (`closed = false`) or on the level of a point.
fn section(points: &[Point], cot: f64, y: f64, closed: bool) -> (f64, f64) {
    let (amax, amin, bmax, bmin) = side_extremes(points, cot, y, closed);
    (amin.max(bmin), amax.min(bmax))
}

fn len(iv: (f64, f64)) -> f64 {
    (iv.1 - iv.0).max(0.0)
}

/// Exact area and boundary length by slicing at every point height.
///
/// Between consecutive heights the hull is a band between two lines parallel
/// to the slanted axis; on a height level it is a horizontal interval.
/// Returns `(area, perimeter)`; one-dimensional pieces count once toward the
/// perimeter.
pub fn slab_measure(points: &[Point], beta: Angle) -> (f64, f64) {
    let cot = beta.cot();
    let csc = beta.csc();
    let mut ys: Vec<f64> = points.iter().map(|p| p.y).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let mut area = 0.0;
    let mut perim = 0.0;
    let mut prev_band: Option<(f64, f64)> = None;
    for (i, &y) in ys.iter().enumerate() {
        let level = section(points, cot, y, true);
        let band = ys
            .get(i + 1)
            .map(|&y1| (section(points, cot, 0.5 * (y + y1), false), y1 - y));
        let inner = match (prev_band, band) {
            (Some(a), Some((b, _))) => len((a.0.max(b.0), a.1.min(b.1))),
            _ => 0.0,
        };
        if level.0 <= level.1 {
            perim += len(level) - inner;
        }
        if let Some((b, dy)) = band {
            if b.0 < b.1 {
                area += (b.1 - b.0) * dy;
                perim += 2.0 * dy * csc;
            } else if b.0 == b.1 {
                perim += dy * csc;
            }
            prev_band = Some(b);
        }
    }
    (area, perim)
}

/// Pair kind, then the top and bottom steps as (lower, upper) indices.
pub type NaiveRegion = (PairKind, (usize, usize), (usize, usize));

/// Staircases and overlapping opposite step pairs, by brute force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveStructure {
    /// In `StaircaseKind::ALL` order, vertices by ascending y.
    pub staircases: [Vec<usize>; 4],
    /// `(pair, top step, bottom step)`, sorted.
    pub overlaps: Vec<NaiveRegion>,
}

pub fn naive_structure(points: &[Point], beta: Angle) -> Result<NaiveStructure> {
    let mut staircases: [Vec<usize>; 4] = Default::default();
    for k in StaircaseKind::ALL {
        staircases[k.index()] = naive_staircase(points, beta, k)?.vertices;
    }
    let (s, c) = beta.radians().sin_cos();
    let w = |i: usize| points[i].x * s - points[i].y * c;
    let st = |k: StaircaseKind| &staircases[k.index()];
    let mut overlaps = Vec::new();
    for (pair, sign) in [(PairKind::TrBl, -1.0), (PairKind::TlBr, 1.0)] {
        let (top, bottom) = pair.kinds();
        for a in st(top).windows(2) {
            for b in st(bottom).windows(2) {
                let width = sign * (w(a[1]) - w(b[0]));
                let height = points[b[1]].y - points[a[0]].y;
                if width > 0.0 && height > 0.0 {
                    overlaps.push((pair, (a[0], a[1]), (b[0], b[1])));
                }
            }
        }
    }
    overlaps.sort();
    Ok(NaiveStructure { staircases, overlaps })
}

/// Angles where the brute-force structure changes: `samples` equally spaced
/// angles across (0, π), then bisection to `resolution` inside every gap
/// whose ends differ.
pub fn structure_changes(points: &[Point], samples: usize, resolution: f64) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::InvalidAngle(f64::NAN));
    }
    let (lo, hi) = (ANGLE_CLAMP, PI - ANGLE_CLAMP);
    let step = (hi - lo) / (samples - 1) as f64;
    let at = |b: f64| naive_structure(points, Angle::clamped(b));
    let grid: Vec<(f64, NaiveStructure)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let b = if i + 1 == samples { hi } else { lo + step * i as f64 };
            at(b).map(|st| (b, st))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for w in grid.windows(2) {
        if w[0].1 != w[1].1 {
            bisect_changes(&at, (w[0].0, &w[0].1), (w[1].0, &w[1].1), resolution, &mut out)?;
        }
    }
    Ok(out)
}

fn bisect_changes(
    at: &impl Fn(f64) -> Result<NaiveStructure>,
    lo: (f64, &NaiveStructure),
    hi: (f64, &NaiveStructure),
    resolution: f64,
    out: &mut Vec<f64>,
) -> Result<()> {
    if hi.0 - lo.0 <= resolution {
        out.push(0.5 * (lo.0 + hi.0));
        return Ok(());
    }
    let m = 0.5 * (lo.0 + hi.0);
    let sm = at(m)?;
    if *lo.1 != sm {
        bisect_changes(at, lo, (m, &sm), resolution, out)?;
    }
    if sm != *hi.1 {
        bisect_changes(at, (m, &sm), hi, resolution, out)?;
    }
    Ok(())
}

/// Antenna-free perimeter from naive staircases: every step's two sides,
/// minus the boundary of each parallelogram where opposite maximal quadrants
/// meet.
pub fn free_perimeter(points: &[Point], beta: Angle) -> Result<f64> {
    let (s, c) = beta.radians().sin_cos();
    // skewed abscissa scaled by sin β
    let w = |i: usize| points[i].x * s - points[i].y * c;
    let y = |i: usize| points[i].y;
    let st = naive_structure(points, beta)?;
    let mut total = 0.0;
    for v in &st.staircases {
        for e in v.windows(2) {
            total += ((w(e[1]) - w(e[0])).abs() + y(e[1]) - y(e[0])) / s;
        }
    }
    for (_, a, b) in st.overlaps {
        let width = (w(a.1) - w(b.0)).abs();
        total -= 2.0 * (width + y(b.1) - y(a.0)) / s;
    }
    Ok(total)
}

/// Smallest worst-side tolerance over all splits of the u order, each side
/// fitted at its midrange.
pub fn exhaustive_fit(points: &[Point], beta: Angle) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let (s, c) = beta.radians().sin_cos();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let wa = points[a].x * s - points[a].y * c;
        let wb = points[b].x * s - points[b].y * c;
        wa.total_cmp(&wb).then(points[a].y.total_cmp(&points[b].y))
    });
    let tol = |idx: &[usize]| -> f64 {
        if idx.is_empty() {
            return 0.0;
        }
        let lo = idx.iter().map(|&i| points[i].y).fold(f64::INFINITY, f64::min);
        let hi = idx.iter().map(|&i| points[i].y).fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / (2.0 * s)
    };
    Ok((0..=order.len())
        .map(|k| tol(&order[..k]).max(tol(&order[k..])))
        .fold(f64::INFINITY, f64::min))
}

/// What `grid_optimize` evaluates: area and perimeter are maximized, the
/// fitting tolerance minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridTarget {
    Area,
    Perimeter,
    Fit,
}

impl GridTarget {
    pub fn eval(self, points: &[Point], beta: Angle) -> Result<f64> {
        match self {
            GridTarget::Area => Ok(slab_measure(points, beta).0),
            GridTarget::Perimeter => free_perimeter(points, beta),
            GridTarget::Fit => exhaustive_fit(points, beta),
        }
    }

    fn better(self, a: f64, b: f64) -> bool {
        match self {
            GridTarget::Fit => a < b,
            _ => a > b,
        }
    }
}

/// Distance of the outermost grid angles from 0 and π.
pub const GRID_EDGE: f64 = 1e-6;

/// Best of `samples` equally spaced angles from `GRID_EDGE` to `π - GRID_EDGE`.
pub fn grid_optimize(points: &[Point], target: GridTarget, samples: usize) -> Result<(Angle, f64)> {
    let vals = grid_profile(points, target, samples)?;
    let mut best = vals[0];
    for &v in &vals[1..] {
        if target.better(v.1, best.1) {
            best = v;
        }
    }
    Ok((Angle::clamped(best.0), best.1))
}

fn grid_step(samples: usize) -> f64 {
    (PI - 2.0 * GRID_EDGE) / (samples - 1) as f64
}

fn grid_profile(points: &[Point], target: GridTarget, samples: usize) -> Result<Vec<(f64, f64)>> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    if samples < 2 {
        return Err(Error::InvalidAngle(f64::NAN));
    }
    let step = grid_step(samples);
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let b = GRID_EDGE + step * i as f64;
            target.eval(points, Angle::clamped(b)).map(|v| (b, v))
        })
        .collect()
}

/// `grid_optimize` followed by golden-section search on the two grid cells
/// around each of the `keep` best local optima of the sampled profile.
pub fn grid_optimize_refined(
    points: &[Point],
    target: GridTarget,
    samples: usize,
    keep: usize,
) -> Result<(Angle, f64)> {
    let vals = grid_profile(points, target, samples)?;
    let n = vals.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let l = i.checked_sub(1).map(|j| vals[j].1);
            let r = vals.get(i + 1).map(|v| v.1);
            !l.is_some_and(|l| target.better(l, vals[i].1))
                && !r.is_some_and(|r| target.better(r, vals[i].1))
        })
        .collect();
    peaks.sort_by(|&a, &b| {
        if target.better(vals[a].1, vals[b].1) {
            std::cmp::Ordering::Less
        } else if target.better(vals[b].1, vals[a].1) {
            std::cmp::Ordering::Greater
        } else {
            a.cmp(&b)
        }
    });
    let step = grid_step(samples);
    let mut best = vals[peaks[0]];
    for &i in peaks.iter().take(keep.max(1)) {
        let (lo, hi) = (vals[i].0 - step, vals[i].0 + step);
        let r = golden(points, target, lo.max(GRID_EDGE), hi.min(PI - GRID_EDGE))?;
        for cand in [vals[i], r] {
            if target.better(cand.1, best.1) {
                best = cand;
            }
        }
    }
    Ok((Angle::clamped(best.0), best.1))
}

fn golden(points: &[Point], target: GridTarget, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |x: f64| target.eval(points, Angle::clamped(x));
    let mut best = (a, f(a)?);
    let mut consider = |x: f64, v: f64| {
        if target.better(v, best.1) {
            best = (x, v);
        }
    };
    let fb = f(b)?;
    consider(b, fb);
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > 1e-13 {
        consider(x1, f1);
        consider(x2, f2);
        if target.better(f1, f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(best)
}

/// `n` points uniform in the unit square, resampled until every pair of
/// heights differs by at least 1e-6 and (for `n <= 2048`) no three points are
/// within 1e-9 rad of a common line.
pub fn gen_random(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = (0..n)
        .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    loop {
        let mut bad = close_heights(&pts);
        if bad.is_empty() && n <= crate::geom::FULL_CHECK_LIMIT {
            bad = near_collinear(&pts);
        }
        if bad.is_empty() {
            return pts;
        }
        for i in bad {
            pts[i] = Point::new(rng.gen::<f64>(), rng.gen::<f64>());
        }
    }
}

fn close_heights(pts: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].y.total_cmp(&pts[b].y));
    let mut bad: Vec<usize> = idx
        .windows(2)
        .filter(|w| pts[w[1]].y - pts[w[0]].y < 1e-6)
        .map(|w| w[0].max(w[1]))
        .collect();
    bad.sort_unstable();
    bad.dedup();
    bad
}

fn near_collinear(pts: &[Point]) -> Vec<usize> {
    let n = pts.len();
    let mut bad = Vec::new();
    let mut dirs: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        dirs.extend((0..n).filter(|&j| j != i).map(|j| {
            let a = (pts[j].y - pts[i].y).atan2(pts[j].x - pts[i].x);
            (a.rem_euclid(PI), j)
        }));
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let m = dirs.len();
        for s in 0..m {
            let (a1, j) = dirs[s];
            let (a2, k) = dirs[(s + 1) % m];
            let gap = if s + 1 == m { a2 + PI - a1 } else { a2 - a1 };
            if m > 1 && gap < 1e-9 {
                bad.push(i.max(j).max(k));
            }
        }
    }
    bad.sort_unstable();
    bad.dedup();
    bad
}
