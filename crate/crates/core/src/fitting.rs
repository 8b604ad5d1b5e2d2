//! Min-max fitting of a (2,β)-chain: a horizontal half-line, a link of slope
//! tan β, and another horizontal half-line, with distances measured along
//! the β-direction.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::geom::{
    require_general_position, shear, slope_angle, unshear, Angle, Point, SkewPoint,
    ViolationReport,
};
use crate::hull::StaircaseKind;
use crate::sweep::SweepState;

/// Above this size `fit_report` skips the all-pairs cross-check.
pub const PAIRWISE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chain2 {
    pub beta: Angle,
    pub y_left: f64,
    pub y_right: f64,
    pub joint_left: Point,
    pub joint_right: Point,
}

impl Chain2 {
    /// Chain whose middle link lies on `u = joint_u` in the skewed frame.
    pub fn new(beta: Angle, y_left: f64, y_right: f64, joint_u: f64) -> Self {
        Chain2 {
            beta,
            y_left,
            y_right,
            joint_left: unshear(beta, SkewPoint { u: joint_u, v: y_left }),
            joint_right: unshear(beta, SkewPoint { u: joint_u, v: y_right }),
        }
    }

    pub fn joint_u(&self) -> f64 {
        shear(self.beta, self.joint_left).u
    }
}

/// Distance from `p` to the nearest point where the β-line through `p`
/// meets the chain.
///
/// A point within rounding of the link's own line counts as meeting both
/// levels and the link.
pub fn fitting_distance(chain: &Chain2, p: Point) -> f64 {
    let s = shear(chain.beta, p);
    let uj = chain.joint_u();
    let eps = 1e-12 * (1.0 + s.u.abs().max(uj.abs()));
    let mut d = f64::INFINITY;
    if s.u <= uj + eps {
        d = d.min((s.v - chain.y_left).abs());
    }
    if s.u >= uj - eps {
        d = d.min((s.v - chain.y_right).abs());
    }
    if (s.u - uj).abs() <= eps {
        let (lo, hi) = (chain.y_left.min(chain.y_right), chain.y_left.max(chain.y_right));
        d = d.min((lo - s.v).max(s.v - hi).max(0.0));
    }
    d * chain.beta.csc()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub beta: Angle,
    pub chain: Chain2,
    pub tolerance: f64,
    /// Indices of the points fitted by the left half-line, in u order.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Serialize for FitResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Split<'a> {
            left: &'a [usize],
            right: &'a [usize],
        }
        let mut st = s.serialize_struct("FitResult", 7)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("mu", &self.tolerance)?;
        st.serialize_field("y_left", &self.chain.y_left)?;
        st.serialize_field("y_right", &self.chain.y_right)?;
        st.serialize_field("joint_left", &self.chain.joint_left)?;
        st.serialize_field("joint_right", &self.chain.joint_right)?;
        st.serialize_field("split_indices", &Split { left: &self.left, right: &self.right })?;
        st.end()
    }
}

/// Side tolerance for a group with heights in `[lo, hi]`.
#[inline]
pub fn side_tolerance(lo: f64, hi: f64, beta: Angle) -> f64 {
    (hi - lo) / (2.0 * beta.radians().sin())
}

/// Indices sorted by `u` at `beta`, ties by height.
fn u_order(points: &[Point], idx: impl Iterator<Item = usize>, beta: Angle) -> Vec<usize> {
    let cot = beta.cot();
    let mut keyed: Vec<(f64, f64, usize)> = idx
        .map(|i| (points[i].x - points[i].y * cot, points[i].y, i))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    keyed.into_iter().map(|t| t.2).collect()
}

/// Best prefix length of `order` and the larger of its two height ranges.
fn best_split(points: &[Point], order: &[usize]) -> (usize, f64) {
    let n = order.len();
    let mut suffix = vec![(f64::INFINITY, f64::NEG_INFINITY); n + 1];
    for j in (0..n).rev() {
        let y = points[order[j]].y;
        suffix[j] = (suffix[j + 1].0.min(y), suffix[j + 1].1.max(y));
    }
    let range = |(lo, hi): (f64, f64)| if lo <= hi { hi - lo } else { 0.0 };
    let mut prefix = (f64::INFINITY, f64::NEG_INFINITY);
    let mut best = (0, range(suffix[0]));
    for k in 1..=n {
        let y = points[order[k - 1]].y;
        prefix = (prefix.0.min(y), prefix.1.max(y));
        let c = range(prefix).max(range(suffix[k]));
        if c < best.1 {
            best = (k, c);
        }
    }
    best
}

fn midrange(points: &[Point], idx: &[usize]) -> Option<(f64, f64)> {
    let lo = idx.iter().map(|&i| points[i].y).fold(f64::INFINITY, f64::min);
    let hi = idx.iter().map(|&i| points[i].y).fold(f64::NEG_INFINITY, f64::max);
    (!idx.is_empty()).then_some((lo, hi))
}

/// Chain for the first `k` points of `order` on the left, evaluated at `beta`.
fn build(points: &[Point], order: &[usize], k: usize, beta: Angle) -> FitResult {
    let (left, right) = order.split_at(k);
    let l = midrange(points, left);
    let r = midrange(points, right);
    let level = |s: Option<(f64, f64)>| s.map(|(lo, hi)| 0.5 * (lo + hi));
    let y_left = level(l).or(level(r)).unwrap_or(0.0);
    let y_right = level(r).unwrap_or(y_left);
    let u = |i: usize| shear(beta, points[i]).u;
    let joint_u = match (left.last(), right.first()) {
        (Some(&a), Some(&b)) => 0.5 * (u(a) + u(b)),
        (Some(&a), None) => u(a),
        (None, Some(&b)) => u(b),
        (None, None) => 0.0,
    };
    let chain = Chain2::new(beta, y_left, y_right, joint_u);
    let side = [l, r]
        .iter()
        .flatten()
        .map(|&(lo, hi)| side_tolerance(lo, hi, beta))
        .fold(0.0, f64::max);
    let exact = points.iter().map(|&p| fitting_distance(&chain, p)).fold(0.0, f64::max);
    let tolerance = if (exact - side).abs() <= 1e-12 * (1.0 + side) { side } else { exact };
    FitResult {
        beta,
        chain,
        tolerance,
        left: left.to_vec(),
        right: right.to_vec(),
    }
}

fn check_input(points: &[Point]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let non_finite: Vec<usize> = (0..points.len()).filter(|&i| !points[i].is_finite()).collect();
    if !non_finite.is_empty() {
        return Err(Error::Degenerate(ViolationReport {
            non_finite,
            ..Default::default()
        }));
    }
    Ok(())
}

/// Best chain for a fixed `beta` over all splits by a β-line.
pub fn fit_fixed(points: &[Point], beta: Angle) -> Result<FitResult> {
    check_input(points)?;
    let order = u_order(points, 0..points.len(), beta);
    let (k, _) = best_split(points, &order);
    Ok(build(points, &order, k, beta))
}

/// The u order is fixed on `(lo, hi)`; the best split's ranges are then
/// constant and μ goes like csc β, so only the ends (and π/2) can win.
#[derive(Debug, Clone, Copy)]
struct Piece {
    lo: f64,
    hi: f64,
    range: f64,
}

impl Piece {
    /// Best angle in the closure of the piece, excluding 0 and π, and its μ.
    fn best(&self) -> Option<(f64, f64)> {
        let cands = [self.lo, self.hi, FRAC_PI_2];
        cands
            .into_iter()
            .filter(|&b| b > 0.0 && b < PI && b >= self.lo && b <= self.hi)
            .map(|b| (b, 0.5 * self.range / b.sin()))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)))
    }
}

/// Splits `(lo, hi)` at the given angles and scores each piece by the u
/// order of `idx` at its midpoint.
fn pieces(points: &[Point], idx: &[usize], lo: f64, hi: f64, mut cuts: Vec<f64>, out: &mut Vec<Piece>) {
    cuts.retain(|&a| a > lo && a < hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut a = lo;
    for b in cuts.into_iter().chain([hi]) {
        let mid = Angle::clamped(0.5 * (a + b));
        let order = u_order(points, idx.iter().copied(), mid);
        let (_, range) = best_split(points, &order);
        out.push(Piece { lo: a, hi: b, range });
        a = b;
    }
}

fn pair_angles(points: &[Point], idx: &[usize]) -> Vec<f64> {
    let mut v = Vec::with_capacity(idx.len() * idx.len() / 2);
    for (j, &a) in idx.iter().enumerate() {
        for &b in &idx[j + 1..] {
            if let Ok(t) = slope_angle(points[a], points[b]) {
                v.push(t.radians());
            }
        }
    }
    v
}

/// Pieces from every pairwise slope angle.
fn pieces_pairwise(points: &[Point]) -> Vec<Piece> {
    let idx: Vec<usize> = (0..points.len()).collect();
    let mut cuts = pair_angles(points, &idx);
    cuts.push(FRAC_PI_2);
    let mut out = Vec::new();
    pieces(points, &idx, 0.0, PI, cuts, &mut out);
    out
}

/// Pieces from the hull sweep: each event interval is cut further where two
/// current staircase vertices swap u order.
fn pieces_sweep(points: &[Point]) -> Result<Vec<Piece>> {
    let mut st = SweepState::new(points)?;
    st.set_verification(false);
    let mut out = Vec::new();
    loop {
        let (lo, hi) = st.interval();
        if lo < hi {
            let mut idx: Vec<usize> = StaircaseKind::ALL
                .iter()
                .flat_map(|&k| st.staircase_vertices(k))
                .collect();
            idx.sort_unstable();
            idx.dedup();
            let mut cuts = pair_angles(points, &idx);
            cuts.push(FRAC_PI_2);
            pieces(points, &idx, lo, hi, cuts, &mut out);
        }
        if st.is_done() {
            break;
        }
        st.step_group()?;
    }
    Ok(out)
}

/// Smallest μ over event angles (one-sided at each) and π/2, ignoring u
/// swaps between events.
fn events_only(points: &[Point]) -> Result<f64> {
    let mut st = SweepState::new(points)?;
    st.set_verification(false);
    let mut best = f64::INFINITY;
    loop {
        let (lo, hi) = st.interval();
        if lo < hi {
            let idx: Vec<usize> = (0..points.len()).collect();
            let nudge = (0.25 * (hi - lo)).min(1e-9);
            for (at, inside) in [(lo, lo + nudge), (hi, hi - nudge), (FRAC_PI_2, FRAC_PI_2)] {
                if at > 0.0 && at < PI && at >= lo && at <= hi {
                    let order = u_order(points, idx.iter().copied(), Angle::clamped(inside));
                    let (_, range) = best_split(points, &order);
                    best = best.min(0.5 * range / at.sin());
                }
            }
        }
        if st.is_done() {
            break;
        }
        st.step_group()?;
    }
    Ok(best)
}

fn finish(points: &[Point], pieces: &[Piece]) -> FitResult {
    let (piece, beta) = pieces
        .iter()
        .filter_map(|p| p.best().map(|(b, mu)| (p, b, mu)))
        .min_by(|a, b| a.2.total_cmp(&b.2).then(a.1.total_cmp(&b.1)))
        .map(|(p, b, _)| (*p, b))
        .expect("at least one piece");
    // points off the staircases may swap u order inside the piece, so the
    // order is taken just inside it next to the chosen end
    let nudge = (0.25 * (piece.hi - piece.lo)).min(1e-10);
    let inside = if beta == piece.lo {
        beta + nudge
    } else if beta == piece.hi {
        beta - nudge
    } else {
        beta
    };
    let order = u_order(points, 0..points.len(), Angle::clamped(inside));
    let (k, _) = best_split(points, &order);
    build(points, &order, k, Angle::clamped(beta))
}

/// Minimum of μ over all β in (0, π).
///
/// Sets in general position are swept; others (for instance points lying
/// exactly on a chain's horizontal pieces) fall back to cutting (0, π) at
/// every pairwise slope angle, which is quadratic in the number of angles.
pub fn fit_sweep(points: &[Point]) -> Result<FitResult> {
    check_input(points)?;
    if points.len() == 1 {
        return fit_fixed(points, Angle::RIGHT);
    }
    let pieces = if require_general_position(points).is_ok() {
        pieces_sweep(points)?
    } else {
        pieces_pairwise(points)
    };
    Ok(finish(points, &pieces))
}

/// `fit_sweep` together with the optimum found from hull events alone and,
/// for small sets, from all pairwise slope angles.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FitReport {
    pub best: FitResult,
    /// μ when only event-interval ends (and π/2) are tried.
    pub mu_events_only: Option<f64>,
    pub mu_pairwise: Option<f64>,
    /// True when the event-only optimum is worse than `best`.
    pub discrepancy: bool,
}

pub fn fit_report(points: &[Point]) -> Result<FitReport> {
    let best = fit_sweep(points)?;
    let mu = |ps: &[Piece]| ps.iter().filter_map(Piece::best).map(|b| b.1).fold(f64::INFINITY, f64::min);
    let gp = points.len() > 1 && require_general_position(points).is_ok();
    let mu_events_only = if gp { Some(events_only(points)?) } else { None };
    let mu_pairwise = (points.len() > 1 && points.len() <= PAIRWISE_LIMIT).then(|| mu(&pieces_pairwise(points)));
    let discrepancy = mu_events_only.is_some_and(|m| m > best.tolerance * (1.0 + 1e-12) + 1e-15);
    Ok(FitReport {
        best,
        mu_events_only,
        mu_pairwise,
        discrepancy,
    })
}
