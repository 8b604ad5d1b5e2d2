//! Point sets with known optimization behaviour: two separated local maxima,
//! and sets whose optimum is not at a prescribed angle.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geom::{Angle, Point};

/// How far `p_r` sits below `p_l`; the two would otherwise share a height.
const BASE_DROP: f64 = 0.01;

fn check(beta0: Angle, beta1: Angle) -> Result<(f64, f64)> {
    let (a, b) = (beta0.radians(), beta1.radians());
    if a < b {
        Ok((a, b))
    } else {
        Err(Error::FixtureAngles(a, b))
    }
}

/// Intersection of the line through `p` with angle `a` and the line through
/// `q` with angle `b`.
fn meet(p: Point, a: f64, q: Point, b: f64) -> Point {
    let d0 = Point::new(a.cos(), a.sin());
    let d1 = Point::new(b.cos(), b.sin());
    let w = Point::new(q.x - p.x, q.y - p.y);
    let t = w.cross(d1) / d0.cross(d1);
    Point::new(p.x + t * d0.x, p.y + t * d0.y)
}

/// Four points: the corners of the triangle cut from the x-axis by lines at
/// `beta0` (through `p_l`) and `beta1` (through `p_r`), apex at height 1,
/// plus an interior point. Area peaks when `p_t` aligns with `p_l` and
/// with `p_r`.
pub fn gen_bimodal_area(beta0: Angle, beta1: Angle) -> Result<Vec<Point>> {
    let (a, b) = check(beta0, beta1)?;
    let pl = Point::new(0.0, 0.0);
    let pt = Point::new(1.0 / a.tan(), 1.0);
    let pr = meet(pt, b, Point::new(0.0, -BASE_DROP), 0.0);
    let g = Point::new((pl.x + pr.x + pt.x) / 3.0, (pl.y + pr.y + pt.y) / 3.0);
    let pc = Point::new(g.x + 0.01 * (pt.x - g.x), g.y + 0.01 * (pt.y - g.y));
    Ok(vec![pl, pr, pt, pc])
}

/// `p_l`, `p_r` on a slightly tilted base, `p_t` above where lines at
/// `(beta0 + beta1) / 2` and `beta1` through them meet, `p_b` below on the
/// line through `p_t` at `beta0`.
///
/// The antenna-free perimeter rises towards `beta1` and drops once `p_t`
/// aligns with `p_r`, and it jumps up where `p_b` and `p_t` align and
/// falls after. The first peak needs `beta1 > π/2`; otherwise the mirror
/// image of the set for `(π - beta1, π - beta0)` is used.
pub fn gen_bimodal_perimeter(beta0: Angle, beta1: Angle) -> Result<Vec<Point>> {
    let (a, b) = check(beta0, beta1)?;
    if b > FRAC_PI_2 {
        // the drop bends the profile down for β below about sqrt(2·drop),
        // which must stay clear of beta0
        let pl = Point::new(0.0, 0.0);
        let pr = Point::new(1.0, -BASE_DROP.min(0.05 * a * a));
        let pt = meet(pl, 0.5 * (a + b), pr, b);
        let pb = meet(pt, a, Point::new(0.0, -1.0), 0.0);
        Ok(vec![pl, pr, pt, pb])
    } else {
        let m = gen_bimodal_perimeter(Angle::clamped(PI - b), Angle::clamped(PI - a))?;
        // mirrored, p_l and p_r swap roles
        Ok(vec![m[1], m[0], m[2], m[3]]
            .into_iter()
            .map(|p| Point::new(-p.x, p.y))
            .collect())
    }
}

/// Points on three semiaxes and in the second quadrant of the frame at
/// `beta0`: area is zero up to `beta0` and positive just after it.
pub fn area_witness(beta0: Angle) -> Vec<Point> {
    let cot = beta0.cot();
    [(0.0, 1.0), (0.0, -1.0), (1.0, 0.0), (-1.0, 0.5)]
        .iter()
        .map(|&(u, v)| Point::new(u + v * cot, v))
        .collect()
}

/// The origin and one point in each of the second and fourth quadrants of
/// the frame at `beta0`: the perimeter is zero up to `beta0`.
pub fn perimeter_witness(beta0: Angle) -> Vec<Point> {
    let cot = beta0.cot();
    [(-1.0, 1.0), (0.0, 0.0), (2.0, -1.0)]
        .iter()
        .map(|&(u, v)| Point::new(u + v * cot, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::validate_general_position;
    use crate::hull::{hull_fixed, perimeter_of};
    use crate::oracle::slab_measure;
    use std::f64::consts::FRAC_PI_3;

    fn ang(x: f64) -> Angle {
        Angle::new(x).unwrap()
    }

    fn area(p: &[Point], x: f64) -> f64 {
        slab_measure(p, ang(x)).0
    }

    fn perim(p: &[Point], x: f64) -> f64 {
        perimeter_of(&hull_fixed(p, ang(x)).unwrap(), false)
    }

    /// Angles of the sampled profile's strict local maxima.
    fn local_maxima(f: impl Fn(f64) -> f64, samples: usize) -> Vec<f64> {
        let xs: Vec<f64> = (0..samples).map(|i| PI * (i as f64 + 0.5) / samples as f64).collect();
        let v: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        (1..samples - 1)
            .filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > 1e-12)
            .map(|i| xs[i])
            .collect()
    }

    fn has_near(maxima: &[f64], x: f64) -> bool {
        maxima.iter().any(|m| (m - x).abs() < 1e-3)
    }

    #[test]
    fn bimodal_area_profiles() {
        for (a, b) in [(1.2, 2.0), (FRAC_PI_3, 2.0 * FRAC_PI_3), (0.5, 1.0), (2.2, 2.8)] {
            let p = gen_bimodal_area(ang(a), ang(b)).unwrap();
            assert!(validate_general_position(&p).is_ok());
            let m = local_maxima(|x| area(&p, x), 20000);
            assert!(has_near(&m, a) && has_near(&m, b), "({a}, {b}): {m:?}");
        }
    }

    #[test]
    fn bimodal_perimeter_profiles() {
        for (a, b) in [(FRAC_PI_3, 2.0 * FRAC_PI_3), (1.0, 1.3), (1.9, 2.5), (0.4, 1.5)] {
            let p = gen_bimodal_perimeter(ang(a), ang(b)).unwrap();
            assert!(validate_general_position(&p).is_ok());
            let m = local_maxima(|x| perim(&p, x), 20000);
            assert!(has_near(&m, a) && has_near(&m, b), "({a}, {b}): {m:?}");
        }
    }

    #[test]
    fn bimodal_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 30 {
            let x: f64 = rng.gen_range(0.02..PI - 0.02);
            let y: f64 = rng.gen_range(0.02..PI - 0.02);
            let (a, b) = (x.min(y), x.max(y));
            if b - a < 0.02 {
                continue;
            }
            let p = gen_bimodal_area(ang(a), ang(b)).unwrap();
            let m = local_maxima(|x| area(&p, x), 20000);
            assert!(has_near(&m, a) && has_near(&m, b), "area ({a}, {b}): {m:?}");
            let p = gen_bimodal_perimeter(ang(a), ang(b)).unwrap();
            assert!(validate_general_position(&p).is_ok());
            let m = local_maxima(|x| perim(&p, x), 20000);
            assert!(has_near(&m, a) && has_near(&m, b), "perimeter ({a}, {b}): {m:?}");
            done += 1;
        }
    }

    #[test]
    fn bad_fixture_angles() {
        assert!(gen_bimodal_area(ang(2.0), ang(1.2)).is_err());
        assert!(gen_bimodal_perimeter(ang(1.0), ang(1.0)).is_err());
    }

    #[test]
    fn witnesses() {
        for b0 in [0.3, 1.0, FRAC_PI_2, 2.0, 2.8] {
            let p = area_witness(ang(b0));
            assert!(validate_general_position(&p).is_ok());
            for t in [0.1, 0.5, 0.9, 0.999] {
                assert!(area(&p, b0 * t) < 1e-12, "area before {b0}");
            }
            assert!(area(&p, b0).abs() < 1e-9);
            let after = (1..50).map(|i| area(&p, b0 + (PI - b0) * i as f64 / 50.0));
            assert!(after.fold(0.0, f64::max) > 1e-3, "area after {b0}");

            let p = perimeter_witness(ang(b0));
            assert!(validate_general_position(&p).is_ok());
            for t in [0.1, 0.5, 0.9, 0.999] {
                assert!(perim(&p, b0 * t) < 1e-12, "perimeter before {b0}");
            }
            let after = (1..50).map(|i| perim(&p, b0 + (PI - b0) * i as f64 / 50.0));
            assert!(after.fold(0.0, f64::max) > 1e-3, "perimeter after {b0}");
        }
    }
}
