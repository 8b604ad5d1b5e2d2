use std::f64::consts::PI;

use betahull::fitting::{fit_fixed, fit_sweep, fitting_distance};
use betahull::io::{parse_points, write_points};
use betahull::objectives::maximize_area;
use betahull::oracle::{exhaustive_fit, free_perimeter, gen_random, grid_optimize, naive_staircase, GridTarget};
use betahull::sweep::SweepState;
use betahull::{area_of, hull_fixed, perimeter_of, shear, Angle, Point, StaircaseKind};
use proptest::prelude::*;

const KINDS: [StaircaseKind; 4] = [StaircaseKind::TR, StaircaseKind::TL, StaircaseKind::BR, StaircaseKind::BL];

fn angle() -> impl Strategy<Value = f64> {
    0.01..PI - 0.01
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_matches_naive(n in 1usize..40, seed in any::<u64>(), b in angle()) {
        let p = gen_random(n, seed);
        let beta = Angle::new(b).unwrap();
        let snap = hull_fixed(&p, beta).unwrap();
        for k in KINDS {
            prop_assert_eq!(snap.staircase(k), &naive_staircase(&p, beta, k).unwrap());
        }
    }

    #[test]
    fn free_perimeter_agrees(n in 1usize..30, seed in any::<u64>(), b in angle()) {
        let p = gen_random(n, seed);
        let beta = Angle::new(b).unwrap();
        let got = perimeter_of(&hull_fixed(&p, beta).unwrap(), false);
        let want = free_perimeter(&p, beta).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()), "{} vs {}", got, want);
    }

    #[test]
    fn area_is_shear_invariant(n in 1usize..30, seed in any::<u64>(), b in angle()) {
        let p = gen_random(n, seed);
        let beta = Angle::new(b).unwrap();
        let q: Vec<Point> = p.iter().map(|&x| {
            let s = shear(beta, x);
            Point::new(s.u, s.v)
        }).collect();
        let a = area_of(&hull_fixed(&p, beta).unwrap());
        let c = area_of(&hull_fixed(&q, Angle::new(PI / 2.0).unwrap()).unwrap());
        prop_assert!((a - c).abs() <= 1e-9 * (1.0 + a.abs()), "{} vs {}", a, c);
    }

    #[test]
    fn points_round_trip(n in 1usize..50, seed in any::<u64>()) {
        let p = gen_random(n, seed);
        prop_assert_eq!(parse_points(&write_points(&p)).unwrap(), p);
    }

    #[test]
    fn fixed_fit_is_exhaustive(n in 1usize..14, seed in any::<u64>(), b in angle()) {
        let p = gen_random(n, seed);
        let beta = Angle::new(b).unwrap();
        let fit = fit_fixed(&p, beta).unwrap();
        prop_assert_eq!(fit.tolerance, exhaustive_fit(&p, beta).unwrap());
        for &q in &p {
            prop_assert!(fitting_distance(&fit.chain, q) <= fit.tolerance * (1.0 + 1e-9) + 1e-12);
        }
    }
}

#[test]
fn sweep_snapshots_match_recompute() {
    for seed in 0..20 {
        let p = gen_random(24, 900 + seed);
        let mut st = SweepState::new(&p).unwrap();
        while !st.is_done() {
            st.step_group().unwrap();
            let (lo, hi) = st.interval();
            if hi - lo < 1e-9 {
                continue;
            }
            let fresh = hull_fixed(&p, st.midpoint()).unwrap();
            assert!(st.snapshot().same_structure(&fresh), "seed {seed} at {}", st.midpoint().radians());
        }
    }
}

#[test]
fn sweep_fit_beats_grid() {
    for seed in 0..10 {
        let p = gen_random(12, 700 + seed);
        let best = fit_sweep(&p).unwrap();
        let (_, grid) = grid_optimize(&p, GridTarget::Fit, 500).unwrap();
        assert!(best.tolerance <= grid + 1e-9, "seed {seed}: {} > {grid}", best.tolerance);
    }
}

#[test]
fn area_optimum_beats_grid() {
    for seed in 0..10 {
        let p = gen_random(16, 800 + seed);
        let best = maximize_area(&p).unwrap();
        let (_, grid) = grid_optimize(&p, GridTarget::Area, 2000).unwrap();
        assert!(best.best_value >= grid - 1e-9, "seed {seed}: {} < {grid}", best.best_value);
    }
}
