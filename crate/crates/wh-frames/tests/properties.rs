//! Randomized invariants over the exact step-function algebra and the
//! frame criteria.  Strategies stay on small rationals so every case runs
//! in exact arithmetic.

use num_traits::One;
use proptest::prelude::*;
use wh_frames::conditions::{cc_bounds, FrameStatus};
use wh_frames::frameset::{circle_range, is_frame_set, ExponentSet};
use wh_frames::gabor::{energy_ratio, GaborSystem};
use wh_frames::scalar::{rat, rint, Rat, Scalar};
use wh_frames::stepfn::StepFunction;
use wh_frames::witnesses::riesz_witness;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (small_rat(), small_rat()).prop_map(|(re, im)| Scalar::from_rat_pair(re, im))
}

/// Step functions on a uniform grid of up to 8 cells of width 1/den,
/// starting at a random integer offset.
fn step_fn() -> impl Strategy<Value = StepFunction> {
    (
        -4i64..=4,
        1i64..=3,
        prop::collection::vec(prop::option::of(small_scalar()), 1..=8),
    )
        .prop_map(|(off, den, cells)| {
            let pieces = cells
                .into_iter()
                .enumerate()
                .filter_map(|(i, v)| {
                    let i = i as i64;
                    v.map(|v| (rat(off + i, den), rat(off + i + 1, den), v))
                })
                .collect();
            StepFunction::make(pieces).unwrap()
        })
}

fn sample_points(fs: &[&StepFunction]) -> Vec<Rat> {
    let mut pts = Vec::new();
    for f in fs {
        for p in f.pieces() {
            pts.push(p.lo.clone());
            // interior point of the piece
            pts.push((&p.lo + &p.hi) / rint(2));
            pts.push(p.hi.clone());
        }
    }
    pts.push(rint(-100));
    pts.push(rint(100));
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pointwise_algebra(f in step_fn(), g in step_fn(), c in small_scalar()) {
        for t in sample_points(&[&f, &g]) {
            let (fv, gv) = (f.eval(&t), g.eval(&t));
            prop_assert_eq!(f.add(&g).eval(&t), &fv + &gv);
            prop_assert_eq!(f.sub(&g).eval(&t), &fv - &gv);
            prop_assert_eq!(f.mul(&g).eval(&t), &fv * &gv);
            prop_assert_eq!(f.scale(&c).eval(&t), &fv * &c);
            prop_assert_eq!(f.conj().eval(&t), fv.conj());
            prop_assert_eq!(f.abs_sq_fn().eval(&t), fv.abs_sq());
        }
    }

    #[test]
    fn canonical_form_is_stable(f in step_fn(), g in step_fn()) {
        // Rebuilding from the canonical pieces is the identity, and the
        // algebra is commutative where it should be.
        let back = StepFunction::make(
            f.pieces()
                .iter()
                .map(|p| (p.lo.clone(), p.hi.clone(), p.value.clone()))
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.sub(&f), StepFunction::zero());
    }

    #[test]
    fn translation_respects_norm_and_integral(f in step_fn(), s in small_rat()) {
        let tf = f.translate(&s);
        prop_assert_eq!(tf.norm_sq(), f.norm_sq());
        prop_assert_eq!(tf.integral(), f.integral());
        for t in sample_points(&[&f]) {
            prop_assert_eq!(tf.eval(&(&t + &s)), f.eval(&t));
        }
    }

    #[test]
    fn cc_frame_verdict_is_sound(
        g in step_fn(),
        f in step_fn(),
        a_num in 1i64..=3,
        b_num in 1i64..=2,
    ) {
        prop_assume!(!g.is_zero());
        prop_assume!(!f.is_zero());
        let sys = GaborSystem::new(g, rat(a_num, 2), rat(b_num, 1)).unwrap();
        let report = cc_bounds(&sys).unwrap();
        if report.status == FrameStatus::Frame {
            let ratio = energy_ratio(&f, &sys).unwrap();
            let lo = report.frame_lower.to_c64().re;
            let hi = report.frame_upper.to_c64().re;
            let r = ratio.to_c64().re;
            prop_assert!(r >= lo - 1e-9 && r <= hi + 1e-9,
                "ratio {r} outside certified bounds [{lo}, {hi}]");
        }
    }

    #[test]
    fn riesz_witness_norm_is_two(n in 2i64..=8, k in 1i64..=40) {
        let f = riesz_witness(n, k).unwrap();
        prop_assert_eq!(f.norm_sq(), Scalar::from_int(2));
    }

    #[test]
    fn frame_set_is_shift_invariant(
        mut exps in prop::collection::btree_set(0i64..=6, 1..=4),
        shift in -20i64..=20,
    ) {
        let base: Vec<i64> = exps.iter().copied().collect();
        exps.clear();
        let shifted: Vec<i64> = base.iter().map(|e| e + shift).collect();
        let e0 = ExponentSet::new(base).unwrap();
        let e1 = ExponentSet::new(shifted).unwrap();
        let v0 = is_frame_set(&e0, 1e-7).unwrap();
        let v1 = is_frame_set(&e1, 1e-7).unwrap();
        prop_assert_eq!(v0.status, v1.status);
        if v0.status == FrameStatus::Frame {
            let r0 = circle_range(&e0, 1e-7).unwrap();
            let r1 = circle_range(&e1, 1e-7).unwrap();
            prop_assert!((r0.min_enclosure.0 - r1.min_enclosure.0).abs() <= 1e-6);
            prop_assert!((r0.max_enclosure.1 - r1.max_enclosure.1).abs() <= 1e-6);
        }
    }

    #[test]
    fn energy_scales_quadratically(f in step_fn(), c in small_scalar()) {
        prop_assume!(!f.is_zero());
        let sys = GaborSystem::new(
            StepFunction::indicator(rint(0), rint(2)).unwrap(),
            Rat::one(),
            Rat::one(),
        )
        .unwrap();
        let e1 = wh_frames::gabor::frame_energy(&f, &sys).unwrap();
        let e2 = wh_frames::gabor::frame_energy(&f.scale(&c), &sys).unwrap();
        prop_assert_eq!(e2, &c.abs_sq() * &e1);
    }
}
