//! Seeded random rational step functions, used by property tests and the
//! numeric verification runs.  All sampling is deterministic in the seed.

use crate::scalar::{rat, Rat, Scalar};
use crate::stepfn::StepFunction;
use num_bigint::BigInt;
use rand::Rng;

/// A random rational with small numerator and denominator; zero allowed.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))
}

pub fn random_scalar(rng: &mut impl Rng, complex: bool) -> Scalar {
    if complex {
        Scalar::from_rat_pair(random_rat(rng), random_rat(rng))
    } else {
        Scalar::from_rat(random_rat(rng))
    }
}

/// A nonzero step function on `[lo, hi)` with values on a uniform grid of
/// `slots` cells.  Roughly half the cells are left empty.
pub fn random_step(
    rng: &mut impl Rng,
    lo: &Rat,
    hi: &Rat,
    slots: u32,
    complex: bool,
) -> StepFunction {
    assert!(slots > 0 && lo < hi);
    let width = (hi - lo) / Rat::from_integer(BigInt::from(slots));
    loop {
        let mut pieces = Vec::new();
        for i in 0..slots {
            if rng.gen_bool(0.5) {
                continue;
            }
            let a = lo + &width * Rat::from_integer(BigInt::from(i));
            let v = random_scalar(rng, complex);
            pieces.push((a.clone(), a + &width, v));
        }
        let f = StepFunction::make(pieces).expect("grid pieces are disjoint");
        if !f.is_zero() {
            return f;
        }
    }
}

/// A nonzero step function supported inside the union of intervals given by
/// a 0/1 indicator, with `slots` grid cells per interval.
pub fn random_step_on(
    rng: &mut impl Rng,
    support: &StepFunction,
    slots: u32,
    complex: bool,
) -> StepFunction {
    assert!(!support.is_zero(), "empty support");
    loop {
        let mut f = StepFunction::zero();
        for p in support.pieces() {
            if rng.gen_bool(0.3) {
                continue;
            }
            f = f.add(&random_step(rng, &p.lo, &p.hi, slots, complex));
        }
        if !f.is_zero() {
            return f;
        }
    }
}
