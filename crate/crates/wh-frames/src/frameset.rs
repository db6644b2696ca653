//! Frame-set decisions for unions of integer translates of `[0, 1)`.
//!
//! For exponents `n_1 < ... < n_k` the set `F = U ([0,1) + n_j)` generates a
//! frame at `a = b = 1` exactly when `p(z) = sum_j z^{n_j}` has no zero on
//! the unit circle, and the frame bounds are the squared min/max modulus of
//! `p` there.  The certified-numeric enclosure is the primary path; the exact
//! integer-polynomial route (gcd with the reciprocal, then Sturm counting)
//! is the tie-breaker whenever the numeric enclosure cannot separate the
//! minimum from zero.

use crate::conditions::{FrameStatus, FrameVerdict};
use crate::par;
use crate::poly::IntPoly;
use crate::scalar::{rint, Scalar};
use crate::stepfn::StepFunction;
use crate::{Error, Result};
use num_traits::Zero;

/// Strictly increasing integer exponents (negatives allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    exps: Vec<i64>,
}

impl ExponentSet {
    pub fn new(exps: Vec<i64>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidParameter("exponent set is empty".into()));
        }
        if !exps.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "exponents must be strictly increasing".into(),
            ));
        }
        Ok(ExponentSet { exps })
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    /// Exponents shifted so the least one is 0; the modulus of `p` on the
    /// circle is unchanged since `|z^c| = 1` there.
    pub fn normalized(&self) -> Vec<u32> {
        let n0 = self.exps[0];
        self.exps.iter().map(|&n| (n - n0) as u32).collect()
    }

    /// `chi_F` for `F = U ([0,1) + n_j)`.
    pub fn indicator(&self) -> StepFunction {
        let mut f = StepFunction::zero();
        for &n in &self.exps {
            f = f.add(&StepFunction::indicator(rint(n), rint(n + 1)).unwrap());
        }
        f
    }

    /// `chi_{F_0}` for `F_0 = U (E + n_j)`, `E` inside `[0, 1)`.
    pub fn translated_union(&self, e: &StepFunction) -> StepFunction {
        let mut f = StepFunction::zero();
        for &n in &self.exps {
            f = f.add(&e.translate(&rint(n)));
        }
        f
    }
}

/// How an enclosure was obtained.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub lipschitz: f64,
    pub initial_grid: usize,
    pub refinement_rounds: usize,
    pub zero_certified: bool,
}

/// Certified enclosures of `min` and `max` of `|p(z)|` over `|z| = 1`.
///
/// Each pair `(lo, hi)` satisfies `lo <= true value <= hi`; widths are at
/// most the requested tolerance unless the minimum is certified to be an
/// exact zero (in which case the min enclosure is `(0, 0)`).
#[derive(Clone, Debug)]
pub struct CertifiedRange {
    pub min_enclosure: (f64, f64),
    pub max_enclosure: (f64, f64),
    pub certificate: Certificate,
}

/// `|p(e^{2 pi i theta})|` for normalized exponents.
pub fn modulus_at(exps: &[u32], theta: f64) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for &n in exps {
        let phi = std::f64::consts::TAU * n as f64 * theta;
        re += phi.cos();
        im += phi.sin();
    }
    (re * re + im * im).sqrt()
}

// Padding for f64 evaluation error in the certified bounds.
fn eval_slack(exps: &[u32]) -> f64 {
    1e-12 * exps.len() as f64
}

#[derive(Clone, Copy)]
struct Interval {
    center: f64,
    halfwidth: f64,
    value: f64,
}

/// Branch-and-bound enclosure of the extremum of `q(theta) = |p|` on
/// `[0, 1)`.  For the maximum the objective is negated.
fn extremum(
    exps: &[u32],
    tol: f64,
    maximize: bool,
    exact_zero_probe: Option<&dyn Fn() -> bool>,
) -> ((f64, f64), Certificate) {
    let sign = if maximize { -1.0 } else { 1.0 };
    let q = |theta: f64| sign * modulus_at(exps, theta);
    let lipschitz =
        std::f64::consts::TAU * exps.iter().map(|&n| n as f64).sum::<f64>() + f64::MIN_POSITIVE;
    let slack = eval_slack(exps);

    let initial_grid = 4096usize;
    let h0 = 0.5 / initial_grid as f64;
    let mut active: Vec<Interval> = par::map((0..initial_grid).collect(), |i| {
        let center = (2 * i + 1) as f64 * h0;
        Interval {
            center,
            halfwidth: h0,
            value: q(center),
        }
    });
    let mut best = active.iter().map(|iv| iv.value).fold(f64::INFINITY, f64::min) + slack;
    let mut rounds = 0usize;
    let mut zero_certified = false;
    let mut probed = false;

    loop {
        active.retain(|iv| iv.value - lipschitz * iv.halfwidth - slack < best);
        let global_lb = active
            .iter()
            .map(|iv| iv.value - lipschitz * iv.halfwidth - slack)
            .fold(f64::INFINITY, f64::min);
        let gap_ok = best - global_lb <= tol || active.is_empty();
        let separated = global_lb > 0.0;
        // A minimum that numeric refinement cannot pull away from zero gets
        // the exact decision; positivity certified there lets refinement
        // continue until the lower bound actually clears zero.
        if !maximize && !separated && !probed && (gap_ok || best <= tol.max(1e-6)) {
            probed = true;
            if let Some(probe) = exact_zero_probe {
                if probe() {
                    zero_certified = true;
                    break;
                }
            }
        }
        if gap_ok && (maximize || separated || exact_zero_probe.is_none() || rounds >= 200) {
            break;
        }
        rounds += 1;
        let split: Vec<Interval> = par::map(std::mem::take(&mut active), |iv| {
            let h = iv.halfwidth / 2.0;
            [
                Interval {
                    center: iv.center - h,
                    halfwidth: h,
                    value: q(iv.center - h),
                },
                Interval {
                    center: iv.center + h,
                    halfwidth: h,
                    value: q(iv.center + h),
                },
            ]
        })
        .into_iter()
        .flatten()
        .collect();
        for iv in &split {
            best = best.min(iv.value + slack);
        }
        active = split;
        debug_assert!(rounds < 10_000, "branch-and-bound failed to converge");
    }

    let cert = Certificate {
        lipschitz,
        initial_grid,
        refinement_rounds: rounds,
        zero_certified,
    };
    if zero_certified {
        return ((0.0, 0.0), cert);
    }
    let global_lb = active
        .iter()
        .map(|iv| iv.value - lipschitz * iv.halfwidth - slack)
        .fold(f64::INFINITY, f64::min)
        .min(best);
    if maximize {
        ((-best, -global_lb), cert)
    } else {
        ((global_lb.max(0.0), best), cert)
    }
}

/// Certified enclosures of min and max of `|p(z)|` on the unit circle.
pub fn circle_range(e: &ExponentSet, tol: f64) -> Result<CertifiedRange> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let exps = e.normalized();
    if exps.len() == 1 {
        return Ok(CertifiedRange {
            min_enclosure: (1.0, 1.0),
            max_enclosure: (1.0, 1.0),
            certificate: Certificate {
                lipschitz: 0.0,
                initial_grid: 0,
                refinement_rounds: 0,
                zero_certified: false,
            },
        });
    }
    let probe = || exact_circle_zero(e);
    let (min_enclosure, mut certificate) = extremum(&exps, tol, false, Some(&probe));
    let (max_enclosure, max_cert) = extremum(&exps, tol, true, None);
    certificate.refinement_rounds += max_cert.refinement_rounds;
    Ok(CertifiedRange {
        min_enclosure,
        max_enclosure,
        certificate,
    })
}

/// Exact decision: does `p(z) = sum_j z^{n_j}` vanish somewhere on `|z|=1`?
///
/// Circle zeros of the real-coefficient `p` are common roots of `p` and its
/// reciprocal, so a constant gcd rules them out at once.  Otherwise the gcd
/// is self-inversive and its squared modulus on the circle is a polynomial
/// in `cos(theta)`, whose roots in `[-1, 1]` are counted exactly by Sturm
/// sequences.
pub fn exact_circle_zero(e: &ExponentSet) -> bool {
    let p = IntPoly::from_exponents(&e.normalized());
    // z = 1 gives p(1) = k > 0; z = -1 is checked directly.
    if p.eval_int(&(-1).into()).is_zero() {
        return true;
    }
    let d = p.to_q().gcd(&p.reversed().to_q());
    if d.degree() == 0 {
        return false;
    }
    // Clear denominators to an integer polynomial.
    let mut lcm = num_bigint::BigInt::from(1);
    for c in &d.coeffs {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let di = IntPoly::new(
        d.coeffs
            .iter()
            .map(|c| (c * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    );
    let f = di.circle_modulus_sq_in_cos().to_q().square_free();
    // Endpoints x = +-1 correspond to z = +-1, already decided above.
    f.count_roots_between(&rint(-1), &rint(1)) > 0
}

/// Frame-set verdict with certified bounds.
///
/// The frame bounds of `(chi_F, 1, 1)` are the squared extrema of `|p|` on
/// the circle; the reported pair uses the outer ends of the enclosures so it
/// always brackets the true bounds.
pub fn is_frame_set(e: &ExponentSet, tol: f64) -> Result<FrameVerdict> {
    if exact_circle_zero(e) {
        return Ok(FrameVerdict {
            status: FrameStatus::NotFrame,
            rule: "circle-extrema".into(),
            bounds: None,
            witness: Some(format!(
                "p(z) = sum z^n over {:?} vanishes on the unit circle",
                e.exps()
            )),
        });
    }
    let range = circle_range(e, tol)?;
    let a = range.min_enclosure.0 * range.min_enclosure.0;
    let b = range.max_enclosure.1 * range.max_enclosure.1;
    Ok(FrameVerdict {
        status: FrameStatus::Frame,
        rule: "circle-extrema".into(),
        bounds: Some((Scalar::from_f64(a), Scalar::from_f64(b))),
        witness: None,
    })
}
