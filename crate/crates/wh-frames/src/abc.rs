//! The a,b,c-problem: frame status of `(chi_{[0,c)}, a, b)`.
//!
//! Every query is first reduced to `b = 1` by the dilation `L f = f(./b)`,
//! which carries `(a, b, c)` to `(ab, 1, bc)` without changing frame status.
//! The classifier then walks a fixed rule catalog; points no rule covers are
//! reported `Unknown` — the general classification is an open problem.

use crate::conditions::FrameStatus;
use crate::par;
use crate::scalar::{rat, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::cmp::Ordering;
use std::fmt;

/// Guard band for inequality checks against irrational tags: comparisons
/// landing inside the band are treated as undecidable.
pub const IRRATIONAL_GUARD: f64 = 1e-9;

/// A positive real parameter whose rationality is declared by the caller.
///
/// Floats never witness rationality: an `Irr` tag carries only an
/// approximate value, used for inequality checks with a guard band.
#[derive(Clone, Debug, PartialEq)]
pub enum RealParam {
    Rat(Rat),
    Irr(f64),
}

impl RealParam {
    pub fn rational(p: i64, q: i64) -> Self {
        RealParam::Rat(rat(p, q))
    }

    pub fn irrational(x: f64) -> Self {
        RealParam::Irr(x)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealParam::Rat(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            RealParam::Rat(r) => Some(r),
            RealParam::Irr(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealParam::Rat(r) => crate::scalar::rat_to_f64(r),
            RealParam::Irr(x) => *x,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            RealParam::Rat(r) => r.is_positive(),
            RealParam::Irr(x) => *x > 0.0,
        }
    }

    fn mul_rat(&self, r: &Rat) -> RealParam {
        match self {
            RealParam::Rat(s) => RealParam::Rat(s * r),
            RealParam::Irr(x) => RealParam::Irr(x * crate::scalar::rat_to_f64(r)),
        }
    }

    /// Three-valued ordering: `None` when an irrational tag lands inside the
    /// guard band.
    fn cmp3(&self, other: &RealParam) -> Option<Ordering> {
        match (self, other) {
            (RealParam::Rat(x), RealParam::Rat(y)) => Some(x.cmp(y)),
            _ => {
                let d = self.to_f64() - other.to_f64();
                if d.abs() < IRRATIONAL_GUARD {
                    None
                } else if d < 0.0 {
                    Some(Ordering::Less)
                } else {
                    Some(Ordering::Greater)
                }
            }
        }
    }

    fn lt(&self, other: &RealParam) -> Option<bool> {
        self.cmp3(other).map(|o| o == Ordering::Less)
    }

    fn gt(&self, other: &RealParam) -> Option<bool> {
        self.cmp3(other).map(|o| o == Ordering::Greater)
    }

    fn le(&self, other: &RealParam) -> Option<bool> {
        self.cmp3(other).map(|o| o != Ordering::Greater)
    }

    /// Exact equality with a rational; definitively false for `Irr` tags.
    fn eq_rat(&self, r: &Rat) -> bool {
        matches!(self, RealParam::Rat(x) if x == r)
    }

    /// Integer part; `None` when an irrational tag sits too close to an
    /// integer to pick the side.
    fn floor_int(&self) -> Option<BigInt> {
        match self {
            RealParam::Rat(r) => Some(r.floor().to_integer()),
            RealParam::Irr(x) => {
                let f = x.floor();
                if x - f < IRRATIONAL_GUARD || f + 1.0 - x < IRRATIONAL_GUARD {
                    None
                } else {
                    Some(BigInt::from(f as i64))
                }
            }
        }
    }
}

impl fmt::Display for RealParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealParam::Rat(r) => write!(f, "{r}"),
            RealParam::Irr(x) => write!(f, "~{x}"),
        }
    }
}

/// A point of the a,b,c-problem.
#[derive(Clone, Debug)]
pub struct AbcQuery {
    pub a: RealParam,
    pub b: Rat,
    pub c: RealParam,
}

impl AbcQuery {
    pub fn new(a: RealParam, b: Rat, c: RealParam) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() || !c.is_positive() {
            return Err(Error::InvalidParameter("a, b, c must be positive".into()));
        }
        Ok(AbcQuery { a, b, c })
    }

    pub fn rational(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        Self::new(RealParam::Rat(a), b, RealParam::Rat(c))
    }
}

/// Which catalog entry decided the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbcRule {
    AbGt1,
    CEq1Onb,
    CLt1,
    Janssen1,
    Janssen2,
    Janssen3,
    Janssen4,
    IntegerC,
    None,
}

impl fmt::Display for AbcRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AbcRule::AbGt1 => "AB_GT_1",
            AbcRule::CEq1Onb => "C_EQ_1_ONB",
            AbcRule::CLt1 => "C_LT_1",
            AbcRule::Janssen1 => "JANSSEN_1",
            AbcRule::Janssen2 => "JANSSEN_2",
            AbcRule::Janssen3 => "JANSSEN_3",
            AbcRule::Janssen4 => "JANSSEN_4",
            AbcRule::IntegerC => "INTEGER_C",
            AbcRule::None => "NONE",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbcVerdict {
    pub status: FrameStatus,
    pub rule: AbcRule,
}

impl AbcVerdict {
    fn unknown() -> Self {
        AbcVerdict {
            status: FrameStatus::Inconclusive,
            rule: AbcRule::None,
        }
    }
}

/// Dilate to `b = 1`: `(a, b, c) -> (ab, 1, bc)`; frame status is preserved.
pub fn reduce(q: &AbcQuery) -> AbcQuery {
    AbcQuery {
        a: q.a.mul_rat(&q.b),
        b: Rat::one(),
        c: q.c.mul_rat(&q.b),
    }
}

// Each rule predicate returns Some(verdict) when it fires, None when it
// definitively does not; Err(()) marks a guard-band ambiguity that forces
// an Unknown overall answer.
type RuleCheck = std::result::Result<Option<FrameStatus>, ()>;

fn rule_ab_gt_1(a: &RealParam, _c: &RealParam) -> RuleCheck {
    match a.gt(&RealParam::Rat(Rat::one())) {
        Some(true) => Ok(Some(FrameStatus::NotFrame)),
        Some(false) => Ok(None),
        None => Err(()),
    }
}

fn rule_c_eq_1_onb(a: &RealParam, c: &RealParam) -> RuleCheck {
    Ok((c.eq_rat(&Rat::one()) && a.eq_rat(&Rat::one())).then_some(FrameStatus::Frame))
}

fn rule_c_lt_1(a: &RealParam, c: &RealParam) -> RuleCheck {
    match c.lt(&RealParam::Rat(Rat::one())) {
        Some(false) => Ok(None),
        None => Err(()),
        Some(true) => match a.le(c) {
            Some(true) => Ok(Some(FrameStatus::Frame)),
            Some(false) => Ok(Some(FrameStatus::NotFrame)),
            None => Err(()),
        },
    }
}

fn rule_integer_c(_a: &RealParam, c: &RealParam) -> RuleCheck {
    Ok(c.as_rat()
        .filter(|r| r.is_integer() && **r >= crate::scalar::rint(2))
        .map(|_| FrameStatus::NotFrame))
}

fn c_strictly_between(c: &RealParam, lo: &Rat, hi: &Rat) -> std::result::Result<bool, ()> {
    let lo_ok = c.gt(&RealParam::Rat(lo.clone())).ok_or(())?;
    let hi_ok = c.lt(&RealParam::Rat(hi.clone())).ok_or(())?;
    Ok(lo_ok && hi_ok)
}

fn rule_janssen_1(a: &RealParam, c: &RealParam) -> RuleCheck {
    if a.is_rational() {
        return Ok(None);
    }
    Ok(c_strictly_between(c, &Rat::one(), &crate::scalar::rint(2))?
        .then_some(FrameStatus::Frame))
}

fn rule_janssen_2(a: &RealParam, c: &RealParam) -> RuleCheck {
    let Some(ar) = a.as_rat() else {
        return Ok(None);
    };
    let lo = crate::scalar::rint(2) - Rat::new(BigInt::one(), ar.denom().clone());
    Ok(c_strictly_between(c, &lo, &crate::scalar::rint(2))?.then_some(FrameStatus::NotFrame))
}

fn rule_janssen_3(a: &RealParam, c: &RealParam) -> RuleCheck {
    match a.gt(&rat(3, 4).into()) {
        Some(false) => return Ok(None),
        None => return Err(()),
        Some(true) => {}
    }
    match a.lt(&Rat::one().into()) {
        Some(false) => return Ok(None),
        None => return Err(()),
        Some(true) => {}
    }
    // c = L - 1 + L(1 - a) rearranges to L = (c + 1)/(2 - a); 3/4 < a < 1
    // here, so the denominator is positive.
    match (a.as_rat(), c.as_rat()) {
        (Some(ar), Some(cr)) => {
            let l = (cr + Rat::one()) / (crate::scalar::rint(2) - ar);
            Ok((l.is_integer() && l >= crate::scalar::rint(3)).then_some(FrameStatus::NotFrame))
        }
        _ => {
            // Equality against a float tag can never be confirmed; near-hits
            // are undecidable, clean misses definitively fail the rule.
            let l = (c.to_f64() + 1.0) / (2.0 - a.to_f64());
            if l >= 2.5 && (l - l.round()).abs() < IRRATIONAL_GUARD {
                Err(())
            } else {
                Ok(None)
            }
        }
    }
}

fn rule_janssen_4(a: &RealParam, c: &RealParam) -> RuleCheck {
    let d = c.floor_int().ok_or(())?;
    // |c - d - 1/2| < 1/2 - a
    match (a.as_rat(), c.as_rat()) {
        (Some(ar), Some(cr)) => {
            let lhs = (cr - Rat::from_integer(d) - rat(1, 2)).abs();
            let rhs = rat(1, 2) - ar;
            Ok((lhs < rhs).then_some(FrameStatus::Frame))
        }
        _ => {
            let lhs = (c.to_f64() - d.to_f64().unwrap() - 0.5).abs();
            let rhs = 0.5 - a.to_f64();
            if (lhs - rhs).abs() < IRRATIONAL_GUARD {
                Err(())
            } else {
                Ok((lhs < rhs).then_some(FrameStatus::Frame))
            }
        }
    }
}

impl From<Rat> for RealParam {
    fn from(r: Rat) -> Self {
        RealParam::Rat(r)
    }
}

const RULES: [(AbcRule, fn(&RealParam, &RealParam) -> RuleCheck); 8] = [
    (AbcRule::AbGt1, rule_ab_gt_1),
    (AbcRule::CEq1Onb, rule_c_eq_1_onb),
    (AbcRule::CLt1, rule_c_lt_1),
    (AbcRule::IntegerC, rule_integer_c),
    (AbcRule::Janssen1, rule_janssen_1),
    (AbcRule::Janssen2, rule_janssen_2),
    (AbcRule::Janssen3, rule_janssen_3),
    (AbcRule::Janssen4, rule_janssen_4),
];

/// First matching rule of the catalog, after reduction to `b = 1`.
pub fn classify(q: &AbcQuery) -> AbcVerdict {
    let r = reduce(q);
    for (rule, check) in RULES {
        match check(&r.a, &r.c) {
            Ok(Some(status)) => return AbcVerdict { status, rule },
            Ok(None) => continue,
            Err(()) => return AbcVerdict::unknown(),
        }
    }
    AbcVerdict::unknown()
}

/// Every rule that fires at the point, ignoring catalog order.  Used to
/// check that no point carries two rules with conflicting statuses.
pub fn all_matches(q: &AbcQuery) -> Vec<(AbcRule, FrameStatus)> {
    let r = reduce(q);
    RULES
        .iter()
        .filter_map(|(rule, check)| match check(&r.a, &r.c) {
            Ok(Some(status)) => Some((*rule, status)),
            _ => None,
        })
        .collect()
}

/// Classify every point of the `a x c` grid (at `b = 1`), in parallel.
pub fn chart(a_grid: &[RealParam], c_grid: &[RealParam]) -> Vec<(RealParam, RealParam, AbcVerdict)> {
    let points: Vec<(RealParam, RealParam)> = a_grid
        .iter()
        .flat_map(|a| c_grid.iter().map(move |c| (a.clone(), c.clone())))
        .collect();
    par::map(points, |(a, c)| {
        let v = AbcQuery::new(a.clone(), Rat::one(), c.clone())
            .map(|q| classify(&q))
            .unwrap_or_else(|_| AbcVerdict::unknown());
        (a, c, v)
    })
}
