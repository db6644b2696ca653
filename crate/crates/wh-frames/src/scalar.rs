//! Scalar field underlying all window and test-vector values: exact complex
//! rationals, with a complex-double fallback for irrational data.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rational numbers with arbitrary-precision integer parts.
pub type Rat = BigRational;

/// Global tolerance used by all approx-mode equality checks.
pub const APPROX_EPS: f64 = 1e-12;

/// Build `p/q` as a [`Rat`].
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Build the integer `n` as a [`Rat`].
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Parse "p/q", "p", or (with `allow_float`) a decimal literal.
/// Decimal literals convert exactly (doubles are dyadic rationals).
pub fn parse_rat(s: &str, allow_float: bool) -> crate::Result<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| crate::Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| crate::Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Ok(Rat::from_integer(p));
    }
    if allow_float {
        let x: f64 = s
            .parse()
            .map_err(|_| crate::Error::Parse(format!("bad number {s:?}")))?;
        return Rat::from_float(x).ok_or_else(|| crate::Error::Parse(format!("non-finite {s:?}")));
    }
    Err(crate::Error::Parse(format!(
        "expected rational literal (\"p/q\" or integer), got {s:?}; pass --approx to allow floats"
    )))
}

/// A complex scalar in one of two modes.
///
/// Exact-mode arithmetic is closed: no rounding ever occurs.  Any operation
/// mixing the two modes coerces to approx and the result reports
/// `is_exact() == false`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Complex<Rat>),
    Approx(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Complex::new(Rat::zero(), Rat::zero()))
    }

    pub fn one() -> Self {
        Scalar::Exact(Complex::new(Rat::one(), Rat::zero()))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Exact(Complex::new(r, Rat::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(rint(n))
    }

    pub fn from_rat_pair(re: Rat, im: Rat) -> Self {
        Scalar::Exact(Complex::new(re, im))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Approx(Complex64::new(x, 0.0))
    }

    pub fn from_c64(z: Complex64) -> Self {
        Scalar::Approx(z)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(z) => Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im)),
            Scalar::Approx(z) => *z,
        }
    }

    /// Force approx mode.
    pub fn to_approx(&self) -> Scalar {
        Scalar::Approx(self.to_c64())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(z) => z.re.is_zero() && z.im.is_zero(),
            Scalar::Approx(z) => z.norm() < APPROX_EPS,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact(z) => z.im.is_zero(),
            Scalar::Approx(z) => z.im.abs() < APPROX_EPS,
        }
    }

    /// Exact real part, when in exact mode.
    pub fn re_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(z) => Some(&z.re),
            Scalar::Approx(_) => None,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(z.conj()),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }

    /// `|z|^2`, exact in exact mode.
    pub fn abs_sq(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => {
                Scalar::from_rat(&z.re * &z.re + &z.im * &z.im)
            }
            Scalar::Approx(z) => Scalar::from_f64(z.norm_sqr()),
        }
    }

    /// `|z|`; stays exact when `|z|^2` is a perfect rational square.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => {
                let sq = self.abs_sq();
                let r = sq.re_rat().unwrap();
                match rat_sqrt(r) {
                    Some(root) => Scalar::from_rat(root),
                    None => Scalar::from_f64(rat_to_f64(r).sqrt()),
                }
            }
            Scalar::Approx(z) => Scalar::from_f64(z.norm()),
        }
    }

    /// Principal square root; exact only for perfect rational squares of
    /// nonnegative reals.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Exact(z) if z.im.is_zero() && !z.re.is_negative() => match rat_sqrt(&z.re) {
                Some(root) => Scalar::from_rat(root),
                None => Scalar::from_f64(rat_to_f64(&z.re).sqrt()),
            },
            _ => Scalar::Approx(self.to_c64().sqrt()),
        }
    }

    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(Complex::new(Rat::one(), Rat::zero()) / z.clone()),
            Scalar::Approx(z) => Scalar::Approx(z.inv()),
        }
    }

    /// Compare two real scalars.  `None` when either has a nonzero
    /// imaginary part.
    pub fn real_cmp(&self, other: &Scalar) -> Option<Ordering> {
        if !self.is_real() || !other.is_real() {
            return None;
        }
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Some(x.re.cmp(&y.re)),
            _ => self.to_c64().re.partial_cmp(&other.to_c64().re),
        }
    }
}

/// Exact square root of a nonnegative rational, when one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    exact: impl Fn(&Complex<Rat>, &Complex<Rat>) -> Complex<Rat>,
    approx: impl Fn(Complex64, Complex64) -> Complex64,
) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(exact(x, y)),
        _ => Scalar::Approx(approx(a.to_c64(), b.to_c64())),
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| x.clone() + y.clone(), |x, y| x + y)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| x.clone() - y.clone(), |x, y| x - y)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| x.clone() * y.clone(), |x, y| x * y)
    }
}

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| x.clone() / y.clone(), |x, y| x / y)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(-z.clone()),
            Scalar::Approx(z) => Scalar::Approx(-z),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
            _ => (self.to_c64() - other.to_c64()).norm() < APPROX_EPS,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(z) => {
                if z.im.is_zero() {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
            Scalar::Approx(z) => {
                if z.im.abs() < APPROX_EPS {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
        }
    }
}
