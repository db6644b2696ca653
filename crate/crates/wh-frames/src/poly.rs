//! Exact univariate polynomial arithmetic over the integers and rationals:
//! gcds, square-free parts, Chebyshev expansion of `|p(e^{i theta})|^2`, and
//! Sturm-sequence root counting.  This is the exact tie-breaker behind the
//! unit-circle minimum-modulus certificates.

use crate::scalar::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer-coefficient polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `sum_j z^{e_j}` for sorted nonnegative exponents.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let deg = *exps.iter().max().unwrap_or(&0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for &e in exps {
            coeffs[e as usize] += 1;
        }
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `z^deg * p(1/z)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Autocorrelation coefficients `c_k = sum_i a_i a_{i+k}` for
    /// `|p(e^{i theta})|^2 = c_0 + 2 sum_{k>=1} c_k cos(k theta)`
    /// (real coefficients assumed).
    pub fn autocorrelation(&self) -> Vec<BigInt> {
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = BigInt::zero();
            for i in 0..n - k {
                s += &self.coeffs[i] * &self.coeffs[i + k];
            }
            out.push(s);
        }
        out
    }

    /// The squared modulus on the unit circle as a polynomial in
    /// `x = cos(theta)`, via the Chebyshev expansion.
    pub fn circle_modulus_sq_in_cos(&self) -> IntPoly {
        let auto = self.autocorrelation();
        let mut acc = IntPoly::new(vec![auto[0].clone()]);
        // T_k recurrence: T_{k+1} = 2x T_k - T_{k-1}
        let mut t_prev = IntPoly::from_i64(&[1]);
        let mut t_cur = IntPoly::from_i64(&[0, 1]);
        let two_x = IntPoly::from_i64(&[0, 2]);
        for c in auto.iter().skip(1) {
            acc = acc.add(&t_cur.scale(&(c * 2)));
            let t_next = two_x.mul(&t_cur).add(&t_prev.scale(&BigInt::from(-1)));
            t_prev = std::mem::replace(&mut t_cur, t_next);
        }
        acc
    }
}

/// Rational-coefficient polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly {
    pub coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &Rat {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading().clone();
        QPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = divisor.degree();
        let dl = divisor.leading();
        while r.len() > dd && !r.is_empty() {
            let q = r.last().unwrap() / dl;
            if q.is_zero() {
                r.pop();
                continue;
            }
            let shift = r.len() - 1 - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = shift + i;
                let sub = c * &q;
                r[idx] = &r[idx] - sub;
            }
            // leading term cancels exactly
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        QPoly::new(r)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divide out repeated roots.
    pub fn square_free(&self) -> QPoly {
        if self.degree() == 0 || self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    /// Exact quotient (caller guarantees divisibility).
    pub fn div_exact(&self, divisor: &QPoly) -> QPoly {
        let mut r = self.coeffs.clone();
        let dd = divisor.degree();
        let dl = divisor.leading();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let c = r.last().unwrap() / dl;
            let shift = r.len() - 1 - dd;
            q[shift] = c.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let idx = shift + i;
                let sub = d * &c;
                r[idx] = &r[idx] - sub;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        debug_assert!(r.is_empty(), "non-exact polynomial division");
        QPoly::new(q)
    }

    /// Sturm chain starting at `self` (assumed square-free).
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(QPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    /// Requires `self(lo) != 0` and `self(hi) != 0` and `self` square-free.
    pub fn count_roots_between(&self, lo: &Rat, hi: &Rat) -> usize {
        let chain = self.sturm_chain();
        let variations = |x: &Rat| -> usize {
            let mut signs = Vec::new();
            for p in &chain {
                let v = p.eval(x);
                if !v.is_zero() {
                    signs.push(v.is_positive());
                }
            }
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(lo).saturating_sub(variations(hi))
    }
}
