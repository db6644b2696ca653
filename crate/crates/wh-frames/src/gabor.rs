//! Periodization, `p`-inner products, the correlation functions `G_k`, and an
//! exact oracle for the frame energy `sum_{m,n} |<f, E_{mb} T_{na} g>|^2`.
//!
//! Modulations never materialize pointwise: every `m`-sum is collapsed through
//! the Parseval identity for Fourier series on one period cell, so the whole
//! computation stays inside exact step-function algebra.

use crate::par;
use crate::scalar::{Rat, Scalar};
use crate::stepfn::{PeriodicStepFunction, Piece, StepFunction};
use crate::{Error, Result};
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;

/// A Weyl-Heisenberg system `(g, a, b)`.
#[derive(Clone, Debug)]
pub struct GaborSystem {
    g: StepFunction,
    a: Rat,
    b: Rat,
}

impl GaborSystem {
    pub fn new(g: StepFunction, a: Rat, b: Rat) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::NonPositiveLattice);
        }
        if g.is_zero() {
            return Err(Error::ZeroWindow);
        }
        Ok(GaborSystem { g, a, b })
    }

    pub fn window(&self) -> &StepFunction {
        &self.g
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// The modulation period `1/b`.
    pub fn inv_b(&self) -> Rat {
        Rat::one() / &self.b
    }

    /// Dilation reduction to `b = 1`: `(g, a, b) -> (g(./b), ab, 1)`.
    /// Frame status and energy ratios are preserved when test vectors are
    /// dilated the same way.
    pub fn reduce_to_b1(&self) -> GaborSystem {
        GaborSystem {
            g: self.g.dilate(&self.b).expect("b > 0"),
            a: &self.a * &self.b,
            b: Rat::one(),
        }
    }
}

/// Sum possibly-overlapping raw cells into a canonical step function.
fn sum_cells(cells: Vec<Piece>) -> StepFunction {
    let mut cuts: Vec<Rat> = Vec::with_capacity(2 * cells.len());
    for c in &cells {
        cuts.push(c.lo.clone());
        cuts.push(c.hi.clone());
    }
    cuts.sort();
    cuts.dedup();
    let mut data = Vec::new();
    for w in cuts.windows(2) {
        let mut v = Scalar::zero();
        let mut hit = false;
        for c in &cells {
            if c.lo <= w[0] && w[1] <= c.hi {
                v = &v + &c.value;
                hit = true;
            }
        }
        if hit && !v.is_zero() {
            data.push((w[0].clone(), w[1].clone(), v));
        }
    }
    StepFunction::make(data).expect("disjoint cells")
}

/// `p`-periodization: `cell(t) = sum_j f(t - j p)` on `[0, p)`.
pub fn periodize(f: &StepFunction, p: &Rat) -> Result<PeriodicStepFunction> {
    if !p.is_positive() {
        return Err(Error::NonPositivePeriod(p.to_string()));
    }
    let mut cells = Vec::new();
    for piece in f.pieces() {
        // Split the piece at multiples of p and wrap each part onto [0, p).
        let mut lo = piece.lo.clone();
        while lo < piece.hi {
            let k = (&lo / p).floor();
            let base = &k * p;
            let cell_hi = &base + p;
            let hi = if piece.hi < cell_hi {
                piece.hi.clone()
            } else {
                cell_hi
            };
            cells.push(Piece {
                lo: &lo - &base,
                hi: &hi - &base,
                value: piece.value.clone(),
            });
            lo = hi;
        }
    }
    PeriodicStepFunction::new(p.clone(), sum_cells(cells))
}

/// The `p`-inner product `<f, g>_p(t) = sum_k f(t-kp) conj(g(t-kp))`.
pub fn bracket(f: &StepFunction, g: &StepFunction, p: &Rat) -> Result<PeriodicStepFunction> {
    periodize(&f.mul(&g.conj()), p)
}

/// The finite table of correlation functions
/// `G_k(t) = sum_n g(t-na) conj(g(t-na-k/b))`, each `a`-periodic.
#[derive(Clone, Debug)]
pub struct GkTable {
    system: GaborSystem,
    entries: BTreeMap<i64, PeriodicStepFunction>,
}

impl GkTable {
    pub fn system(&self) -> &GaborSystem {
        &self.system
    }

    /// All `k` with `G_k` not identically zero.
    pub fn krange(&self) -> Vec<i64> {
        self.entries.keys().copied().collect()
    }

    pub fn entry(&self, k: i64) -> Option<&PeriodicStepFunction> {
        self.entries.get(&k)
    }

    /// `G_k`, materializing the zero function outside the stored range.
    pub fn get(&self, k: i64) -> PeriodicStepFunction {
        self.entries
            .get(&k)
            .cloned()
            .unwrap_or_else(|| PeriodicStepFunction::zero(self.system.a().clone()).expect("a > 0"))
    }
}

/// Compute the full `G_k` table of a system.  Compact support of `g` forces
/// `G_k = 0` for `|k| > b * diam(supp g)`, so the table is finite.
pub fn gk_table(sys: &GaborSystem) -> GkTable {
    let g = sys.window();
    let (lo, hi) = (g.supp_lo().unwrap().clone(), g.supp_hi().unwrap().clone());
    let diam = &hi - &lo;
    let kmax = (&diam * sys.b()).ceil().to_integer().to_i64().unwrap();
    let inv_b = sys.inv_b();
    let ks: Vec<i64> = (-kmax..=kmax).collect();
    let computed = par::map(ks, |k| {
        let shift = Rat::from_integer(k.into()) * &inv_b;
        let gk = bracket(g, &g.translate(&shift), sys.a()).expect("a > 0");
        (k, gk)
    });
    let mut entries = BTreeMap::new();
    for (k, gk) in computed {
        if !gk.is_zero() {
            entries.insert(k, gk);
        }
    }
    GkTable {
        system: sys.clone(),
        entries,
    }
}

/// Integers `n` with `supp f` meeting `supp g + n a`.
pub(crate) fn overlap_range(f: &StepFunction, g: &StepFunction, a: &Rat) -> Vec<i64> {
    match (f.supp_lo(), f.supp_hi(), g.supp_lo(), g.supp_hi()) {
        (Some(flo), Some(fhi), Some(glo), Some(ghi)) => {
            // Need n a > flo - ghi and n a < fhi - glo (open: half-open cells).
            let lo = (flo - ghi) / a;
            let hi = (fhi - glo) / a;
            let n0 = lo.floor().to_integer().to_i64().unwrap() + 1;
            let mut n1 = hi.ceil().to_integer().to_i64().unwrap() - 1;
            if hi.is_integer() {
                n1 = hi.to_integer().to_i64().unwrap() - 1;
            }
            (n0..=n1).collect()
        }
        _ => Vec::new(),
    }
}

/// Exact value of `sum_{m,n} |<f, E_{mb} T_{na} g>|^2`.
///
/// For each `n` the `m`-sum is `(1/b) * int_0^{1/b} |P_n|^2` where `P_n` is
/// the `1/b`-periodization of `f * conj(T_{na} g)`.
pub fn frame_energy(f: &StepFunction, sys: &GaborSystem) -> Result<Scalar> {
    let inv_b = sys.inv_b();
    let ns = overlap_range(f, sys.window(), sys.a());
    let terms = par::map(ns, |n| {
        let shift = Rat::from_integer(n.into()) * sys.a();
        let h = f.mul(&sys.window().translate(&shift).conj());
        let p = periodize(&h, &inv_b)?;
        Ok(p.abs_sq_fn().integral_cell())
    })
    .into_iter()
    .collect::<Result<Vec<Scalar>>>()?;
    let mut acc = Scalar::zero();
    for t in &terms {
        acc = &acc + t;
    }
    Ok(&acc * &Scalar::from_rat(sys.inv_b()))
}

/// `frame_energy(f, sys) / norm_sq(f)`; any frame bounds must enclose it.
pub fn energy_ratio(f: &StepFunction, sys: &GaborSystem) -> Result<Scalar> {
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(&frame_energy(f, sys)? / &f.norm_sq())
}
