//! Compactly supported piecewise-constant functions with exact rational
//! breakpoints, and their periodic counterparts.
//!
//! All intervals are half-open `[lo, hi)`, which turns every almost-everywhere
//! statement into an exact statement about finitely many cells.  Functions are
//! kept in a canonical form (sorted pieces, adjacent equal values merged, zero
//! pieces dropped), so structural equality decides a.e. equality.

use crate::scalar::{Rat, Scalar};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// One maximal cell of a step function: constant `value` on `[lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub lo: Rat,
    pub hi: Rat,
    pub value: Scalar,
}

/// A compactly supported step function in canonical form.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct StepFunction {
    pieces: Vec<Piece>,
}

impl StepFunction {
    /// The zero function.
    pub fn zero() -> Self {
        StepFunction { pieces: Vec::new() }
    }

    /// The characteristic function of `[lo, hi)`.
    pub fn indicator(lo: Rat, hi: Rat) -> Result<Self> {
        Self::make(vec![(lo, hi, Scalar::one())])
    }

    /// Build a canonical step function from raw `(lo, hi, value)` data.
    ///
    /// Pieces may touch or even coincide as long as overlapping regions carry
    /// equal values; overlaps with conflicting values are rejected.
    pub fn make(pieces: Vec<(Rat, Rat, Scalar)>) -> Result<Self> {
        for (lo, hi, _) in &pieces {
            if lo >= hi {
                return Err(Error::EmptyInterval(lo.to_string(), hi.to_string()));
            }
        }
        // Split everything on the common breakpoint grid, then check that no
        // point is covered twice with different values.
        let mut cuts: Vec<Rat> = Vec::new();
        for (lo, hi, _) in &pieces {
            cuts.push(lo.clone());
            cuts.push(hi.clone());
        }
        cuts.sort();
        cuts.dedup();
        let mut cells: Vec<Piece> = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let mut val: Option<Scalar> = None;
            for (plo, phi, v) in &pieces {
                if plo <= lo && hi <= phi {
                    match &val {
                        None => val = Some(v.clone()),
                        Some(u) if u == v => {}
                        Some(_) => return Err(Error::ConflictingOverlap(lo.to_string())),
                    }
                }
            }
            if let Some(v) = val {
                cells.push(Piece {
                    lo: lo.clone(),
                    hi: hi.clone(),
                    value: v,
                });
            }
        }
        Ok(Self::canonical(cells))
    }

    /// Canonicalize already-disjoint sorted cells.
    fn canonical(cells: Vec<Piece>) -> Self {
        let mut out: Vec<Piece> = Vec::new();
        for c in cells {
            if c.value.is_zero() {
                continue;
            }
            if let Some(last) = out.last_mut() {
                if last.hi == c.lo && last.value == c.value {
                    last.hi = c.hi;
                    continue;
                }
            }
            out.push(c);
        }
        StepFunction { pieces: out }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// True when every value is an exact rational complex number.
    pub fn is_exact(&self) -> bool {
        self.pieces.iter().all(|p| p.value.is_exact())
    }

    /// Least breakpoint of the support, if nonzero.
    pub fn supp_lo(&self) -> Option<&Rat> {
        self.pieces.first().map(|p| &p.lo)
    }

    /// Greatest breakpoint of the support, if nonzero.
    pub fn supp_hi(&self) -> Option<&Rat> {
        self.pieces.last().map(|p| &p.hi)
    }

    /// Pointwise evaluation (zero outside the support).
    pub fn eval(&self, t: &Rat) -> Scalar {
        match self
            .pieces
            .binary_search_by(|p| {
                if &p.hi <= t {
                    std::cmp::Ordering::Less
                } else if &p.lo > t {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .ok()
        {
            Some(i) => self.pieces[i].value.clone(),
            None => Scalar::zero(),
        }
    }

    /// `t -> f(t - s)`.
    pub fn translate(&self, s: &Rat) -> StepFunction {
        StepFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    lo: &p.lo + s,
                    hi: &p.hi + s,
                    value: p.value.clone(),
                })
                .collect(),
        }
    }

    /// `t -> f(t / r)` for `r > 0`.
    pub fn dilate(&self, r: &Rat) -> Result<StepFunction> {
        if !r.is_positive() {
            return Err(Error::NonPositiveDilation(r.to_string()));
        }
        Ok(StepFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    lo: &p.lo * r,
                    hi: &p.hi * r,
                    value: p.value.clone(),
                })
                .collect(),
        })
    }

    /// Pointwise combination on the common breakpoint refinement.
    fn combine(&self, other: &StepFunction, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> StepFunction {
        let mut cuts: Vec<Rat> = Vec::with_capacity(2 * (self.pieces.len() + other.pieces.len()));
        for p in self.pieces.iter().chain(other.pieces.iter()) {
            cuts.push(p.lo.clone());
            cuts.push(p.hi.clone());
        }
        cuts.sort();
        cuts.dedup();
        let mut cells = Vec::new();
        for w in cuts.windows(2) {
            let v = op(&self.eval(&w[0]), &other.eval(&w[0]));
            cells.push(Piece {
                lo: w[0].clone(),
                hi: w[1].clone(),
                value: v,
            });
        }
        Self::canonical(cells)
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a * b)
    }

    pub fn conj(&self) -> StepFunction {
        self.map_values(|v| v.conj())
    }

    pub fn scale(&self, c: &Scalar) -> StepFunction {
        self.map_values(|v| v * c)
    }

    pub fn neg(&self) -> StepFunction {
        self.map_values(|v| -v)
    }

    /// `|f|` pointwise; leaves exact mode only when a modulus is irrational.
    pub fn abs_fn(&self) -> StepFunction {
        self.map_values(|v| v.abs())
    }

    /// `|f|^2` pointwise (always stays in the mode of the input).
    pub fn abs_sq_fn(&self) -> StepFunction {
        self.map_values(|v| v.abs_sq())
    }

    pub fn map_values(&self, f: impl Fn(&Scalar) -> Scalar) -> StepFunction {
        Self::canonical(
            self.pieces
                .iter()
                .map(|p| Piece {
                    lo: p.lo.clone(),
                    hi: p.hi.clone(),
                    value: f(&p.value),
                })
                .collect(),
        )
    }

    /// `\int |f|^2`.
    pub fn norm_sq(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for p in &self.pieces {
            let w = Scalar::from_rat(&p.hi - &p.lo);
            acc = &acc + &(&w * &p.value.abs_sq());
        }
        acc
    }

    /// `\int f`.
    pub fn integral(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for p in &self.pieces {
            let w = Scalar::from_rat(&p.hi - &p.lo);
            acc = &acc + &(&w * &p.value);
        }
        acc
    }

    /// L2 distance to another step function, as a double.
    pub fn dist(&self, other: &StepFunction) -> f64 {
        rat_to_f64_safe(&self.sub(other).norm_sq()).sqrt()
    }

    /// Restriction to `[lo, hi)`.
    pub fn restrict(&self, lo: &Rat, hi: &Rat) -> StepFunction {
        let mut cells = Vec::new();
        for p in &self.pieces {
            let l = if &p.lo > lo { p.lo.clone() } else { lo.clone() };
            let h = if &p.hi < hi { p.hi.clone() } else { hi.clone() };
            if l < h {
                cells.push(Piece {
                    lo: l,
                    hi: h,
                    value: p.value.clone(),
                });
            }
        }
        Self::canonical(cells)
    }

    /// Pointwise product with a periodic step function.
    pub fn mul_periodic(&self, phi: &PeriodicStepFunction) -> StepFunction {
        let p = phi.period();
        let mut cells = Vec::new();
        for piece in &self.pieces {
            // Split the piece on the periodic grid of phi's breakpoints.
            let mut cuts = vec![piece.lo.clone()];
            let mut j = (&piece.lo / p).floor();
            loop {
                let base = &j * p;
                if &base >= &piece.hi {
                    break;
                }
                for b in phi.cell_breakpoints() {
                    let t = &base + &b;
                    if t > piece.lo && t < piece.hi {
                        cuts.push(t);
                    }
                }
                j += Rat::from_integer(1.into());
            }
            cuts.push(piece.hi.clone());
            cuts.sort();
            cuts.dedup();
            for w in cuts.windows(2) {
                cells.push(Piece {
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    value: &piece.value * &phi.eval(&w[0]),
                });
            }
        }
        cells.sort_by(|a, b| a.lo.cmp(&b.lo));
        Self::canonical(cells)
    }
}

/// A `p`-periodic step function, stored as one cell on `[0, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicStepFunction {
    period: Rat,
    cell: StepFunction,
}

impl PeriodicStepFunction {
    pub fn new(period: Rat, cell: StepFunction) -> Result<Self> {
        if !period.is_positive() {
            return Err(Error::NonPositivePeriod(period.to_string()));
        }
        if let (Some(lo), Some(hi)) = (cell.supp_lo(), cell.supp_hi()) {
            if lo.is_negative() || hi > &period {
                return Err(Error::InvalidParameter(format!(
                    "cell support [{lo}, {hi}) not contained in [0, {period})"
                )));
            }
        }
        Ok(PeriodicStepFunction { period, cell })
    }

    pub fn zero(period: Rat) -> Result<Self> {
        Self::new(period, StepFunction::zero())
    }

    pub fn period(&self) -> &Rat {
        &self.period
    }

    pub fn cell(&self) -> &StepFunction {
        &self.cell
    }

    pub fn is_zero(&self) -> bool {
        self.cell.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.cell.is_exact()
    }

    /// Periodic evaluation at any real rational point.
    pub fn eval(&self, t: &Rat) -> Scalar {
        let k = (t / &self.period).floor();
        self.cell.eval(&(t - &k * &self.period))
    }

    /// Breakpoints of the cell within `[0, p)`, plus the cell boundaries.
    pub fn cell_breakpoints(&self) -> Vec<Rat> {
        let mut cuts = vec![Rat::zero()];
        for p in self.cell.pieces() {
            cuts.push(p.lo.clone());
            cuts.push(p.hi.clone());
        }
        cuts.retain(|c| c < &self.period);
        cuts.sort();
        cuts.dedup();
        cuts
    }

    /// True when the cell leaves part of `[0, p)` uncovered (where the
    /// function is zero).
    pub fn has_gap(&self) -> bool {
        let mut covered = Rat::zero();
        for p in self.cell.pieces() {
            covered += &p.hi - &p.lo;
        }
        covered < self.period
    }

    /// Essential range extremes over the reals for a real-valued function:
    /// min/max of the cell values, with 0 included when the cell has gaps.
    pub fn ess_range(&self) -> Result<(Scalar, Scalar)> {
        let mut vals: Vec<Scalar> = self.cell.pieces().iter().map(|p| p.value.clone()).collect();
        if self.has_gap() || vals.is_empty() {
            vals.push(Scalar::zero());
        }
        let mut lo = vals[0].clone();
        let mut hi = vals[0].clone();
        for v in &vals[1..] {
            match (v.real_cmp(&lo), v.real_cmp(&hi)) {
                (Some(cl), Some(ch)) => {
                    if cl == std::cmp::Ordering::Less {
                        lo = v.clone();
                    }
                    if ch == std::cmp::Ordering::Greater {
                        hi = v.clone();
                    }
                }
                _ => {
                    return Err(Error::Unsupported(
                        "essential range requires a real-valued function".into(),
                    ))
                }
            }
        }
        Ok((lo, hi))
    }

    /// Cyclic shift: `t -> f(t - s)`, reduced modulo the period.
    pub fn translate(&self, s: &Rat) -> PeriodicStepFunction {
        let shifted = self.cell.translate(s);
        // Wrap back onto [0, p).
        let mut cells = Vec::new();
        for piece in shifted.pieces() {
            let mut lo = piece.lo.clone();
            while lo < piece.hi {
                let k = (&lo / &self.period).floor();
                let base = &k * &self.period;
                let cell_hi = &base + &self.period;
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
        cells.sort_by(|a, b| a.lo.cmp(&b.lo));
        PeriodicStepFunction {
            period: self.period.clone(),
            cell: StepFunction::canonical(cells),
        }
    }

    pub fn map_values(&self, f: impl Fn(&Scalar) -> Scalar) -> PeriodicStepFunction {
        PeriodicStepFunction {
            period: self.period.clone(),
            cell: self.cell.map_values(f),
        }
    }

    pub fn conj(&self) -> PeriodicStepFunction {
        self.map_values(|v| v.conj())
    }

    pub fn abs_sq_fn(&self) -> PeriodicStepFunction {
        self.map_values(|v| v.abs_sq())
    }

    /// Pointwise combination of two functions with the same period.
    pub fn combine(
        &self,
        other: &PeriodicStepFunction,
        op: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<PeriodicStepFunction> {
        if self.period != other.period {
            return Err(Error::InvalidParameter(format!(
                "period mismatch: {} vs {}",
                self.period, other.period
            )));
        }
        Ok(PeriodicStepFunction {
            period: self.period.clone(),
            cell: self.cell.combine(&other.cell, op),
        })
    }

    pub fn add(&self, other: &PeriodicStepFunction) -> Result<PeriodicStepFunction> {
        self.combine(other, |a, b| a + b)
    }

    /// Integral over one period.
    pub fn integral_cell(&self) -> Scalar {
        self.cell.integral()
    }
}

fn rat_to_f64_safe(s: &Scalar) -> f64 {
    let z = s.to_c64();
    debug_assert!(z.im.abs() < 1e-9);
    z.re
}
