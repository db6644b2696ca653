//! Explicit counterexample families: step functions whose frame-energy
//! ratio decays (or whose norm stays bounded while the coefficient count
//! grows), exhibiting the failure of a lower frame bound quantitatively.

use crate::gabor::{energy_ratio, GaborSystem};
use crate::par;
use crate::scalar::{rint, Rat, Scalar};
use crate::stepfn::StepFunction;
use crate::{Error, Result};
use num_traits::{One, Signed};

fn check_unit_d(d: &Rat) -> Result<()> {
    if !d.is_positive() || d > &Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "block width d must lie in (0, 1], got {d}"
        )));
    }
    Ok(())
}

/// Case I family: `sum_{i=0}^{2n} (-1)^i chi_{[i, i+d)}`.
///
/// `norm_sq = (2n+1) d`, while the energy against `chi_{[0,c)}` windows with
/// even-length support stays O(d), so the energy ratio decays like 1/n.
pub fn case1_witness(d: &Rat, n: i64) -> Result<StepFunction> {
    check_unit_d(d)?;
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut f = StepFunction::zero();
    for i in 0..=2 * n {
        let block = StepFunction::indicator(rint(i), rint(i) + d)?;
        f = if i % 2 == 0 { f.add(&block) } else { f.sub(&block) };
    }
    Ok(f)
}

/// Case II family: `3n` blocks of width `d` patterned `1, -1/2, -1/2`.
///
/// `norm_sq = (3/2) n d`.  With `d = 1` this is exactly the alternating
/// test vector whose energy against `(chi_{[0,3)}, 1, 1)` is 5/2 for every
/// `n >= 2`.
pub fn case2_witness(d: &Rat, n: i64) -> Result<StepFunction> {
    check_unit_d(d)?;
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let half = Scalar::from_rat(crate::scalar::rat(-1, 2));
    let mut f = StepFunction::zero();
    for j in 0..n {
        for (off, coeff) in [
            (0, Scalar::one()),
            (1, half.clone()),
            (2, half.clone()),
        ] {
            let lo = rint(3 * j + off);
            let block = StepFunction::indicator(lo.clone(), lo + d)?.scale(&coeff);
            f = f.add(&block);
        }
    }
    Ok(f)
}

/// Riesz-failure family for `g = chi_{[0,n)}`, `n >= 2`:
/// `sum_{j=0}^{k-1} (T_{jn} g - T_{jn+1} g)`.
///
/// The interior translates telescope away, leaving only the two end cells:
/// `norm_sq = 2` exactly for every `k`, while the coefficient sequence has
/// `2k` unit entries — so the integer translates are not a Riesz basic
/// sequence and `(g, a, 1)` is not a frame for any `a`.
pub fn riesz_witness(n: i64, k: i64) -> Result<StepFunction> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be >= 2".into()));
    }
    if k < 1 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let g = StepFunction::indicator(rint(0), rint(n))?;
    let mut f = StepFunction::zero();
    for j in 0..k {
        f = f
            .add(&g.translate(&rint(j * n)))
            .sub(&g.translate(&rint(j * n + 1)));
    }
    Ok(f)
}

/// Validate that `e` is a 0/1 indicator supported inside `[0, 1)` with
/// positive measure; returns its measure.
fn check_unit_cell_indicator(e: &StepFunction) -> Result<Rat> {
    if e.is_zero() {
        return Err(Error::InvalidParameter("E must have positive measure".into()));
    }
    for p in e.pieces() {
        if p.value != Scalar::one() {
            return Err(Error::InvalidParameter(
                "E must be a 0/1 indicator function".into(),
            ));
        }
        if p.lo < rint(0) || p.hi > rint(1) {
            return Err(Error::InvalidParameter("E must lie inside [0, 1)".into()));
        }
    }
    e.integral()
        .re_rat()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter("E must be exact".into()))
}

/// Small-periodization family: `sum_{k=0}^{n} chi_{k+E}` for `E` inside
/// `[0, 1)`.  `norm_sq = (n+1)|E|` (the literal sum over `k = 0..n`), while
/// the energy stays O(1) when the periodization of `g` nearly vanishes
/// on `E`.
pub fn p3_witness(e: &StepFunction, n: i64) -> Result<StepFunction> {
    check_unit_cell_indicator(e)?;
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut f = StepFunction::zero();
    for k in 0..=n {
        f = f.add(&e.translate(&rint(k)));
    }
    Ok(f)
}

/// Two-overlap family: the alternating block function
/// `sum_{i=0}^{2n-1} (-1)^i s_i chi_{E+im}` with `s_i = sign(g)` where `g`
/// is nonzero (and `+1` where it vanishes), for real-valued `g`.
///
/// Requires `g` nonzero a.e. on `E` and `E+m` and `|g(t)| = |g(t+m)|` on
/// `E`: windows whose `H`-gap is positive admit no matching `E`, and the
/// builder refuses them.  `norm_sq = 2n|E|`.
pub fn p2_witness(g: &StepFunction, m: i64, e: &StepFunction, n: i64) -> Result<StepFunction> {
    let measure = check_unit_cell_indicator(e)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be nonzero".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if g.pieces().iter().any(|p| !p.value.is_real()) {
        return Err(Error::Unsupported(
            "p2 witness supports real-valued windows only".into(),
        ));
    }
    let abs_g = g.abs_fn();
    // |g(t)| must equal |g(t+m)| across E, and g must not vanish there:
    // otherwise the window keeps a uniform H-gap on E and the family cannot
    // kill the lower frame bound.
    for (shift, label) in [(0i64, "E"), (m, "E+m")] {
        let on_block = e.translate(&rint(shift)).mul(g);
        let covered: Rat = on_block
            .pieces()
            .iter()
            .map(|p| &p.hi - &p.lo)
            .sum();
        if covered != measure {
            return Err(Error::InvalidParameter(format!(
                "window vanishes on part of {label}"
            )));
        }
    }
    let mismatch = e.mul(&abs_g.sub(&abs_g.translate(&rint(-m))));
    if !mismatch.is_zero() {
        return Err(Error::InvalidParameter(
            "no matching E: |g(t)| != |g(t+m)| on E".into(),
        ));
    }

    let sign_g = g.map_values(|v| match v.real_cmp(&Scalar::zero()) {
        Some(std::cmp::Ordering::Less) => -&Scalar::one(),
        Some(std::cmp::Ordering::Greater) => Scalar::one(),
        _ => Scalar::zero(),
    });
    let mut f = StepFunction::zero();
    for i in 0..2 * n {
        let block = e.translate(&rint(i * m));
        let signed = block.mul(&sign_g);
        // +1 where g vanishes under the block
        let gap = block.sub(&signed.map_values(|v| v.abs()));
        let s_i = signed.add(&gap);
        f = if i % 2 == 0 { f.add(&s_i) } else { f.sub(&s_i) };
    }
    Ok(f)
}

/// One row of a witness decay table.
#[derive(Clone, Debug)]
pub struct DecayRow {
    pub n: i64,
    pub norm_sq: f64,
    pub energy: f64,
    pub ratio: f64,
}

/// Evaluate a witness family against the energy oracle over a range of
/// sizes, in parallel.
pub fn decay_table(
    sys: &GaborSystem,
    ns: &[i64],
    builder: impl Fn(i64) -> Result<StepFunction> + Sync,
) -> Result<Vec<DecayRow>> {
    let rows = par::map(ns.to_vec(), |n| -> Result<DecayRow> {
        let f = builder(n)?;
        let norm_sq = f.norm_sq().to_c64().re;
        let ratio = energy_ratio(&f, sys)?.to_c64().re;
        Ok(DecayRow {
            n,
            norm_sq,
            energy: ratio * norm_sq,
            ratio,
        })
    });
    rows.into_iter().collect()
}

/// A named family bound to its target system, for table generation.
pub struct WitnessFamily {
    pub name: &'static str,
    pub expected: &'static str,
    pub system: GaborSystem,
    builder: Box<dyn Fn(i64) -> Result<StepFunction> + Sync + Send>,
}

impl WitnessFamily {
    pub fn new(
        name: &'static str,
        expected: &'static str,
        system: GaborSystem,
        builder: impl Fn(i64) -> Result<StepFunction> + Sync + Send + 'static,
    ) -> Self {
        WitnessFamily {
            name,
            expected,
            system,
            builder: Box::new(builder),
        }
    }

    pub fn build(&self, n: i64) -> Result<StepFunction> {
        (self.builder)(n)
    }

    pub fn table(&self, ns: &[i64]) -> Result<Vec<DecayRow>> {
        decay_table(&self.system, ns, &self.builder)
    }
}

/// The built-in families reachable from the command line.
pub fn builtin_families() -> Vec<WitnessFamily> {
    let chi = |c: i64| StepFunction::indicator(rint(0), rint(c)).unwrap();
    let unit_e = StepFunction::indicator(rint(0), rint(1)).unwrap();
    vec![
        WitnessFamily::new(
            "case1",
            "energy ratio <= C/n against (chi[0,2), 1, 1)",
            GaborSystem::new(chi(2), Rat::one(), Rat::one()).unwrap(),
            |n| case1_witness(&Rat::one(), n),
        ),
        WitnessFamily::new(
            "case2",
            "energy = 5/2 against (chi[0,3), 1, 1), ratio = 5/(3n)",
            GaborSystem::new(chi(3), Rat::one(), Rat::one()).unwrap(),
            |n| case2_witness(&Rat::one(), n),
        ),
        WitnessFamily::new(
            "riesz",
            "norm_sq = 2 independent of size (g = chi[0,2))",
            GaborSystem::new(chi(2), Rat::one(), Rat::one()).unwrap(),
            |k| riesz_witness(2, k),
        ),
        WitnessFamily::new(
            "p3",
            "energy ratio -> 0 against ((1/2)chi[0,2) - chi[2,3), 1, 1)",
            GaborSystem::new(
                chi(2)
                    .scale(&Scalar::from_rat(crate::scalar::rat(1, 2)))
                    .sub(&StepFunction::indicator(rint(2), rint(3)).unwrap()),
                Rat::one(),
                Rat::one(),
            )
            .unwrap(),
            move |n| p3_witness(&StepFunction::indicator(rint(0), rint(1)).unwrap(), n),
        ),
        WitnessFamily::new(
            "p2",
            "energy ratio -> 0 against (chi[0,2), 1, 1)",
            GaborSystem::new(chi(2), Rat::one(), Rat::one()).unwrap(),
            move |n| {
                p2_witness(
                    &StepFunction::indicator(rint(0), rint(2)).unwrap(),
                    1,
                    &unit_e,
                    n,
                )
            },
        ),
    ]
}
