//! Frame-operator machinery in the `1/b`-inner product: compressed
//! application of the frame operator and (pre)frame transform, the banded
//! Walnut-style matrix representation, the fundamental decomposition
//! through the `alpha`/`phi` characteristic-function frames, and the
//! `beta`/`gamma`/`psi` construction with `S^psi = (S^b)^{-1/2}`.
//!
//! Every operator is represented by its compressed action on step
//! functions; the `m`-sums over modulations never appear.  Compact supports
//! keep all translation sums finite.

use crate::gabor::{bracket, gk_table, overlap_range, GaborSystem};
use crate::par;
use crate::sample::random_step;
use crate::scalar::{rint, Rat, Scalar};
use crate::stepfn::{PeriodicStepFunction, StepFunction};
use crate::{Error, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;

/// The characteristic-function window families used by the operator decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `e_k = T_{k/b} chi_{[0,1/b)}` — the 1/b-orthonormal basis cells.
    E,
    /// `alpha_k = T_{ka} chi_{[0,a)}`.
    Alpha,
    /// `phi_k = T_{k/b} chi_{[0,a)}`.
    Phi,
    /// `beta_k = T_{ka} chi_{[0,1/b)}`.
    Beta,
    /// `gamma_k = T_{ka} gamma_0`, the tight-frame window of the half-overlap construction.
    Gamma,
    /// `psi_k = T_{ka} psi_0`, with `S^psi = (S^b)^{-1/2}`.
    Psi,
}

/// A translated family `member(k) = T_{shift(k)}(generator)`, where the
/// shift step is `1/b` for `e`/`phi` and `a` for the others.
#[derive(Clone, Debug)]
pub struct WindowFamily {
    pub kind: FamilyKind,
    a: Rat,
    b: Rat,
    pub generator: StepFunction,
}

fn inv(b: &Rat) -> Rat {
    Rat::one() / b
}

fn check_lattice(a: &Rat, b: &Rat) -> Result<()> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::NonPositiveLattice);
    }
    Ok(())
}

/// `delta = 1/b - a`, the overlap defect of the half-overlap construction.
fn delta(a: &Rat, b: &Rat) -> Rat {
    inv(b) - a
}

/// The three-piece half-overlap generator `c (chi_{[0,d)} + chi_{[a,1/b)}) +
/// chi_{[d,a)}` with `d = delta`.
fn bgp_generator(a: &Rat, b: &Rat, c: &Scalar) -> Result<StepFunction> {
    let d = delta(a, b);
    if d.is_zero() {
        return StepFunction::indicator(rint(0), a.clone());
    }
    let mut pieces = vec![
        (rint(0), d.clone(), c.clone()),
        (d.clone(), a.clone(), Scalar::one()),
        (a.clone(), inv(b), c.clone()),
    ];
    pieces.retain(|(lo, hi, _)| lo < hi);
    StepFunction::make(pieces)
}

fn check_bgp_band(a: &Rat, b: &Rat) -> Result<()> {
    let ab = a * b;
    if ab < crate::scalar::rat(1, 2) || ab > Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "beta/gamma/psi construction requires 1/2 <= ab <= 1, got ab = {ab}"
        )));
    }
    Ok(())
}

impl WindowFamily {
    pub fn new(kind: FamilyKind, a: &Rat, b: &Rat) -> Result<Self> {
        check_lattice(a, b)?;
        let generator = match kind {
            FamilyKind::E | FamilyKind::Beta => StepFunction::indicator(rint(0), inv(b))?,
            FamilyKind::Alpha | FamilyKind::Phi => {
                if a > &inv(b) {
                    return Err(Error::InvalidParameter(
                        "alpha/phi families require a <= 1/b".into(),
                    ));
                }
                StepFunction::indicator(rint(0), a.clone())?
            }
            FamilyKind::Gamma => {
                check_bgp_band(a, b)?;
                let c = Scalar::from_f64(std::f64::consts::FRAC_1_SQRT_2);
                bgp_generator(a, b, &c)?
            }
            FamilyKind::Psi => {
                check_bgp_band(a, b)?;
                // 1/sqrt(2 sqrt 2) = 2^(-3/4)
                let c = Scalar::from_f64(2f64.powf(-0.75));
                bgp_generator(a, b, &c)?
            }
        };
        Ok(WindowFamily {
            kind,
            a: a.clone(),
            b: b.clone(),
            generator,
        })
    }

    pub fn shift_step(&self) -> Rat {
        match self.kind {
            FamilyKind::E | FamilyKind::Phi => inv(&self.b),
            _ => self.a.clone(),
        }
    }

    pub fn member(&self, k: i64) -> StepFunction {
        self.generator.translate(&(rint(k) * self.shift_step()))
    }
}

/// `S_g f = (1/b) sum_n <f, T_{na} g>_{1/b}(t) T_{na} g`, exactly.
pub fn apply_frame_operator(sys: &GaborSystem, f: &StepFunction) -> Result<StepFunction> {
    let g = sys.window();
    let p = sys.inv_b();
    let terms = par::map(overlap_range(f, g, sys.a()), |n| -> Result<StepFunction> {
        let tg = g.translate(&(rint(n) * sys.a()));
        let br = bracket(f, &tg, &p)?;
        Ok(tg.mul_periodic(&br))
    });
    let mut acc = StepFunction::zero();
    for t in terms {
        acc = acc.add(&t?);
    }
    Ok(acc.scale(&Scalar::from_rat(p)))
}

/// Preframe operator: `T f = sqrt(1/b) sum_k <f, e_k>_{1/b}(t) T_{ka} g`.
pub fn apply_preframe(sys: &GaborSystem, f: &StepFunction) -> Result<StepFunction> {
    let g = sys.window();
    let p = sys.inv_b();
    let e0 = StepFunction::indicator(rint(0), p.clone())?;
    let mut acc = StepFunction::zero();
    for k in overlap_range(f, &e0, &p) {
        let ek = e0.translate(&(rint(k) * &p));
        let br = bracket(f, &ek, &p)?;
        let tg = g.translate(&(rint(k) * sys.a()));
        acc = acc.add(&tg.mul_periodic(&br));
    }
    Ok(acc.scale(&Scalar::from_rat(p).sqrt()))
}

/// Adjoint: `T* f = sqrt(1/b) sum_k <f, T_{ka} g>_{1/b}(t) e_k`.
pub fn apply_adjoint(sys: &GaborSystem, f: &StepFunction) -> Result<StepFunction> {
    let g = sys.window();
    let p = sys.inv_b();
    let e0 = StepFunction::indicator(rint(0), p.clone())?;
    let mut acc = StepFunction::zero();
    for k in overlap_range(f, g, sys.a()) {
        let tg = g.translate(&(rint(k) * sys.a()));
        let br = bracket(f, &tg, &p)?;
        let ek = e0.translate(&(rint(k) * &p));
        acc = acc.add(&ek.mul_periodic(&br));
    }
    Ok(acc.scale(&Scalar::from_rat(p).sqrt()))
}

/// Width of the Walnut band: entries vanish for `|j - k|` beyond
/// `ceil(b * diam(supp g))`.
pub fn walnut_band(sys: &GaborSystem) -> i64 {
    let g = sys.window();
    match (g.supp_lo(), g.supp_hi()) {
        (Some(lo), Some(hi)) => ((hi - lo) * sys.b())
            .ceil()
            .to_integer()
            .to_i64()
            .unwrap_or(0),
        _ => 0,
    }
}

/// The `(j, k)` entry of the Walnut-style matrix:
/// `<<T_{-j/b} g, T_{-k/b} g>_a, e_0>_{1/b}` — a `1/b` section of an
/// `a`-periodic function, extended `1/b`-periodically.
pub fn walnut_entry(sys: &GaborSystem, j: i64, k: i64) -> Result<PeriodicStepFunction> {
    let g = sys.window();
    let p = sys.inv_b();
    let gj = g.translate(&(-rint(j) * &p));
    let gk = g.translate(&(-rint(k) * &p));
    let inner = bracket(&gj, &gk, sys.a())?;
    let cell = StepFunction::indicator(rint(0), p.clone())?.mul_periodic(&inner);
    PeriodicStepFunction::new(p, cell)
}

/// Apply the frame operator through its Walnut representation:
/// `S f = (1/b) sum_k <f, e_k>_{1/b}(t) sum_j entry(j,k) e_j`.
pub fn apply_via_walnut(sys: &GaborSystem, f: &StepFunction) -> Result<StepFunction> {
    let p = sys.inv_b();
    let e0 = StepFunction::indicator(rint(0), p.clone())?;
    let band = walnut_band(sys);
    let mut acc = StepFunction::zero();
    for k in overlap_range(f, &e0, &p) {
        let ek = e0.translate(&(rint(k) * &p));
        let brk = bracket(f, &ek, &p)?;
        if brk.is_zero() {
            continue;
        }
        for j in (k - band)..=(k + band) {
            let entry = walnut_entry(sys, j, k)?;
            if entry.is_zero() {
                continue;
            }
            let ej = e0.translate(&(rint(j) * &p));
            acc = acc.add(&ej.mul_periodic(&entry).mul_periodic(&brk));
        }
    }
    Ok(acc.scale(&Scalar::from_rat(p)))
}

/// The fundamental window `h = sum_j G_j phi_j` with
/// `phi_j = T_{j/b} chi_{[0,a)}`; requires `ab <= 1`.  (Equivalently
/// `h = sum_j G_{-j}(t - j/b) phi_j` when the window is real, since
/// `conj G_{-j}(t - j/b) = G_j(t)`; the unconjugated form is the one that
/// reproduces the frame operator for complex windows.)
pub fn fundamental_window(sys: &GaborSystem) -> Result<StepFunction> {
    let p = sys.inv_b();
    if sys.a() > &p {
        return Err(Error::InvalidParameter(
            "fundamental decomposition requires ab <= 1".into(),
        ));
    }
    let table = gk_table(sys);
    let phi0 = StepFunction::indicator(rint(0), sys.a().clone())?;
    let mut h = StepFunction::zero();
    for k in table.krange() {
        let phi_k = phi0.translate(&(rint(k) * &p));
        h = h.add(&phi_k.mul_periodic(&table.get(k)));
    }
    Ok(h)
}

/// `S f = (1/b) sum_k <f, alpha_k>_{1/b}(t) T_{ka} h` with
/// `alpha_k = T_{ka} chi_{[0,a)}` and `h` the fundamental window.
pub fn fundamental_decomposition_apply(sys: &GaborSystem, f: &StepFunction) -> Result<StepFunction> {
    let p = sys.inv_b();
    let h = fundamental_window(sys)?;
    let alpha0 = StepFunction::indicator(rint(0), sys.a().clone())?;
    let mut acc = StepFunction::zero();
    for k in overlap_range(f, &alpha0, sys.a()) {
        let ak = alpha0.translate(&(rint(k) * sys.a()));
        let br = bracket(f, &ak, &p)?;
        if br.is_zero() {
            continue;
        }
        acc = acc.add(&h.translate(&(rint(k) * sys.a())).mul_periodic(&br));
    }
    Ok(acc.scale(&Scalar::from_rat(p)))
}

/// Apply `L f = sum_k <f, T_{ka} w>_{1/b}(t) T_{ka} w` for a generator `w`
/// on the `a`-translation lattice — the Gram-normalized frame operators `S^b`
/// (`w = beta_0`) and `S^psi` (`w = psi_0`), which absorb the `1/b` factor
/// into the normalization.
fn apply_translated_gram(w: &StepFunction, a: &Rat, b: &Rat, f: &StepFunction) -> Result<StepFunction> {
    let p = inv(b);
    let mut acc = StepFunction::zero();
    for k in overlap_range(f, w, a) {
        let wk = w.translate(&(rint(k) * a));
        let br = bracket(f, &wk, &p)?;
        acc = acc.add(&wk.mul_periodic(&br));
    }
    Ok(acc)
}

/// The half-overlap triple `(beta, gamma, psi)` for `1/2 <= ab <= 1`.
pub fn build_bgp(a: &Rat, b: &Rat) -> Result<(WindowFamily, WindowFamily, WindowFamily)> {
    check_lattice(a, b)?;
    check_bgp_band(a, b)?;
    Ok((
        WindowFamily::new(FamilyKind::Beta, a, b)?,
        WindowFamily::new(FamilyKind::Gamma, a, b)?,
        WindowFamily::new(FamilyKind::Psi, a, b)?,
    ))
}

pub fn apply_s_b(a: &Rat, b: &Rat, f: &StepFunction) -> Result<StepFunction> {
    let beta = WindowFamily::new(FamilyKind::Beta, a, b)?;
    apply_translated_gram(&beta.generator, a, b, f)
}

pub fn apply_s_psi(a: &Rat, b: &Rat, f: &StepFunction) -> Result<StepFunction> {
    let psi = WindowFamily::new(FamilyKind::Psi, a, b)?;
    apply_translated_gram(&psi.generator, a, b, f)
}

/// Report of the numeric `S^psi = (S^b)^{-1/2}` verification.
#[derive(Clone, Debug)]
pub struct SqrtInverseReport {
    pub max_err_beta_gamma: f64,
    pub max_err_identity: f64,
    pub trials: usize,
}

/// Verify `S^psi(beta_k) = gamma_k` for `|k| <= 2` and
/// `S^psi S^b S^psi f = f` on `trials` random step functions, reporting the
/// worst absolute and relative errors.
pub fn sqrt_inverse_check(a: &Rat, b: &Rat, trials: usize, seed: u64) -> Result<SqrtInverseReport> {
    let (beta, gamma, _) = build_bgp(a, b)?;
    let mut max_bg: f64 = 0.0;
    for k in -2..=2 {
        let sb = apply_s_psi(a, b, &beta.member(k))?;
        max_bg = max_bg.max(sb.dist(&gamma.member(k)));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut max_id: f64 = 0.0;
    for _ in 0..trials {
        let f = random_step(&mut rng, &rint(0), &rint(2), 8, false);
        let sf = apply_s_psi(a, b, &apply_s_b(a, b, &apply_s_psi(a, b, &f)?)?)?;
        let rel = sf.dist(&f) / f.norm_sq().to_c64().re.sqrt();
        max_id = max_id.max(rel);
    }
    Ok(SqrtInverseReport {
        max_err_beta_gamma: max_bg,
        max_err_identity: max_id,
        trials,
    })
}
