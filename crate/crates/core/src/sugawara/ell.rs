//! The series `ℓ_k(z)` by four constructions, `ℓ̄_k(z)` by two, and the
//! quantum-determinant identities.

use std::sync::{Arc, Mutex};

use itertools::Itertools;
use rayon::prelude::*;

use crate::algebra::{constant, inversions, permutations, ASeries, LCalc, SeriesMat, SeriesOp, Sign};
use crate::coeff::{Field, Module, Ring};
use crate::error::{invalid, Result};
use crate::tensor::{antisymmetrizer_with, d_matrix, PermKind, TensorOp};

/// Structural switches used to build deliberately broken variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllOptions {
    pub drop_d: bool,
    pub perm: PermKind,
}

impl Default for EllOptions {
    fn default() -> Self {
        EllOptions { drop_d: false, perm: PermKind::Q }
    }
}

/// Shared inputs: the series calculator and a lazily computed `L-(z)^{-1}`.
pub struct SugawaraCtx<'e, F: Field> {
    pub calc: LCalc<'e, F>,
    pub opts: EllOptions,
    linv: Mutex<Option<Arc<SeriesMat<F>>>>,
}

impl<'e, F: Field> SugawaraCtx<'e, F> {
    pub fn new(calc: LCalc<'e, F>) -> Self {
        SugawaraCtx { calc, opts: EllOptions::default(), linv: Mutex::new(None) }
    }

    pub fn with_options(mut self, opts: EllOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn n(&self) -> usize {
        self.calc.n()
    }

    pub fn l_minus_inv(&self) -> Result<Arc<SeriesMat<F>>> {
        let mut g = self.linv.lock().unwrap();
        if let Some(m) = g.as_ref() {
            return Ok(m.clone());
        }
        let m = Arc::new(self.calc.l_minus_inv()?);
        *g = Some(m.clone());
        Ok(m)
    }

    fn d_entry(&self, i: usize) -> F {
        if self.opts.drop_d {
            F::one()
        } else {
            self.calc.q_pow(self.n() as i64 - 2 * i as i64 + 1)
        }
    }

    /// `D_1 ⋯ D_k` (the identity when D is dropped).
    pub fn dd(&self, k: usize) -> TensorOp<F> {
        let n = self.n();
        if self.opts.drop_d {
            return TensorOp::identity(n, k);
        }
        let d = d_matrix(self.calc.engine().ctx(), n);
        (1..=k).fold(TensorOp::identity(n, k), |acc, a| acc.mul(&d.embed_one_leg(a, k).expect("leg in range")))
    }

    pub fn antisym(&self, k: usize) -> TensorOp<F> {
        antisymmetrizer_with(self.calc.engine().ctx(), self.n(), k, self.opts.perm)
    }

    /// `l̃_ji(z q^e) = [L-(zq^e)^{-1}]_ji D_ii`.
    pub fn l_tilde(&self, j: usize, i: usize, e: i64) -> Result<ASeries<F>> {
        let linv = self.l_minus_inv()?;
        Ok(self.calc.shift(&linv[j - 1][i - 1], e)?.scale_by(&self.d_entry(i)))
    }

    fn plus_leg(&self, leg: usize, k: usize, e: i64) -> Result<SeriesOp<F>> {
        let m = self.calc.l_matrix(Sign::Plus)?;
        let m: SeriesMat<F> =
            m.iter().map(|r| r.iter().map(|s| self.calc.shift(s, e)).collect::<Result<_>>()).collect::<Result<_>>()?;
        self.calc.leg_op(&m, leg, k)
    }

    fn inv_leg(&self, leg: usize, k: usize, e: i64) -> Result<SeriesOp<F>> {
        let linv = self.l_minus_inv()?;
        let m: SeriesMat<F> = linv
            .iter()
            .map(|r| r.iter().map(|s| self.calc.shift(s, e)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        self.calc.leg_op(&m, leg, k)
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            return invalid(format!("k = {k} outside 1..={}", self.n()));
        }
        Ok(())
    }
}

/// A construction of `ℓ_k(z)`.
pub trait EllMethod<F: Field>: Send + Sync {
    fn name(&self) -> &'static str;
    fn ell(&self, cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>>;
}

/// `tr A L+_1(z)⋯L+_k(zq^{-2k+2}) L-_k(zq^{-n-2k+2})^{-1}⋯L-_1(zq^{-n})^{-1} D_1⋯D_k`.
pub struct Trace34;

/// `tr L+_k(v_k)⋯L+_1(v_1) L-_1(v_1q^{-n})^{-1}⋯L-_k(v_kq^{-n})^{-1} D_1⋯D_k A`.
pub struct Trace39;

/// Minor expansion with `(-q)^{-l(σ)}` and increasing shifts on the `l+` side.
pub struct Minor41;

/// Minor expansion with `(-q)^{l(σ)}` and reversed factors.
pub struct Minor42;

impl<F: Field> EllMethod<F> for Trace34 {
    fn name(&self) -> &'static str {
        "trace34"
    }

    fn ell(&self, cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>> {
        cx.check_k(k)?;
        let n = cx.n() as i64;
        let c = &cx.calc;
        let mut m = c.scalar_op(&cx.dd(k));
        for a in 1..=k {
            m = c.op_mul(&cx.inv_leg(a, k, -n - 2 * a as i64 + 2)?, &m)?;
        }
        for a in (1..=k).rev() {
            m = c.op_mul(&cx.plus_leg(a, k, -2 * a as i64 + 2)?, &m)?;
        }
        Ok(c.trace_against(&cx.antisym(k), &m))
    }
}

impl<F: Field> EllMethod<F> for Trace39 {
    fn name(&self) -> &'static str {
        "trace39"
    }

    fn ell(&self, cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>> {
        cx.check_k(k)?;
        let n = cx.n() as i64;
        let c = &cx.calc;
        let mut m = c.scalar_op(&cx.dd(k).mul(&cx.antisym(k)));
        for a in (1..=k).rev() {
            m = c.op_mul(&cx.inv_leg(a, k, -2 * a as i64 + 2 - n)?, &m)?;
        }
        for a in 1..=k {
            m = c.op_mul(&cx.plus_leg(a, k, -2 * a as i64 + 2)?, &m)?;
        }
        Ok(c.trace_against(&TensorOp::identity(cx.n(), k), &m))
    }
}

/// `Σ_{j} Σ_{i_1<⋯<i_k}` of `(Σ_σ c_σ · left_σ) · right`, each summand built by the closures.
fn minor_sum<F: Field>(
    cx: &SugawaraCtx<F>,
    k: usize,
    left: impl Fn(&[usize], &[usize], &[usize]) -> Result<ASeries<F>> + Sync,
    right: impl Fn(&[usize], &[usize]) -> Result<ASeries<F>> + Sync,
) -> Result<ASeries<F>> {
    cx.check_k(k)?;
    let n = cx.n();
    let is: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
    let js: Vec<Vec<usize>> = (0..k).map(|_| 1..=n).multi_cartesian_product().collect();
    let jobs: Vec<(&Vec<usize>, &Vec<usize>)> = is.iter().cartesian_product(js.iter()).collect();
    let parts: Vec<ASeries<F>> = jobs
        .par_iter()
        .map(|(i, j)| {
            let r = right(i, j)?;
            if r.is_zero() {
                return Ok(ASeries::zero());
            }
            let mut l = ASeries::zero();
            for sigma in permutations(k) {
                l = l.add(&left(i, j, &sigma)?);
            }
            cx.calc.mul(&l, &r)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(ASeries::zero(), |s, t| s.add(&t)))
}

/// Product of `l+` factors `(row, col, shift)` listed left to right.
fn plus_product<F: Field>(cx: &SugawaraCtx<F>, factors: &[(usize, usize, i64)]) -> Result<ASeries<F>> {
    let mut acc = constant(F::one());
    for &(i, j, e) in factors.iter().rev() {
        acc = cx.calc.mul(&cx.calc.shift(&cx.calc.l_plus(i, j), e)?, &acc)?;
    }
    Ok(acc)
}

/// Product of `l̃` factors `(row, col, shift)` listed left to right.
fn tilde_product<F: Field>(cx: &SugawaraCtx<F>, factors: &[(usize, usize, i64)]) -> Result<ASeries<F>> {
    let mut acc = constant(F::one());
    for &(j, i, e) in factors.iter().rev() {
        acc = cx.calc.mul(&cx.l_tilde(j, i, e)?, &acc)?;
    }
    Ok(acc)
}

fn mq_pow<F: Field>(cx: &SugawaraCtx<F>, e: i64) -> F {
    cx.calc.q_pow(1).neg().powi(e).expect("q is nonzero")
}

impl<F: Field> EllMethod<F> for Minor41 {
    fn name(&self) -> &'static str {
        "minor41"
    }

    fn ell(&self, cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>> {
        let n = cx.n() as i64;
        minor_sum(
            cx,
            k,
            |i, j, sigma| {
                let f: Vec<_> = (0..k).map(|a| (i[sigma[a]], j[a], -2 * a as i64)).collect();
                Ok(plus_product(cx, &f)?.scale_by(&mq_pow(cx, -(inversions(sigma) as i64))))
            },
            |i, j| {
                let f: Vec<_> = (0..k).rev().map(|a| (j[a], i[a], -n - 2 * a as i64)).collect();
                tilde_product(cx, &f)
            },
        )
    }
}

impl<F: Field> EllMethod<F> for Minor42 {
    fn name(&self) -> &'static str {
        "minor42"
    }

    fn ell(&self, cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>> {
        let n = cx.n() as i64;
        minor_sum(
            cx,
            k,
            |i, j, sigma| {
                // l+_{i_σ(k) j_k}(z) ⋯ l+_{i_σ(1) j_1}(zq^{-2k+2})
                let f: Vec<_> = (0..k).rev().map(|a| (i[sigma[a]], j[a], -2 * (k - 1 - a) as i64)).collect();
                Ok(plus_product(cx, &f)?.scale_by(&mq_pow(cx, inversions(sigma) as i64)))
            },
            |i, j| {
                // l̃_{j_1 i_1}(zq^{-n-2k+2}) ⋯ l̃_{j_k i_k}(zq^{-n})
                let f: Vec<_> = (0..k).map(|a| (j[a], i[a], -n - 2 * (k - 1 - a) as i64)).collect();
                tilde_product(cx, &f)
            },
        )
    }
}

/// All registered constructions of `ℓ_k(z)`.
pub fn ell_methods<F: Field>() -> Vec<Box<dyn EllMethod<F>>> {
    vec![Box::new(Trace34), Box::new(Trace39), Box::new(Minor41), Box::new(Minor42)]
}

pub fn ell_method<F: Field>(name: &str) -> Result<Box<dyn EllMethod<F>>> {
    ell_methods().into_iter().find(|m| m.name() == name).map_or_else(
        || invalid(format!("unknown method {name}; known: trace34, trace39, minor41, minor42")),
        Ok,
    )
}

/// `ℓ̄_k(z) = tr A L+_1(z)⋯L+_k(zq^{-2k+2}) D_1⋯D_k`.
pub fn ell_bar_trace<F: Field>(cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>> {
    cx.check_k(k)?;
    let c = &cx.calc;
    let mut m = c.scalar_op(&cx.dd(k));
    for a in (1..=k).rev() {
        m = c.op_mul(&cx.plus_leg(a, k, -2 * a as i64 + 2)?, &m)?;
    }
    Ok(c.trace_against(&cx.antisym(k), &m))
}

/// `ℓ̄_k(z)` as the sum of principal quantum minors of `L+(z) D`.
pub fn ell_bar_minors<F: Field>(cx: &SugawaraCtx<F>, k: usize) -> Result<ASeries<F>> {
    cx.check_k(k)?;
    let c = &cx.calc;
    let entry = |i: usize, j: usize| Ok(c.l_plus(i, j).scale_by(&cx.d_entry(j)));
    let mut acc = ASeries::zero();
    for a in (1..=cx.n()).combinations(k) {
        acc = acc.add(&c.minor_of(&entry, &a, &a)?);
    }
    Ok(acc)
}

/// `qdet L+(z) · (qdet L-(zq^{-n}))^{-1}`.
pub fn qdet_ratio<F: Field>(cx: &SugawaraCtx<F>) -> Result<ASeries<F>> {
    let c = &cx.calc;
    let minus = c.shift(&c.qdet(Sign::Minus)?, -(cx.n() as i64))?;
    let inv = c.invert_minus_series(&minus)?;
    c.mul(&c.qdet(Sign::Plus)?, &inv)
}

/// `[L-(z)^{-1}]_ij` from quantum minors:
/// `(-q)^{j-i} (qdet L-(zq^{2n-2}))^{-1} L-(zq^{2n-2})^{1..ĵ..n}_{1..î..n}`.
pub fn inverse_by_minors<F: Field>(cx: &SugawaraCtx<F>) -> Result<SeriesMat<F>> {
    let c = &cx.calc;
    let n = cx.n();
    let e = 2 * n as i64 - 2;
    let det_inv = c.invert_minus_series(&c.shift(&c.qdet(Sign::Minus)?, e)?)?;
    let entry = |i: usize, j: usize| c.shift(&c.l_minus(i, j)?, e);
    let mut out = vec![vec![ASeries::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let rows: Vec<usize> = (1..=n).filter(|&x| x != j).collect();
            let cols: Vec<usize> = (1..=n).filter(|&x| x != i).collect();
            let minor = if rows.is_empty() { constant(F::one()) } else { c.minor_of(&entry, &rows, &cols)? };
            let sign = mq_pow(cx, j as i64 - i as i64);
            out[i - 1][j - 1] = c.mul(&det_inv, &minor)?.scale_by(&sign);
        }
    }
    Ok(out)
}
