//! Harish-Chandra images: projection of normal-ordered elements onto the
//! diagonal modes, the series `λ_i(z)`, `λ'_i(z)` and the Miura and
//! Wakimoto forms of the images of `ℓ_k(z)`.

mod pi;

use itertools::Itertools;

use crate::algebra::{AlgElem, ASeries, Engine, LCalc, OrderingKind, TruncPolicy};
use crate::coeff::{Field, Module, QCtx, Ring};
use crate::error::{invalid, Error, Result};
use crate::sugawara::{ell_bar_trace, plus_ctx, EllMethod, SugawaraCtx, Trace34};

pub use pi::{invert_minus, minus_series, plus_series, PiElem, PiMono, PiSeries};

/// `χ` (standard ordering) or `χ'` (opposite ordering) of an element normal
/// ordered for `ord`: words with an off-diagonal generator are dropped.
pub fn hc_project<F: Field>(x: &AlgElem<F>, ord: OrderingKind, cap: u32) -> Result<PiElem<F>> {
    if !x.is_ordered_for(ord) {
        return Err(Error::NotNormalOrdered(format!("input is not normal ordered for the {} ordering", ord.name())));
    }
    let mut out = PiElem::zero().with_cap(cap);
    for (w, c) in x.terms() {
        if w.iter().all(|g| g.i == g.j) {
            let m = w.iter().fold(PiMono::one(), |m, g| m.mul(&PiMono::var(g.sign, g.i as usize, g.r as usize)));
            out.add_term(m, c.clone());
        }
    }
    Ok(out)
}

pub fn hc_project_series<F: Field>(s: &ASeries<F>, ord: OrderingKind, cap: u32) -> Result<PiSeries<F>> {
    s.try_map(|c| hc_project(c, ord, cap))
}

/// Truncation data for series in the commutative target.
#[derive(Clone, Copy, Debug)]
pub struct PiTrunc {
    pub d_plus: u32,
    pub cap: u32,
}

impl PiTrunc {
    /// Largest exponent computed exactly.
    pub fn hi(&self) -> i64 {
        self.d_plus as i64 - self.cap as i64
    }
}

impl From<&TruncPolicy> for PiTrunc {
    fn from(t: &TruncPolicy) -> Self {
        PiTrunc { d_plus: t.d_plus, cap: t.cap() }
    }
}

fn shifted<F: Field>(ctx: &QCtx<F>, s: &PiSeries<F>, e: i64) -> Result<PiSeries<F>> {
    s.rescale(&ctx.q_pow(e))
}

fn minus_at<F: Field>(ctx: &QCtx<F>, m: usize, e: i64, t: PiTrunc) -> Result<PiSeries<F>> {
    shifted(ctx, &minus_series(m, t.cap), e)
}

fn inv_minus_at<F: Field>(ctx: &QCtx<F>, m: usize, e: i64, t: PiTrunc) -> Result<PiSeries<F>> {
    invert_minus(&minus_at(ctx, m, e, t)?, t.cap)
}

/// `λ_i(z)`, or `λ'_i(z)` when `primed`.
pub fn lambda<F: Field>(ctx: &QCtx<F>, n: usize, i: usize, primed: bool, t: PiTrunc) -> Result<PiSeries<F>> {
    let nn = n as i64;
    let mut acc = plus_series::<F>(i, t.d_plus, t.cap).scale_by(&ctx.q_pow(nn - 2 * i as i64 + 1));
    let (num, den): (Vec<(usize, i64)>, Vec<(usize, i64)>) = if primed {
        (
            (i + 1..=n).map(|m| (m, nn - 2 * m as i64 + 2)).collect(),
            (i..=n).map(|m| (m, nn - 2 * m as i64)).collect(),
        )
    } else {
        (
            (1..i).map(|m| (m, -nn + 2 * m as i64)).collect(),
            (1..=i).map(|m| (m, -nn + 2 * m as i64 - 2)).collect(),
        )
    };
    for (m, e) in num {
        acc = acc.mul(&minus_at(ctx, m, e, t)?);
    }
    for (m, e) in den {
        acc = acc.mul(&inv_minus_at(ctx, m, e, t)?);
    }
    Ok(acc)
}

/// `Σ_{i_1<⋯<i_k} f_{i_1}(z) f_{i_2}(zq^{-2}) ⋯ f_{i_k}(zq^{-2k+2})`, with
/// decreasing index tuples when `decreasing`.
pub fn elementary<F: Field>(
    ctx: &QCtx<F>,
    f: &[PiSeries<F>],
    k: usize,
    decreasing: bool,
) -> Result<PiSeries<F>> {
    let mut total = PiSeries::zero();
    for idx in (0..f.len()).combinations(k) {
        let idx: Vec<usize> = if decreasing { idx.into_iter().rev().collect() } else { idx };
        let mut acc = PiSeries::one();
        for (a, &i) in idx.iter().enumerate() {
            acc = acc.mul(&shifted(ctx, &f[i], -2 * a as i64)?);
        }
        total = total.add(&acc);
    }
    Ok(total)
}

/// The predicted image of `ℓ_k(z)` under `χ`, or under `χ'` when `primed`.
pub fn hc_formula<F: Field>(ctx: &QCtx<F>, n: usize, k: usize, primed: bool, t: PiTrunc) -> Result<PiSeries<F>> {
    let lams: Vec<PiSeries<F>> = (1..=n).map(|i| lambda(ctx, n, i, primed, t)).collect::<Result<_>>()?;
    Ok(elementary(ctx, &lams, k, primed)?.with_hi(t.hi()))
}

fn compare_window<F: Field>(a: &PiSeries<F>, b: &PiSeries<F>, window: (i64, i64)) -> Result<Option<String>> {
    for e in window.0..=window.1 {
        let (x, y) = (a.coeff(e)?, b.coeff(e)?);
        if x != y {
            return Ok(Some(format!("z^{e}: computed {x}, predicted {y}")));
        }
    }
    Ok(None)
}

/// Compares the projection of `ℓ_k(z)` with the predicted image on `window`.
/// The engine's ordering selects `χ` or `χ'`.
pub fn hc_image_witness<F: Field>(
    eng: &Engine<F>,
    k: usize,
    trunc: &TruncPolicy,
    window: (i64, i64),
) -> Result<Option<String>> {
    let cx = SugawaraCtx::new(LCalc::new(eng, trunc));
    let ord = eng.ordering();
    let got = hc_project_series(&Trace34.ell(&cx, k)?, ord, trunc.cap())?;
    let want = hc_formula(eng.ctx(), eng.n(), k, ord == OrderingKind::Opposite, trunc.into())?;
    compare_window(&got, &want, window)
}

/// `χ(x y) = χ(x) χ(y)` for coefficients of `ℓ_1(z)` on `window`, modulo `l-`
/// degree above `p_minus - 1`. The factors are computed with enough extra
/// `l-` depth that their product is exact at that truncation.
pub fn hc_multiplicative_witness<F: Field>(
    eng: &Engine<F>,
    p_minus: u32,
    window: (i64, i64),
) -> Result<Option<String>> {
    let cap = p_minus - 1;
    let extra = window.1.max(0) as u32;
    let trunc = TruncPolicy::for_window(p_minus + extra, window.1)?;
    let cx = SugawaraCtx::new(LCalc::new(eng, &trunc));
    let l = Trace34.ell(&cx, 1)?;
    let ord = eng.ordering();
    for e in window.0..=window.1 {
        for f in window.0..=window.1 {
            let (x, y) = (l.coeff(e)?, l.coeff(f)?);
            let got = hc_project(&eng.mul(&x, &y, Some(cap))?, ord, cap)?;
            let want = hc_project(&x, ord, cap)?.mul(&hc_project(&y, ord, cap)?);
            if got != want {
                return Ok(Some(format!("coefficients z^{e}, z^{f}: {got} against {want}")));
            }
        }
    }
    Ok(None)
}

/// `χ(ℓ̄_k(z))` with `l+_i[0] = 1` against the `δ^k` coefficient of
/// `(1 + λ̄_1(z)δ) ⋯ (1 + λ̄_n(z)δ)`, `λ̄_i(z) = q^{n-2i+1} l+_i(z)`, for all k.
pub fn miura_witness<F: Field>(eng: &Engine<F>, d_plus: u32, window: (i64, i64)) -> Result<Option<String>> {
    let n = eng.n();
    let ctx = eng.ctx();
    let cx = plus_ctx(eng, d_plus);
    // δ-polynomial: entry m is the coefficient of δ^m
    let mut poly: Vec<PiSeries<F>> = vec![PiSeries::one()];
    for i in 1..=n {
        let lam = plus_series::<F>(i, d_plus, 0)
            .map(|c| c.plus_zero_modes_one())
            .scale_by(&ctx.q_pow(n as i64 - 2 * i as i64 + 1));
        let mut next = poly.clone();
        next.push(PiSeries::zero());
        for m in 1..next.len() {
            next[m] = next[m].add(&poly[m - 1].mul(&shifted(ctx, &lam, -2 * (m as i64 - 1))?));
        }
        poly = next;
    }
    for (k, want) in poly.iter().enumerate().skip(1) {
        let want = &want.clone().with_hi(d_plus as i64);
        let got = hc_project_series(&ell_bar_trace(&cx, k)?, eng.ordering(), 0)?.map(|c| c.plus_zero_modes_one());
        if let Some(w) = compare_window(&got, want, window)? {
            return Ok(Some(format!("k = {k}: {w}")));
        }
    }
    Ok(None)
}

/// The specialization `l+_i(z) ↦ κ+_i(z)`, `l-_i(z) ↦ κ-(z)`: all `l-` modes
/// and all zero modes are identified with those of index 1.
pub fn wakimoto_specialize<F: Field>(x: &PiElem<F>) -> PiElem<F> {
    x.rename(|i| i, |_| 1, |_| Some(1))
}

/// Specialized image of `ℓ_k(z)` against `Σ Λ_{i_1}(z) ⋯ Λ_{i_k}(zq^{-2k+2})`,
/// `Λ_i(z) = q^{n-2i+1} κ+_i(z) κ-(zq^{-n})^{-1}`.
pub fn wakimoto_witness<F: Field>(ctx: &QCtx<F>, n: usize, k: usize, t: PiTrunc) -> Result<Option<String>> {
    if k == 0 || k > n {
        return invalid(format!("k = {k} outside 1..={n}"));
    }
    let image = hc_formula(ctx, n, k, false, t)?.map(wakimoto_specialize);
    let kappa_minus_inv = inv_minus_at(ctx, 1, -(n as i64), t)?;
    let big: Vec<PiSeries<F>> = (1..=n)
        .map(|i| {
            plus_series::<F>(i, t.d_plus, t.cap)
                .map(wakimoto_specialize)
                .mul(&kappa_minus_inv)
                .scale_by(&ctx.q_pow(n as i64 - 2 * i as i64 + 1))
        })
        .collect();
    let want = elementary(ctx, &big, k, false)?.with_hi(t.hi());
    compare_window(&image, &want, (t.hi() - 2, t.hi()))
}

#[cfg(test)]
mod tests;
