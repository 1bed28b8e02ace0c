//! The extension by commuting `π_1, …, π_n` and the shift operator `δ`.
//!
//! Elements are kept as sums of `z^e · w · π^a · δ^m` with `w` a normal
//! `l+` word, so reduction modulo the left ideal generated by `π_i - 1`
//! amounts to setting every `π` to one.

use std::collections::BTreeMap;

use crate::algebra::{ASeries, AlgElem, Engine, LCalc};
use crate::coeff::{Field, Module, Ring};
use crate::error::{invalid, Result};
use crate::tensor::{antisymmetrizer_with, d_matrix, PermKind};

use super::ell::{ell_bar_trace, SugawaraCtx};

type Key = (i64, Vec<u8>, u32);

/// Element of the extended algebra, exact for `z` exponents up to `hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem<F: Field> {
    terms: BTreeMap<Key, AlgElem<F>>,
    n: usize,
    hi: i64,
}

impl<F: Field> ExtElem<F> {
    pub fn zero(n: usize, hi: i64) -> Self {
        ExtElem { terms: BTreeMap::new(), n, hi }
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    fn add_term(&mut self, key: Key, c: AlgElem<F>) {
        if key.0 > self.hi || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(AlgElem::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `s(z) δ^m` for a series in the `l+` generators.
    pub fn from_series(n: usize, s: &ASeries<F>, m: u32, hi: i64) -> Self {
        let hi = s.hi().map_or(hi, |h| h.min(hi));
        let mut out = Self::zero(n, hi);
        for (e, c) in s.terms() {
            out.add_term((e, vec![0; n], m), c.clone());
        }
        out
    }

    /// `π_i` (1-based).
    pub fn pi(n: usize, i: usize, hi: i64) -> Self {
        let mut a = vec![0u8; n];
        a[i - 1] = 1;
        let mut out = Self::zero(n, hi);
        out.add_term((0, a, 0), AlgElem::scalar(F::one()));
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.hi = self.hi.min(other.hi);
        out.terms.retain(|k, _| k.0 <= out.hi);
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.n, self.hi);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.scale_by(c));
        }
        out
    }

    /// `(z^e w π^a δ^m)(z^f w' π^b δ^p) = q^{-2mf + 2c} z^{e+f} w w' π^{a+b} δ^{m+p}`,
    /// where `c` counts pairs of `π_i` in `π^a` and letters `l+_{k·}` of `w'` with `i > k`.
    pub fn mul(&self, other: &Self, eng: &Engine<F>) -> Result<Self> {
        let ctx = eng.ctx();
        let mut out = Self::zero(self.n, self.hi.min(other.hi));
        for ((e, a, m), x) in &self.terms {
            for ((f, b, p), y) in &other.terms {
                if e + f > out.hi {
                    continue;
                }
                let mut moved = AlgElem::zero();
                for (w, c) in y.terms() {
                    let pairs: i64 = w
                        .iter()
                        .map(|g| a.iter().enumerate().filter(|&(i, _)| i + 1 > g.i as usize).map(|(_, &t)| t as i64).sum::<i64>())
                        .sum();
                    moved.add_term(w.clone(), c.mul(&ctx.q_pow(2 * pairs)));
                }
                let w = eng.mul(x, &moved, None)?;
                let ab: Vec<u8> = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term((e + f, ab, m + p), w.scale_by(&ctx.q_pow(-2 * (*m as i64) * f)));
            }
        }
        Ok(out)
    }

    /// Reduction modulo the left ideal generated by `π_i - 1`.
    pub fn mod_pi(&self) -> Self {
        let mut out = Self::zero(self.n, self.hi);
        for ((e, _, m), c) in &self.terms {
            out.add_term((*e, vec![0; self.n], *m), c.clone());
        }
        out
    }

    /// First term where the two differ, as a readable witness.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let d = self.add(&other.scale(&F::one().neg()));
        d.terms.iter().next().map(|((e, a, m), c)| format!("z^{e} pi^{a:?} delta^{m}: {c}"))
    }
}

/// Matrix `L+(z) δ` or `L+(z) D δ`; with `delta = false` the shift is omitted.
fn plus_matrix<F: Field>(cx: &SugawaraCtx<F>, with_d: bool, delta: bool) -> Vec<Vec<ExtElem<F>>> {
    let n = cx.n();
    let hi = cx.calc.d_plus() as i64;
    let d = d_matrix(cx.calc.engine().ctx(), n);
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let s = cx.calc.l_plus(i, j);
                    let s = if with_d { s.scale_by(&d.entry(j - 1, j - 1)) } else { s };
                    ExtElem::from_series(n, &s, delta as u32, hi)
                })
                .collect()
        })
        .collect()
}

/// Checks `A M_1 M_2 = A M_1 M_2 A` for `M = L+(z) (D) δ`; returns a witness on failure.
pub fn manin_witness<F: Field>(
    cx: &SugawaraCtx<F>,
    with_d: bool,
    delta: bool,
    kind: PermKind,
) -> Result<Option<String>> {
    let n = cx.n();
    if n < 2 {
        return invalid("the Manin property needs n >= 2");
    }
    let eng = cx.calc.engine();
    let m = plus_matrix(cx, with_d, delta);
    let a = antisymmetrizer_with(eng.ctx(), n, 2, kind);
    let hi = cx.calc.d_plus() as i64;
    let dim = n * n;
    // P_{(i,k),(j,l)} = M_ij M_kl
    let mut p = vec![vec![ExtElem::zero(n, hi); dim]; dim];
    for (r, row) in p.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = m[r / n][c / n].mul(&m[r % n][c % n], eng)?;
        }
    }
    let left = |x: &Vec<Vec<ExtElem<F>>>| -> Vec<Vec<ExtElem<F>>> {
        (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| a.entries().filter(|((ar, _), _)| *ar == r).fold(ExtElem::zero(n, hi), |s, ((_, ac), v)| s.add(&x[*ac][c].scale(v))))
                    .collect()
            })
            .collect()
    };
    let ap = left(&p);
    for r in 0..dim {
        for c in 0..dim {
            let rhs = a.entries().filter(|((_, ac), _)| *ac == c).fold(ExtElem::zero(n, hi), |s, ((ar, _), v)| s.add(&ap[r][*ar].scale(v)));
            if let Some(w) = ap[r][c].first_difference(&rhs) {
                return Ok(Some(format!("entry ({r},{c}): {w}")));
            }
        }
    }
    Ok(None)
}

/// `det_q M = Σ_σ (-q)^{-l(σ)} M_{σ(1)1} ⋯ M_{σ(n)n}` for `M = Π + L+(z) D δ`.
pub fn detq_pi_plus<F: Field>(cx: &SugawaraCtx<F>) -> Result<ExtElem<F>> {
    let n = cx.n();
    let eng = cx.calc.engine();
    let hi = cx.calc.d_plus() as i64;
    let mut m = plus_matrix(cx, true, true);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].add(&ExtElem::pi(n, i + 1, hi));
    }
    let mq = eng.ctx().q_pow(1).neg();
    let mut total = ExtElem::zero(n, hi);
    for sigma in crate::algebra::permutations(n) {
        let mut acc = ExtElem::from_series(n, &crate::algebra::constant(F::one()), 0, hi);
        for (c, &r) in sigma.iter().enumerate() {
            acc = acc.mul(&m[r][c], eng)?;
        }
        let l = crate::algebra::inversions(&sigma) as i64;
        total = total.add(&acc.scale(&mq.powi(-l).expect("q is nonzero")));
    }
    Ok(total)
}

/// Compares `det_q(Π + L+(z) D δ)` modulo `π_i - 1` with `1 + Σ_k ℓ̄_k(z) δ^k`.
pub fn detq_identity_witness<F: Field>(cx: &SugawaraCtx<F>) -> Result<Option<String>> {
    let n = cx.n();
    let hi = cx.calc.d_plus() as i64;
    let lhs = detq_pi_plus(cx)?.mod_pi();
    let mut rhs = ExtElem::from_series(n, &crate::algebra::constant(F::one()), 0, hi);
    for k in 1..=n {
        rhs = rhs.add(&ExtElem::from_series(n, &ell_bar_trace(cx, k)?, k as u32, hi));
    }
    Ok(lhs.first_difference(&rhs))
}

/// Context for computations in the `l+` subalgebra up to `z^{d_plus}`.
pub fn plus_ctx<F: Field>(eng: &Engine<F>, d_plus: u32) -> SugawaraCtx<'_, F> {
    SugawaraCtx::new(LCalc::plus_only(eng, d_plus))
}
