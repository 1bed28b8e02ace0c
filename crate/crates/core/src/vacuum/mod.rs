//! The vacuum module at the critical level, identified with the span of
//! normal `l+` words in which `l+_ii[0] = 1`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use itertools::Itertools;
use rayon::prelude::*;

use crate::algebra::{plus_depth, AlgElem, Engine, Gen, Sign, Word};
use crate::coeff::{Field, Module, Ring};
use crate::error::Result;

pub mod checks;
#[cfg(test)]
mod tests;

/// Vector of the vacuum module: a combination of normal `l+` words without
/// diagonal zero modes, the empty word being the vacuum vector.
#[derive(Clone, Debug, PartialEq)]
pub struct VacVector<F: Field>(AlgElem<F>);

impl<F: Field> VacVector<F> {
    pub fn vacuum() -> Self {
        VacVector(AlgElem::scalar(F::one()))
    }

    pub fn zero() -> Self {
        VacVector(AlgElem::zero())
    }

    pub fn elem(&self) -> &AlgElem<F> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        VacVector(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        VacVector(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &F) -> Self {
        VacVector(self.0.scale_by(c))
    }

    /// Largest `l+` depth among the words.
    pub fn depth(&self) -> u32 {
        self.0.terms().map(|(w, _)| plus_depth(w)).max().unwrap_or(0)
    }
}

/// The module over a rewrite engine.
pub struct Vacuum<'e, F: Field> {
    eng: &'e Engine<F>,
    cache: RwLock<HashMap<(Gen, Word), Arc<AlgElem<F>>>>,
}

impl<'e, F: Field> Vacuum<'e, F> {
    pub fn new(eng: &'e Engine<F>) -> Self {
        Vacuum { eng, cache: RwLock::new(HashMap::new()) }
    }

    pub fn engine(&self) -> &'e Engine<F> {
        self.eng
    }

    /// Image of a normal-ordered element applied to the vacuum vector.
    pub fn project(&self, x: &AlgElem<F>) -> VacVector<F> {
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            if let Some((f, w)) = self.reduce_word(w) {
                out.add_term(w, c.mul(&f));
            }
        }
        VacVector(out)
    }

    /// `w 𝟙` for a normal word: `l-` letters other than `l-_ii[0]` annihilate
    /// the vacuum, and each `l+_ii[0]` moves right to act as one.
    fn reduce_word(&self, w: &[Gen]) -> Option<(F, Word)> {
        let split = w.iter().position(|g| g.sign == Sign::Minus).unwrap_or(w.len());
        if !w[split..].iter().all(|g| g.is_diag_zero()) {
            return None;
        }
        let plus = &w[..split];
        let mut e = 0i64;
        let mut out = Vec::with_capacity(plus.len());
        for (p, g) in plus.iter().enumerate() {
            if g.is_diag_zero() {
                for x in &plus[p + 1..] {
                    e += (x.j == g.i) as i64 - (x.i == g.i) as i64;
                }
            } else {
                out.push(*g);
            }
        }
        Some((self.eng.ctx().q_pow(e), out))
    }

    /// `g w 𝟙` for a basis word `w`. Truncation modulo `I_0` is exact here
    /// since every word of positive `l-` degree annihilates the vacuum.
    fn act_letter(&self, g: Gen, w: &Word) -> Result<Arc<AlgElem<F>>> {
        let key = (g, w.clone());
        if let Some(r) = self.cache.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let prod = self.eng.mul(&AlgElem::gen(g), &AlgElem::word(w.clone(), F::one()), Some(0))?;
        let r = Arc::new(self.project(&prod).0);
        self.cache.write().unwrap().insert(key, r.clone());
        Ok(r)
    }

    /// `x · v`, applying the letters of each word of `x` from the right.
    pub fn act(&self, x: &AlgElem<F>, v: &VacVector<F>) -> Result<VacVector<F>> {
        let mut out = AlgElem::zero();
        let mut by_suffix: HashMap<&[Gen], AlgElem<F>> = HashMap::new();
        for (w, c) in x.terms() {
            let u = self.act_word(w, v, &mut by_suffix)?;
            out.add_scaled(&u, c);
        }
        Ok(VacVector(out))
    }

    /// `w v`, reusing the images of shared suffixes of `w`.
    fn act_word<'a>(
        &self,
        w: &'a [Gen],
        v: &VacVector<F>,
        memo: &mut HashMap<&'a [Gen], AlgElem<F>>,
    ) -> Result<AlgElem<F>> {
        if w.is_empty() {
            return Ok(v.0.clone());
        }
        if let Some(u) = memo.get(w) {
            return Ok(u.clone());
        }
        let rest = self.act_word(&w[1..], v, memo)?;
        let mut out = AlgElem::zero();
        for (b, c) in rest.terms() {
            out.add_scaled(&*self.act_letter(w[0], b)?, c);
        }
        memo.insert(w, out.clone());
        Ok(out)
    }

    pub fn act_gen(&self, g: Gen, v: &VacVector<F>) -> Result<VacVector<F>> {
        self.act(&AlgElem::gen(g), v)
    }

    /// `(x y - y x) · v`.
    pub fn commutator(&self, x: &AlgElem<F>, y: &AlgElem<F>, v: &VacVector<F>) -> Result<VacVector<F>> {
        let a = self.act(x, &self.act(y, v)?)?;
        let b = self.act(y, &self.act(x, v)?)?;
        Ok(a.sub(&b))
    }
}

/// A fixed element acting on the module, with its images of basis words memoized.
pub struct Operator<'v, 'e, F: Field> {
    vac: &'v Vacuum<'e, F>,
    x: AlgElem<F>,
    memo: RwLock<HashMap<Word, Arc<AlgElem<F>>>>,
}

impl<'v, 'e, F: Field> Operator<'v, 'e, F> {
    pub fn new(vac: &'v Vacuum<'e, F>, x: AlgElem<F>) -> Self {
        Operator { vac, x, memo: RwLock::new(HashMap::new()) }
    }

    pub fn elem(&self) -> &AlgElem<F> {
        &self.x
    }

    pub fn apply(&self, v: &VacVector<F>) -> Result<VacVector<F>> {
        let mut out = AlgElem::zero();
        for (w, c) in v.0.terms() {
            let cached = self.memo.read().unwrap().get(w).cloned();
            let img = match cached {
                Some(img) => img,
                None => {
                    let img = Arc::new(self.vac.act(&self.x, &VacVector(AlgElem::word(w.clone(), F::one())))?.0);
                    self.memo.write().unwrap().insert(w.clone(), img.clone());
                    img
                }
            };
            out.add_scaled(&img, c);
        }
        Ok(VacVector(out))
    }

    /// `(x y - y x) v` for another element `y`.
    pub fn commutator(&self, y: &AlgElem<F>, v: &VacVector<F>) -> Result<VacVector<F>> {
        let a = self.apply(&self.vac.act(y, v)?)?;
        let b = self.vac.act(y, &self.apply(v)?)?;
        Ok(a.sub(&b))
    }
}

/// Nonzero `l+` generators other than `l+_ii[0]` with mode depth at most `depth`.
pub fn plus_letters(n: usize, depth: u32) -> Vec<Gen> {
    let mut out = Vec::new();
    for r in 0..=depth as usize {
        for i in 1..=n {
            for j in 1..=n {
                let g = Gen::plus(i, j, r);
                if !g.is_zero_gen() && !g.is_diag_zero() {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// All generators `l±_ab[r]` with `r <= r_max` that are not identically zero.
pub fn generators(n: usize, r_max: u32) -> Vec<Gen> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for r in 0..=r_max as usize {
            for i in 1..=n {
                for j in 1..=n {
                    let g = Gen::new(sign, i, j, r);
                    if !g.is_zero_gen() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Normal `l+` words of depth at most `depth` and length at most `max_len`.
/// Depth alone does not bound the span, since the zero modes `l+_ij[0]`,
/// `i < j`, have depth zero.
pub fn spanning_words<F: Field>(eng: &Engine<F>, depth: u32, max_len: usize) -> Vec<VacVector<F>> {
    let letters = plus_letters(eng.n(), depth);
    let ord = eng.ordering();
    let mut out = vec![VacVector::vacuum()];
    for len in 1..=max_len {
        for w in letters.iter().combinations_with_replacement(len) {
            let w: Word = w.into_iter().copied().sorted_by(|a, b| ord.cmp(a, b)).collect();
            if plus_depth(&w) <= depth {
                out.push(VacVector(AlgElem::word(w, F::one())));
            }
        }
    }
    out
}

/// Applies `f` to each item in parallel and returns the first witness found.
pub fn first_witness<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<Option<String>> {
    let found: Vec<Option<String>> = items.par_iter().map(&f).collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}
