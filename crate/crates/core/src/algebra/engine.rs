//! Normal ordering by insertion.
//!
//! `insert(g, w)` computes the normal form of `g w` for a normal word `w`.
//! If `g` may stand in front of `w[0]` it is prepended, and a diagonal pair
//! `l+_ii[0] ... l-_ii[0]` created this way is cancelled. Otherwise the
//! quadratic rule for `g w[0]` is applied and the letters of each resulting
//! word are inserted, right to left, into `w[1..]`.
//!
//! Truncation: for `S >= 0` the span `I_S` of normal words of `l-` degree
//! above `S` is a left ideal, because left multiplication never lowers the
//! `l-` degree carried by the right factor. Products computed by left
//! insertion can therefore drop such words at every step and stay exact
//! modulo `I_S`. Results truncated this way must not be multiplied on the
//! right.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use super::elem::{fmt_word, minus_degree, AlgElem, Word};
use super::gen::{Gen, OrderingKind, Sign};
use super::mixed::MixedTable;
use super::rules::{solve_component, CompKey, RuleSet};
use crate::coeff::{Field, Fps, QCtx, Ring};
use crate::error::{invalid, Error, Result};
use crate::tensor::{r_uv_parts, TensorOp};

type Terms<F> = BTreeMap<Word, F>;

/// Hard limits that turn runaway rewriting into an error.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_word_len: usize,
    pub max_terms: usize,
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_word_len: 64, max_terms: 500_000, max_depth: 4096 }
    }
}

pub struct Engine<F: Field> {
    n: usize,
    ctx: QCtx<F>,
    ord: OrderingKind,
    a: TensorOp<F>,
    b: TensorOp<F>,
    same: RwLock<HashMap<CompKey, Arc<RuleSet<F>>>>,
    mixed: MixedTable<F>,
    memo: RwLock<HashMap<(Gen, Word, Option<u32>), Arc<Terms<F>>>>,
    dropped: AtomicU64,
    budget: Budget,
}

impl<F: Field> Engine<F> {
    /// `series_order` bounds the depth of `l- l+` exchanges that can be resolved.
    pub fn new(ctx: QCtx<F>, n: usize, ord: OrderingKind, series_order: usize) -> Result<Self> {
        if n < 1 {
            return invalid(format!("need n >= 1, got {n}"));
        }
        if series_order == 0 {
            return invalid("series order must be positive");
        }
        let mixed = MixedTable::new(&ctx, n, series_order)?;
        Self::assemble(ctx, n, ord, mixed)
    }

    /// Engine whose mixed relations use `R(x) = f(x) R̄(x)` for the given `f`.
    pub fn with_f(ctx: QCtx<F>, n: usize, ord: OrderingKind, f: &Fps<F>) -> Result<Self> {
        if n < 1 {
            return invalid(format!("need n >= 1, got {n}"));
        }
        if f.order() == 0 {
            return invalid("series order must be positive");
        }
        let mixed = MixedTable::with_f(&ctx, n, f)?;
        Self::assemble(ctx, n, ord, mixed)
    }

    fn assemble(ctx: QCtx<F>, n: usize, ord: OrderingKind, mixed: MixedTable<F>) -> Result<Self> {
        let (a, b) = r_uv_parts(&ctx, n)?;
        Ok(Engine {
            n,
            ctx,
            ord,
            a,
            b,
            same: RwLock::new(HashMap::new()),
            mixed,
            memo: RwLock::new(HashMap::new()),
            dropped: AtomicU64::new(0),
            budget: Budget::default(),
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &QCtx<F> {
        &self.ctx
    }

    pub fn ordering(&self) -> OrderingKind {
        self.ord
    }

    pub fn series_order(&self) -> usize {
        self.mixed.order()
    }

    /// Number of words dropped by truncation so far.
    pub fn drops(&self) -> u64 {
        self.dropped.load(AtomicOrdering::Relaxed)
    }

    fn same_sign_rules(&self, key: CompKey) -> Result<Arc<RuleSet<F>>> {
        if let Some(r) = self.same.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let rules = Arc::new(solve_component(self.n, &self.a, &self.b, self.ord, &key)?);
        self.same.write().unwrap().insert(key, rules.clone());
        Ok(rules)
    }

    /// Normal form of the out-of-order pair `x y`.
    pub fn rule(&self, x: &Gen, y: &Gen) -> Result<AlgElem<F>> {
        match (x.sign, y.sign) {
            (Sign::Minus, Sign::Plus) => self.mixed.exchange(x, y),
            (Sign::Plus, Sign::Minus) => Err(Error::Internal(format!("{x} {y} is already ordered"))),
            _ => {
                let rules = self.same_sign_rules(CompKey::of(x, y))?;
                rules
                    .get(&(*x, *y))
                    .cloned()
                    .ok_or_else(|| Error::Internal(format!("no rule for {x} {y}")))
            }
        }
    }

    /// Cancel `l+_ii[0] ... l-_ii[0]` when `w[0] = l+_ii[0]`, moving it right
    /// with `l+_ii[0] l±_km = q^{-δ_ik + δ_im} l±_km l+_ii[0]`.
    fn cancel_front(&self, w: Word) -> (F, Word) {
        let g = w[0];
        if !(g.sign == Sign::Plus && g.is_diag_zero()) {
            return (F::one(), w);
        }
        let target = Gen::minus(g.i as usize, g.i as usize, 0);
        let Some(t) = w.iter().position(|x| *x == target) else {
            return (F::one(), w);
        };
        let mut e = 0i64;
        for x in &w[1..t] {
            e += (x.j == g.i) as i64 - (x.i == g.i) as i64;
        }
        let mut out = Vec::with_capacity(w.len() - 2);
        out.extend_from_slice(&w[1..t]);
        out.extend_from_slice(&w[t + 1..]);
        (self.ctx.q_pow(e), out)
    }

    /// Normal form of `g w` modulo `I_cap`, for a normal word `w`.
    pub fn insert(&self, g: Gen, w: &[Gen], cap: Option<u32>) -> Result<Arc<Terms<F>>> {
        self.insert_at(g, w, cap, 0)
    }

    fn insert_at(&self, g: Gen, w: &[Gen], cap: Option<u32>, depth: usize) -> Result<Arc<Terms<F>>> {
        if depth > self.budget.max_depth {
            return Err(Error::BudgetExceeded(format!("rewriting depth above {}", self.budget.max_depth)));
        }
        // results never exceed the l- degree of the input
        let cap = cap.filter(|&c| c < g.minus_degree() + minus_degree(w));
        if w.is_empty() || self.ord.cmp(&g, &w[0]) != Ordering::Greater {
            if w.len() + 1 > self.budget.max_word_len {
                return Err(Error::BudgetExceeded(format!("word longer than {}", self.budget.max_word_len)));
            }
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(g);
            word.extend_from_slice(w);
            let (c, word) = self.cancel_front(word);
            let mut out = Terms::new();
            if cap.is_some_and(|s| minus_degree(&word) > s) {
                self.dropped.fetch_add(1, AtomicOrdering::Relaxed);
            } else {
                out.insert(word, c);
            }
            return Ok(Arc::new(out));
        }
        let key = (g, w.to_vec(), cap);
        if let Some(r) = self.memo.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let rule = self.rule(&g, &w[0])?;
        let rest = &w[1..];
        let mut out = Terms::new();
        for (word, c) in rule.terms() {
            let mut acc: Terms<F> = Terms::from([(rest.to_vec(), c.clone())]);
            for &letter in word.iter().rev() {
                let mut next = Terms::new();
                for (u, cu) in &acc {
                    for (v, cv) in self.insert_at(letter, u, cap, depth + 1)?.iter() {
                        add_into(&mut next, v, cu.mul(cv));
                    }
                }
                acc = next;
            }
            for (v, cv) in acc {
                add_into(&mut out, &v, cv);
            }
            if out.len() > self.budget.max_terms {
                return Err(Error::BudgetExceeded(format!("more than {} terms", self.budget.max_terms)));
            }
        }
        let out = Arc::new(out);
        self.memo.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn check_word(&self, w: &[Gen]) -> Result<()> {
        for g in w {
            g.check(self.n)?;
        }
        Ok(())
    }

    /// Normal form of `u v` for a normal element `v`, modulo `I_cap`.
    fn left_mul_word(&self, u: &[Gen], v: &Terms<F>, cap: Option<u32>) -> Result<Terms<F>> {
        self.check_word(u)?;
        let mut acc = v.clone();
        if let Some(s) = cap {
            acc.retain(|w, _| minus_degree(w) <= s);
        }
        for &g in u.iter().rev() {
            if g.is_zero_gen() {
                return Ok(Terms::new());
            }
            let mut next = Terms::new();
            for (w, c) in &acc {
                for (x, cx) in self.insert(g, w, cap)?.iter() {
                    add_into(&mut next, x, c.mul(cx));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of an arbitrary element, modulo `I_cap` when given.
    pub fn normal_order(&self, e: &AlgElem<F>, cap: Option<u32>) -> Result<AlgElem<F>> {
        let unit: Terms<F> = Terms::from([(Vec::new(), F::one())]);
        let terms: Vec<(&Word, &F)> = e.terms().collect();
        let parts: Vec<Terms<F>> = terms
            .par_iter()
            .map(|(w, c)| {
                let mut t = self.left_mul_word(w, &unit, cap)?;
                for v in t.values_mut() {
                    *v = c.mul(v);
                }
                Ok(t)
            })
            .collect::<Result<_>>()?;
        Ok(collect(parts, self.ord))
    }

    /// Normal form of `a b` for normal `b`, modulo `I_cap` when given.
    pub fn mul(&self, a: &AlgElem<F>, b: &AlgElem<F>, cap: Option<u32>) -> Result<AlgElem<F>> {
        if let Some(w) = b.terms().map(|(w, _)| w).find(|w| !self.ord.is_ordered(w)) {
            return Err(Error::NotNormalOrdered(format!("right factor contains {}", fmt_word(w))));
        }
        let bt: Terms<F> = b.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let terms: Vec<(&Word, &F)> = a.terms().collect();
        let parts: Vec<Terms<F>> = terms
            .par_iter()
            .map(|(w, c)| {
                let mut t = self.left_mul_word(w, &bt, cap)?;
                for v in t.values_mut() {
                    *v = c.mul(v);
                }
                Ok(t)
            })
            .collect::<Result<_>>()?;
        Ok(collect(parts, self.ord))
    }

    /// Difference of two reduction paths for `x y z`: inserting into the
    /// normal form of `y z`, and right-multiplying the normal form of `x y`
    /// by `z` before reducing again. Zero when the rewriting is confluent.
    pub fn confluence_defect(&self, x: Gen, y: Gen, z: Gen) -> Result<AlgElem<F>> {
        let left = self.normal_order(&AlgElem::word(vec![x, y, z], F::one()), None)?;
        let xy = self.normal_order(&AlgElem::word(vec![x, y], F::one()), None)?;
        let mut right = AlgElem::zero();
        for (w, c) in xy.terms() {
            let mut wz = w.clone();
            wz.push(z);
            right = right.add(&self.normal_order(&AlgElem::word(wz, c.clone()), None)?);
        }
        Ok(left.sub(&right))
    }

    /// Drop the words of `l-` degree above `cap`.
    pub fn truncate(&self, e: &AlgElem<F>, cap: u32) -> AlgElem<F> {
        e.filter(|w| minus_degree(w) <= cap)
    }
}

fn add_into<F: Field>(t: &mut Terms<F>, w: &[Gen], c: F) {
    if c.is_zero() {
        return;
    }
    if let Some(e) = t.get_mut(w) {
        *e = e.add(&c);
        if e.is_zero() {
            t.remove(w);
        }
    } else {
        t.insert(w.to_vec(), c);
    }
}

fn collect<F: Field>(parts: Vec<Terms<F>>, ord: OrderingKind) -> AlgElem<F> {
    let mut out = AlgElem::zero_with(ord);
    for p in parts {
        for (w, c) in p {
            out.add_term(w, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rat, RatFunc};

    fn sym(n: usize, ord: OrderingKind) -> Engine<RatFunc> {
        Engine::new(QCtx::symbolic(), n, ord, 6).unwrap()
    }

    fn word(e: &Engine<RatFunc>, w: Word) -> AlgElem<RatFunc> {
        e.normal_order(&AlgElem::word(w, RatFunc::one()), None).unwrap()
    }

    #[test]
    fn worked_examples() {
        let e = sym(2, OrderingKind::Opposite);
        let (d, x) = (Gen::plus(1, 1, 0), Gen::plus(1, 2, 1));
        assert_eq!(word(&e, vec![d, x]), AlgElem::word(vec![x, d], e.ctx().q_pow(-1)));
        let m = Gen::minus(1, 1, 0);
        assert_eq!(word(&e, vec![m, x]), AlgElem::word(vec![x, m], e.ctx().q_pow(1)));
        assert_eq!(word(&e, vec![m, d]), AlgElem::one());
        assert_eq!(word(&e, vec![d, m]), AlgElem::one());
    }

    #[test]
    fn cancellation_through_intermediate_letters() {
        let e = sym(2, OrderingKind::Standard);
        let (d, x, m) = (Gen::plus(1, 1, 0), Gen::minus(1, 2, 1), Gen::minus(1, 1, 0));
        // l+11[0] l-12[1] = q^{-1} l-12[1] l+11[0], then l+11[0] l-11[0] = 1
        let got = word(&e, vec![d, x, m]);
        assert_eq!(got, AlgElem::word(vec![x], e.ctx().q_pow(-1)));
    }

    fn gens(n: usize, depth: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        for sign in [Sign::Plus, Sign::Minus] {
            for i in 1..=n {
                for j in 1..=n {
                    for r in 0..=depth {
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

    #[test]
    fn confluence_on_descending_triples() {
        for ord in [OrderingKind::Standard, OrderingKind::Opposite] {
            let e: Engine<Rat> = Engine::new(QCtx::numeric(rat(3, 2)).unwrap(), 2, ord, 6).unwrap();
            let gs = gens(2, 1);
            let mut checked = 0;
            for x in &gs {
                for y in &gs {
                    for z in &gs {
                        if ord.cmp(x, y) == Ordering::Greater && ord.cmp(y, z) == Ordering::Greater {
                            let d = e.confluence_defect(*x, *y, *z).unwrap();
                            assert!(d.is_zero(), "{x} {y} {z}: {d}");
                            checked += 1;
                        }
                    }
                }
            }
            assert!(checked > 100);
        }
    }

    #[test]
    fn truncated_products_agree_with_exact() {
        let e: Engine<Rat> =
            Engine::new(QCtx::numeric(rat(5, 3)).unwrap(), 2, OrderingKind::Standard, 6).unwrap();
        let w = vec![Gen::minus(2, 1, 2), Gen::plus(1, 2, 1), Gen::minus(1, 2, 1), Gen::plus(2, 1, 2)];
        let full = e.normal_order(&AlgElem::word(w.clone(), Rat::one()), None).unwrap();
        for s in 0..4 {
            let cut = e.normal_order(&AlgElem::word(w.clone(), Rat::one()), Some(s)).unwrap();
            assert_eq!(cut, e.truncate(&full, s), "S = {s}");
        }
        assert!(e.drops() > 0);
    }

    #[test]
    fn weight_and_degree_conserved() {
        let e = sym(3, OrderingKind::Standard);
        let w = vec![Gen::minus(3, 1, 1), Gen::minus(1, 2, 1), Gen::plus(2, 3, 1), Gen::plus(1, 1, 0)];
        let (deg, wt) = (super::super::elem::word_degree(&w), super::super::elem::word_weight(&w));
        let out = word(&e, w);
        assert!(!out.is_empty());
        for (v, _) in out.terms() {
            assert!(e.ordering().is_ordered(v));
            assert_eq!(super::super::elem::word_degree(v), deg);
            assert_eq!(super::super::elem::word_weight(v), wt);
        }
    }

    #[test]
    fn right_factor_must_be_normal() {
        let e = sym(2, OrderingKind::Standard);
        let bad = AlgElem::word(vec![Gen::minus(1, 1, 1), Gen::plus(1, 1, 1)], RatFunc::one());
        assert!(matches!(e.mul(&AlgElem::one(), &bad, None), Err(Error::NotNormalOrdered(_))));
    }
}
