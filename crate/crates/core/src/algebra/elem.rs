use std::collections::BTreeMap;
use std::fmt;

use super::gen::{Gen, OrderingKind, Sign};
use crate::coeff::{Field, Module, Ring};

pub type Word = Vec<Gen>;

/// Finite linear combination of words in the generators.
///
/// `ord` records the ordering the element is known to be normal-ordered
/// for; any free product clears it. Equality compares terms only.
#[derive(Clone, Debug)]
pub struct AlgElem<F> {
    terms: BTreeMap<Word, F>,
    ord: Option<OrderingKind>,
}

impl<F: Field> PartialEq for AlgElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> AlgElem<F> {
    /// The zero element tagged as normal-ordered for `ord`.
    pub fn zero_with(ord: OrderingKind) -> Self {
        AlgElem { terms: BTreeMap::new(), ord: Some(ord) }
    }

    pub fn scalar(c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(Vec::new(), c);
        e.ord = None;
        e
    }

    /// A single generator (zero if it is one of the excluded zero modes).
    pub fn gen(g: Gen) -> Self {
        Self::word(vec![g], F::one())
    }

    /// `c * w`, zero if `w` contains an excluded zero generator.
    pub fn word(w: Word, c: F) -> Self {
        let mut e = Self::zero();
        if !w.iter().any(|g| g.is_zero_gen()) {
            e.add_term(w, c);
        }
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, F> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Gen]) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), c.mul(a));
        }
    }

    pub fn ord(&self) -> Option<OrderingKind> {
        self.ord
    }

    pub fn with_ord(mut self, ord: Option<OrderingKind>) -> Self {
        self.ord = ord;
        self
    }

    /// Whether every word is weakly increasing for `ord`.
    pub fn is_ordered_for(&self, ord: OrderingKind) -> bool {
        self.terms.keys().all(|w| ord.is_ordered(w))
    }

    /// Keep the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect();
        AlgElem { terms, ord: self.ord }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> AlgElem<G> {
        let mut out = AlgElem::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))));
        out.ord = self.ord;
        out
    }

    /// Largest l- degree among the words.
    pub fn max_minus_degree(&self) -> u32 {
        self.terms.keys().map(|w| minus_degree(w)).max().unwrap_or(0)
    }

    /// Canonical text form: terms in the map order, exact coefficients.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

pub fn minus_degree(w: &[Gen]) -> u32 {
    w.iter().map(|g| g.minus_degree()).sum()
}

pub fn word_degree(w: &[Gen]) -> i64 {
    w.iter().map(|g| g.degree()).sum()
}

pub fn word_weight(w: &[Gen]) -> i64 {
    w.iter().map(|g| g.weight()).sum()
}

pub fn plus_depth(w: &[Gen]) -> u32 {
    w.iter().filter(|g| g.sign == Sign::Plus).map(|g| g.r as u32).sum()
}

pub fn fmt_word(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

impl<F: Field> Ring for AlgElem<F> {
    fn zero() -> Self {
        AlgElem { terms: BTreeMap::new(), ord: None }
    }
    fn one() -> Self {
        Self::scalar(F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out.ord = if self.ord == other.ord { self.ord } else { None };
        out
    }
    /// Free product: concatenation of words, no normal ordering.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x.mul(y));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }
}

impl<F: Field> Module<F> for AlgElem<F> {
    fn scale_by(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = c.mul(v);
        }
        out
    }
}

impl<F: Field> fmt::Display for AlgElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{}", fmt_word(w))).collect();
        f.write_str(&parts.join(" + "))
    }
}
