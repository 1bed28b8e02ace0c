use std::collections::BTreeMap;
use std::fmt;

use super::ring::{Field, Ring};

pub const MAX_VARS: usize = 3;

/// Sparse polynomial in up to three commuting variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<F> {
    terms: BTreeMap<[u32; MAX_VARS], F>,
}

impl<F: Field> MPoly<F> {
    pub fn constant(c: F) -> Self {
        let mut p = Self::zero();
        p.add_term([0; MAX_VARS], c);
        p
    }

    /// The variable with index `idx` (0 = u, 1 = v, 2 = w).
    pub fn var(idx: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[idx] = 1;
        let mut p = Self::zero();
        p.add_term(e, F::one());
        p
    }

    pub fn add_term(&mut self, e: [u32; MAX_VARS], c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(F::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; MAX_VARS], &F)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a.mul(c));
        }
        out
    }

    /// Substitute variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[MPoly<F>]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&images[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl<F: Field> Ring for MPoly<F> {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let mut e = [0; MAX_VARS];
                for i in 0..MAX_VARS {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, a.mul(b));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        const NAMES: [&str; MAX_VARS] = ["u", "v", "w"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut mon: Vec<String> = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => mon.push(NAMES[i].to_string()),
                        _ => mon.push(format!("{}^{k}", NAMES[i])),
                    }
                }
                if mon.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mon.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
