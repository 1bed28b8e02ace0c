use std::collections::BTreeMap;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Order value marking a series known to all orders (a polynomial).
pub const EXACT: usize = usize::MAX;

/// Truncated formal power series `sum c_k x^k + O(x^order)`.
///
/// Invariants: no stored zero coefficients and every stored exponent is
/// below `order`. Arithmetic on operands with different orders keeps the
/// minimum, so a result never claims coefficients that were not computed.
#[derive(Clone, PartialEq, Debug)]
pub struct Fps<R> {
    coeffs: BTreeMap<usize, R>,
    order: usize,
}

impl<R: Ring> Fps<R> {
    pub fn new(order: usize) -> Self {
        Fps { coeffs: BTreeMap::new(), order }
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (usize, R)>, order: usize) -> Self {
        let mut s = Self::new(order);
        for (e, c) in coeffs {
            s.add_term(e, c);
        }
        s
    }

    /// Exact polynomial with the given dense coefficients.
    pub fn polynomial(coeffs: Vec<R>) -> Self {
        Self::from_coeffs(coeffs.into_iter().enumerate(), EXACT)
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs([(0, c)], EXACT)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: usize) -> R {
        self.coeffs.get(&e).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, e: usize, c: R) {
        if e >= self.order || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(R::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::from_coeffs(self.coeffs.range(..order).map(|(e, c)| (*e, c.clone())), order)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.terms().map(|(e, a)| (e, c.mul(a))), self.order)
    }

    /// The series `s(c x)`.
    pub fn rescale_var(&self, c: &R) -> Self {
        Self::from_coeffs(self.terms().map(|(e, a)| (e, a.mul(&c.pow(e as u32)))), self.order)
    }

    /// Right inverse `g` with `self * g = 1 + O(x^order)`, given the inverse of the constant term.
    pub fn invert_with(&self, c0_inv: &R, order: usize) -> Self {
        let order = order.min(self.order);
        let mut g: Vec<R> = Vec::with_capacity(order.min(4096));
        for k in 0..order {
            if k == 0 {
                g.push(c0_inv.clone());
                continue;
            }
            let mut acc = R::zero();
            for (e, a) in self.coeffs.range(1..=k) {
                acc = acc.add(&a.mul(&g[k - e]));
            }
            g.push(c0_inv.mul(&acc).neg());
        }
        Self::from_coeffs(g.into_iter().enumerate(), order)
    }
}

impl<F: Field> Fps<F> {
    pub fn invert(&self, order: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        let inv = c0
            .inv()
            .ok_or_else(|| Error::NotInvertible("series with zero constant term".into()))?;
        let order = if order == EXACT { self.order } else { order };
        if order == EXACT {
            return Err(Error::InvalidArgument("inverse of a polynomial needs a finite order".into()));
        }
        Ok(self.invert_with(&inv, order))
    }

    pub fn map_coeffs<G: Ring>(&self, f: impl Fn(&F) -> G) -> Fps<G> {
        Fps::from_coeffs(self.terms().map(|(e, c)| (e, f(c))), self.order)
    }
}

impl<R: Ring> Ring for Fps<R> {
    fn zero() -> Self {
        Self::new(EXACT)
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (e, c) in other.coeffs.range(..order) {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        // a truncation of either factor at x^N spoils the product from
        // x^(N + lowest exponent of the other factor) on
        let low_a = self.coeffs.keys().next().copied();
        let low_b = other.coeffs.keys().next().copied();
        let bound = |ord: usize, low: Option<usize>| match (ord, low) {
            (EXACT, _) => EXACT,
            (o, Some(l)) => o.saturating_add(l),
            (_, None) => EXACT,
        };
        let order = bound(self.order, low_b).min(bound(other.order, low_a));
        let mut out = Self::new(order);
        for (ea, a) in &self.coeffs {
            if *ea >= order {
                break;
            }
            for (eb, b) in &other.coeffs {
                let e = ea + eb;
                if e >= order {
                    break;
                }
                out.add_term(e, a.mul(b));
            }
        }
        if self.is_zero() || other.is_zero() {
            out.order = self.order.min(other.order);
        }
        out
    }
    fn neg(&self) -> Self {
        Self::from_coeffs(self.terms().map(|(e, c)| (e, c.neg())), self.order)
    }
}

impl<R: Ring + std::fmt::Display> std::fmt::Display for Fps<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("({c})*x^{e}")).collect();
        if self.order != EXACT {
            parts.push(format!("O(x^{})", self.order));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ring::{rat, Rat};

    #[test]
    fn invert_one_minus_x() {
        let s = Fps::polynomial(vec![rat(1, 1), rat(-1, 1)]);
        let g = s.invert(4).unwrap();
        let expect = Fps::from_coeffs((0..4).map(|e| (e, rat(1, 1))), 4);
        assert_eq!(g, expect);
    }

    #[test]
    fn invert_one_is_one() {
        let g = Fps::<Rat>::one().invert(5).unwrap();
        assert_eq!(g, Fps::from_coeffs([(0, rat(1, 1))], 5));
    }

    #[test]
    fn zero_constant_term_rejected() {
        let s = Fps::polynomial(vec![rat(0, 1), rat(1, 1)]);
        assert!(s.invert(3).is_err());
    }

    #[test]
    fn product_order_is_min_of_operands() {
        let a = Fps::from_coeffs([(0, rat(1, 1)), (1, rat(2, 1))], 5);
        let b = Fps::from_coeffs([(0, rat(1, 1))], 3);
        assert_eq!(a.mul(&b).order(), 3);
        let shifted = Fps::from_coeffs([(2, rat(1, 1))], 3);
        assert_eq!(a.mul(&shifted).order(), 3);
    }
}
