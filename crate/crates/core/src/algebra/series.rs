//! Laurent series in `z` with coefficients in a ring, carrying the range of
//! exponents on which they are known.

use std::collections::BTreeMap;

use crate::coeff::{Field, Module, Ring};
use crate::error::{Error, Result};

/// `Σ c_e z^e`, known for `lo <= e <= hi` (`None` means unbounded on that side).
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeries<R> {
    coeffs: BTreeMap<i64, R>,
    lo: Option<i64>,
    hi: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<R: Ring> ZSeries<R> {
    pub fn exact(terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut s = ZSeries { coeffs: BTreeMap::new(), lo: None, hi: None };
        for (e, c) in terms {
            s.add_coeff(e, c);
        }
        s
    }

    pub fn constant(c: R) -> Self {
        Self::exact([(0, c)])
    }

    /// Restrict the known range to `e <= hi`.
    pub fn with_hi(mut self, hi: i64) -> Self {
        self.hi = min_opt(self.hi, Some(hi));
        self.coeffs.retain(|&e, _| e <= hi);
        self
    }

    /// Restrict the known range to `e >= lo`.
    pub fn with_lo(mut self, lo: i64) -> Self {
        self.lo = max_opt(self.lo, Some(lo));
        self.coeffs.retain(|&e, _| e >= lo);
        self
    }

    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    pub fn lo(&self) -> Option<i64> {
        self.lo
    }

    pub fn add_coeff(&mut self, e: i64, c: R) {
        if c.is_zero() || self.hi.is_some_and(|h| e > h) || self.lo.is_some_and(|l| e < l) {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn is_known(&self, e: i64) -> bool {
        !self.hi.is_some_and(|h| e > h) && !self.lo.is_some_and(|l| e < l)
    }

    /// Coefficient of `z^e`; an error outside the known range.
    pub fn coeff(&self, e: i64) -> Result<R> {
        if !self.is_known(e) {
            return Err(Error::BudgetExceeded(format!(
                "coefficient of z^{e} is outside the computed range [{:?}, {:?}]",
                self.lo, self.hi
            )));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(R::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Smallest exponent that may carry a nonzero coefficient.
    fn min_exp(&self) -> Option<i64> {
        match self.lo {
            Some(l) => Some(l),
            None => self.coeffs.keys().next().copied(),
        }
    }

    fn max_exp(&self) -> Option<i64> {
        match self.hi {
            Some(h) => Some(h),
            None => self.coeffs.keys().next_back().copied(),
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.lo.is_none() && self.hi.is_none()
    }

    /// Product with a caller-supplied coefficient product.
    pub fn mul_with<S: Ring, T: Ring>(
        &self,
        other: &ZSeries<S>,
        f: impl Fn(&R, &S) -> Result<T>,
    ) -> Result<ZSeries<T>> {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(ZSeries::exact([]));
        }
        let hi = min_opt(
            self.hi.zip(other.min_exp()).map(|(h, m)| h + m),
            other.hi.zip(self.min_exp()).map(|(h, m)| h + m),
        );
        let lo = max_opt(
            self.lo.zip(other.max_exp()).map(|(l, m)| l + m),
            other.lo.zip(self.max_exp()).map(|(l, m)| l + m),
        );
        let mut out = ZSeries { coeffs: BTreeMap::new(), lo, hi };
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                if out.is_known(a + b) {
                    out.add_coeff(a + b, f(x, y)?);
                }
            }
        }
        Ok(out)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ZSeries<S> {
        let mut out = ZSeries { coeffs: BTreeMap::new(), lo: self.lo, hi: self.hi };
        for (&e, c) in &self.coeffs {
            out.add_coeff(e, f(c));
        }
        out
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<ZSeries<S>> {
        let mut out = ZSeries { coeffs: BTreeMap::new(), lo: self.lo, hi: self.hi };
        for (&e, c) in &self.coeffs {
            out.add_coeff(e, f(c)?);
        }
        Ok(out)
    }

    /// `s(z a)` for a scalar `a`: the coefficient of `z^e` is multiplied by `a^e`.
    pub fn rescale<F: Field>(&self, a: &F) -> Result<Self>
    where
        R: Module<F>,
    {
        let mut out = ZSeries { coeffs: BTreeMap::new(), lo: self.lo, hi: self.hi };
        for (&e, c) in &self.coeffs {
            out.add_coeff(e, c.scale_by(&a.powi(e).ok_or_else(|| Error::DenominatorVanishes("rescaling by zero".into()))?));
        }
        Ok(out)
    }
}

impl<R: Ring> Ring for ZSeries<R> {
    fn zero() -> Self {
        Self::exact([])
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.hi = min_opt(self.hi, other.hi);
        out.lo = max_opt(self.lo, other.lo);
        out.coeffs.retain(|&e, _| !out.hi.is_some_and(|h| e > h) && !out.lo.is_some_and(|l| e < l));
        for (&e, c) in &other.coeffs {
            out.add_coeff(e, c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, |a, b| Ok(a.mul(b))).expect("ring product is infallible")
    }
    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }
}

impl<F: Field, R: Module<F>> Module<F> for ZSeries<R> {
    fn scale_by(&self, c: &F) -> Self {
        self.map(|x| x.scale_by(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rat};

    #[test]
    fn product_tracks_known_range() {
        let a = ZSeries::exact([(0, rat(1, 1)), (1, rat(2, 1)), (2, rat(3, 1))]).with_hi(2);
        let b = ZSeries::exact([(-1, rat(1, 1)), (0, rat(1, 1))]);
        let c = a.mul(&b);
        assert_eq!(c.hi(), Some(1));
        assert_eq!(c.coeff(1).unwrap(), rat(5, 1));
        assert!(c.coeff(2).is_err());
    }

    #[test]
    fn rescale_multiplies_by_powers() {
        let a = ZSeries::exact([(-2, rat(1, 1)), (1, rat(1, 1))]);
        let s = a.rescale(&rat(2, 1)).unwrap();
        assert_eq!(s.coeff(-2).unwrap(), rat(1, 4));
        assert_eq!(s.coeff(1).unwrap(), rat(2, 1));
    }

    #[test]
    fn inverse_of_geometric_series() {
        // (1 - z)(1 + z + z^2 + ...) = 1 up to the known order
        let a = ZSeries::exact([(0, Rat::one()), (1, rat(-1, 1))]);
        let g = ZSeries::exact((0..5).map(|e| (e, Rat::one()))).with_hi(4);
        let p = a.mul(&g);
        assert_eq!(p, ZSeries::constant(Rat::one()).with_hi(4));
    }
}
