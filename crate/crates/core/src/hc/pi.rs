//! The commutative algebra of diagonal modes `l+_i[-r]`, `l-_i[r]` with
//! `l+_i[0] l-_i[0] = 1`, truncated by total `l-` degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Sign, ZSeries};
use crate::coeff::{Field, Module, Ring};
use crate::error::{Error, Result};

/// A monomial: `Π_i l+_i[0]^{t_i}` times powers of the modes with `r > 0`.
/// A negative `t_i` stands for a power of `l-_i[0]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiMono {
    zero: BTreeMap<u8, i32>,
    vars: BTreeMap<(u8, u8, u16), u32>,
}

fn sign_key(s: Sign) -> u8 {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

impl PiMono {
    pub fn one() -> Self {
        Self::default()
    }

    /// The variable `l±_i[∓r]`.
    pub fn var(sign: Sign, i: usize, r: usize) -> Self {
        let mut m = Self::one();
        if r == 0 {
            m.zero.insert(i as u8, if sign == Sign::Plus { 1 } else { -1 });
        } else {
            m.vars.insert((sign_key(sign), i as u8, r as u16), 1);
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, &t) in &other.zero {
            let e = out.zero.entry(i).or_insert(0);
            *e += t;
            if *e == 0 {
                out.zero.remove(&i);
            }
        }
        for (&v, &p) in &other.vars {
            *out.vars.entry(v).or_insert(0) += p;
        }
        out
    }

    /// Inverse, defined when only zero modes occur.
    pub fn inv(&self) -> Option<Self> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(PiMono { zero: self.zero.iter().map(|(&i, &t)| (i, -t)).collect(), vars: BTreeMap::new() })
    }

    /// Total `l-` degree, zero modes excluded.
    pub fn minus_degree(&self) -> u32 {
        self.vars.iter().filter(|((s, _, _), _)| *s == 1).map(|((_, _, r), p)| *r as u32 * p).sum()
    }

    fn map_vars(&self, f: impl Fn(u8, u8) -> u8, g: impl Fn(u8) -> Option<u8>) -> Self {
        let mut out = PiMono::one();
        for (&i, &t) in &self.zero {
            if let Some(j) = g(i) {
                out = out.mul(&PiMono { zero: [(j, t)].into(), vars: BTreeMap::new() });
            }
        }
        for (&(s, i, r), &p) in &self.vars {
            out = out.mul(&PiMono { zero: BTreeMap::new(), vars: [((s, f(s, i), r), p)].into() });
        }
        out
    }
}

impl fmt::Display for PiMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&i, &t) in &self.zero {
            parts.push(if t > 0 { format!("l+{i}[0]^{t}") } else { format!("l-{i}[0]^{}", -t) });
        }
        for (&(s, i, r), &p) in &self.vars {
            let v = if s == 0 { format!("l+{i}[-{r}]") } else { format!("l-{i}[{r}]") };
            parts.push(if p == 1 { v } else { format!("{v}^{p}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of the commutative target, exact modulo `l-` degree above `cap`.
/// Equality compares the retained terms only.
#[derive(Clone, Debug)]
pub struct PiElem<F: Field> {
    terms: BTreeMap<PiMono, F>,
    cap: Option<u32>,
}

impl<F: Field> PiElem<F> {
    pub fn mono(m: PiMono, c: F) -> Self {
        let mut out = PiElem { terms: BTreeMap::new(), cap: None };
        out.add_term(m, c);
        out
    }

    pub fn var(sign: Sign, i: usize, r: usize) -> Self {
        Self::mono(PiMono::var(sign, i, r), F::one())
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        let cap = self.cap.map_or(cap, |c| c.min(cap));
        self.cap = Some(cap);
        self.terms.retain(|m, _| m.minus_degree() <= cap);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PiMono, &F)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: PiMono, c: F) {
        if c.is_zero() || self.cap.is_some_and(|s| m.minus_degree() > s) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Inverse of a single invertible monomial.
    pub fn inv_mono(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let mut out = Self::mono(m.inv()?, c.inv()?);
        out.cap = self.cap;
        Some(out)
    }

    /// Image under the homomorphism renaming `l+_i` and `l-_i` by index maps;
    /// `zero(i)` names the target of `l+_i[0]`, dropped (set to one) when `None`.
    pub fn rename(&self, plus: impl Fn(u8) -> u8, minus: impl Fn(u8) -> u8, zero: impl Fn(u8) -> Option<u8>) -> Self {
        let mut out = PiElem { terms: BTreeMap::new(), cap: self.cap };
        for (m, c) in &self.terms {
            let m = m.map_vars(|s, i| if s == 0 { plus(i) } else { minus(i) }, &zero);
            out.add_term(m, c.clone());
        }
        out
    }

    /// Imposes `l+_i[0] = 1` for every `i`.
    pub fn plus_zero_modes_one(&self) -> Self {
        self.rename(|i| i, |i| i, |_| None)
    }
}

impl<F: Field> PartialEq for PiElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

fn min_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<F: Field> Ring for PiElem<F> {
    fn zero() -> Self {
        PiElem { terms: BTreeMap::new(), cap: None }
    }
    fn one() -> Self {
        Self::mono(PiMono::one(), F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = PiElem { terms: BTreeMap::new(), cap: min_cap(self.cap, other.cap) };
        for (m, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = PiElem { terms: BTreeMap::new(), cap: min_cap(self.cap, other.cap) };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x.mul(y));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale_by(&F::one().neg())
    }
}

impl<F: Field> Module<F> for PiElem<F> {
    fn scale_by(&self, c: &F) -> Self {
        let mut out = PiElem { terms: BTreeMap::new(), cap: self.cap };
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c));
        }
        out
    }
}

impl<F: Field + fmt::Display> fmt::Display for PiElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub type PiSeries<F> = ZSeries<PiElem<F>>;

/// `l+_i(z)` cut after `z^{d_plus}`, with no range recorded. In a product with
/// `l-` series modulo degree above `cap`, the coefficients of `z^e` with
/// `e + cap <= d_plus` are unaffected by the cut.
pub fn plus_series<F: Field>(i: usize, d_plus: u32, cap: u32) -> PiSeries<F> {
    ZSeries::exact((0..=d_plus as usize).map(|r| (r as i64, PiElem::var(Sign::Plus, i, r).with_cap(cap))))
}

/// `l-_i(z) = Σ_r l-_i[r] z^{-r}`; exact, as modes above `cap` vanish.
pub fn minus_series<F: Field>(i: usize, cap: u32) -> PiSeries<F> {
    ZSeries::exact((0..=cap as usize).map(|r| (-(r as i64), PiElem::var(Sign::Minus, i, r).with_cap(cap))))
}

/// Inverse of a series in `z^{-1}` whose constant term is an invertible monomial
/// and whose other coefficients have positive `l-` degree.
pub fn invert_minus<F: Field>(s: &PiSeries<F>, cap: u32) -> Result<PiSeries<F>> {
    let c0 = s.coeff(0)?;
    let c0_inv = c0.inv_mono().ok_or_else(|| Error::NotInvertible(format!("constant term {c0} is not a monomial")))?;
    if s.terms().any(|(e, _)| e > 0) {
        return Err(Error::NotInvertible("series has positive powers of z".into()));
    }
    let one = ZSeries::constant(PiElem::one().with_cap(cap));
    let u = s.map(|c| c.mul(&c0_inv)).add(&one.neg());
    let mut acc = one.clone();
    let mut power = one;
    for _ in 0..cap {
        power = power.mul(&u.neg());
        acc = acc.add(&power);
    }
    Ok(acc.map(|c| c.mul(&c0_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rat};

    #[test]
    fn zero_modes_cancel() {
        let a: PiElem<Rat> = PiElem::var(Sign::Plus, 1, 0);
        let b = PiElem::var(Sign::Minus, 1, 0);
        assert_eq!(a.mul(&b), PiElem::one());
    }

    #[test]
    fn cap_drops_high_minus_degree() {
        let a: PiElem<Rat> = PiElem::var(Sign::Minus, 1, 2).with_cap(3);
        assert!(!a.mul(&PiElem::var(Sign::Minus, 2, 1)).is_zero());
        assert!(a.mul(&a).is_zero());
    }

    #[test]
    fn minus_inverse() {
        let s = minus_series::<Rat>(1, 3).rescale(&rat(2, 1)).unwrap();
        let p = s.mul(&invert_minus(&s, 3).unwrap());
        for e in -4..=0 {
            let want = if e == 0 { PiElem::one() } else { PiElem::zero() };
            assert_eq!(p.coeff(e).unwrap(), want, "e={e}");
        }
    }
}
