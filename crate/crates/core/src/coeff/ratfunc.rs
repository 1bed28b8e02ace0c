use std::fmt;

use super::poly::Poly;
use super::ring::{Field, Rat, Ring};
use super::zgcd;
use crate::error::{Error, Result};

/// Rational function in the deformation parameter `q` over the rationals.
///
/// Always reduced: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

impl RatFunc {
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // strip common powers of q before any gcd work
        let v = num.valuation().unwrap().min(den.valuation().unwrap());
        let (num, den) = (shift_down(&num, v), shift_down(&den, v));
        if den.coeffs().len() - den.valuation().unwrap() == 1 || num.degree() == Some(0) {
            // denominator c*q^a with num(0) != 0 or a = 0, or constant numerator
            return Self::normalized(num, den);
        }
        let g = zgcd::gcd(&num, &den);
        if g.is_one() {
            return Self::normalized(num, den);
        }
        Self::normalized(num.div_rem(&g).0, den.div_rem(&g).0)
    }

    /// Make the (already coprime) denominator monic.
    fn normalized(num: Poly<Rat>, den: Poly<Rat>) -> Self {
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            return RatFunc { num, den };
        }
        let inv = lead.inv().unwrap();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly<Rat>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numerator(&self) -> &Poly<Rat> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Rat> {
        &self.den
    }

    /// Exact evaluation at a rational value of `q`.
    pub fn eval_at_q(&self, value: &Rat) -> Result<Rat> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(value.to_string()));
        }
        Ok(self.num.eval(value) / d)
    }
}

fn shift_down(p: &Poly<Rat>, v: usize) -> Poly<Rat> {
    if v == 0 {
        return p.clone();
    }
    Poly::from_coeffs(p.coeffs()[v..].to_vec())
}

/// Divide `a` and `b` by their gcd.
fn cancel(a: &Poly<Rat>, b: &Poly<Rat>) -> (Poly<Rat>, Poly<Rat>) {
    if b.degree() == Some(0) {
        return (a.clone(), b.clone());
    }
    let g = zgcd::gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_rem(&g).0, b.div_rem(&g).0)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        if other.den.is_one() {
            return Self::normalized(other.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let g = zgcd::gcd(&self.den, &other.den);
        if g.is_one() {
            // coprime reduced denominators give a reduced sum
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return Self::normalized(num, self.den.mul(&other.den));
        }
        let (a, _) = self.den.div_rem(&g);
        let (b, _) = other.den.div_rem(&g);
        Self::new(self.num.mul(&b).add(&other.num.mul(&a)), a.mul(&other.den))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: Poly::one() };
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        Self::normalized(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::from_poly(Poly::constant(r.clone()))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_var("q");
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let d = self.den.fmt_var("q");
        let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(n), wrap(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ring::rat;

    fn qpow(e: i64) -> RatFunc {
        RatFunc::q().powi(e).unwrap()
    }

    #[test]
    fn reduced_form_is_unique() {
        let q = RatFunc::q();
        let one = RatFunc::one();
        let a = q.sub(&one).mul(&q.add(&one)).div(&q.add(&one)).unwrap();
        assert_eq!(a, q.sub(&one));
        assert_eq!(q.sub(&q), RatFunc::zero());
        assert!(RatFunc::zero().denominator().is_one());
    }

    #[test]
    fn eval_examples() {
        let q = RatFunc::q();
        let one = RatFunc::one();
        let x = q.sub(&one).div(&q.add(&one)).unwrap();
        assert_eq!(x.eval_at_q(&rat(3, 1)).unwrap(), rat(1, 2));
        assert!(x.eval_at_q(&rat(-1, 1)).is_err());
    }

    #[test]
    fn negative_powers() {
        let a = qpow(-3).mul(&qpow(5));
        assert_eq!(a, qpow(2));
        assert_eq!(qpow(-1).to_string(), "1/q");
    }
}
