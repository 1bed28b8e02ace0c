//! Greatest common divisors of polynomials with rational coefficients,
//! computed over the integers (heuristic evaluation gcd, then primitive PRS).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ring::{Rat, Ring};

/// Integer polynomial, lowest degree first, no trailing zeros.
pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub(crate) fn zneg(a: &ZPoly) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

/// `c * q^e`
pub(crate) fn zmono(c: i64, e: usize) -> ZPoly {
    let mut v = vec![BigInt::zero(); e + 1];
    v[e] = BigInt::from(c);
    trim(v)
}

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: ZPoly) -> ZPoly {
    let c = content(&p);
    if c.is_zero() {
        return p;
    }
    let sign = if p.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let c = c * sign;
    p.into_iter().map(|x| x / &c).collect()
}

/// Primitive integer polynomial proportional to `p`.
fn to_z(p: &Poly<Rat>) -> ZPoly {
    let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive(p.coeffs().iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect())
}

pub(crate) fn to_q(p: &ZPoly) -> Poly<Rat> {
    Poly::from_coeffs(p.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn eval_z(p: &ZPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn divides(d: &Poly<Rat>, p: &Poly<Rat>) -> bool {
    p.div_rem(d).1.is_zero()
}

fn heuristic(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let norm = |p: &ZPoly| p.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut xi: BigInt = norm(a).min(norm(b)) * 2 + 29;
    let (qa, qb) = (to_q(a), to_q(b));
    for _ in 0..6 {
        let h = eval_z(a, &xi).gcd(&eval_z(b, &xi));
        // balanced xi-adic digits of h give the candidate
        let mut g = Vec::new();
        let mut rest = h;
        let half = &xi / 2;
        while !rest.is_zero() {
            let mut d = rest.mod_floor(&xi);
            if d > half {
                d -= &xi;
            }
            rest = (rest - &d) / &xi;
            g.push(d);
        }
        let g = primitive(trim(g));
        if !g.is_empty() {
            let qg = to_q(&g);
            if divides(&qg, &qa) && divides(&qg, &qb) {
                return Some(g);
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        r = trim(r);
    }
    r
}

fn prs(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if a.len() >= b.len() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    while !b.is_empty() {
        let r = primitive(prem(&a, &b));
        a = b;
        b = r;
    }
    primitive(a)
}

/// Monic gcd of two nonzero polynomials over the rationals.
pub fn gcd(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Poly::one();
    }
    let (za, zb) = (to_z(a), to_z(b));
    let g = heuristic(&za, &zb).unwrap_or_else(|| prs(&za, &zb));
    to_q(&g).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ring::rat;

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
    }

    #[test]
    fn agrees_with_euclid() {
        let f = p(&[1, 0, -1]).mul(&p(&[3, 1, 0, 2]));
        let g = p(&[1, 0, -1]).mul(&p(&[5, -2, 7]));
        assert_eq!(gcd(&f, &g), Poly::gcd(&f, &g));
        assert_eq!(prs(&to_z(&f), &to_z(&g)), to_z(&p(&[1, 0, -1])));
    }

    #[test]
    fn coprime_is_one() {
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), Poly::one());
    }
}
