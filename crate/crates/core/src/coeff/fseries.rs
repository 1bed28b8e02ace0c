//! The scalar factor `f(x)` normalizing the trigonometric R-matrix.
//!
//! `f` is the unique power series with constant term 1 satisfying
//! `f(x q^{2n}) (1 - x)(1 - x q^{2n}) = f(x) (1 - x q^2)(1 - x q^{2n-2})`.
//! Two constructions are provided: the coefficient recurrence, and the
//! infinite-product formula expanded through Euler's q-exponential identities.

use super::fps::Fps;
use super::ring::{Field, Ring};
use super::ratfunc::RatFunc;
use super::zgcd::{to_q, zadd, zmono, zmul, zneg, ZPoly};
use super::QCtx;
use crate::error::{invalid, Result};

/// `f(x)` to order `order` from the recurrence with `f_0 = 1`.
pub fn f_series<F: Field>(ctx: &QCtx<F>, n: usize, order: usize) -> Result<Fps<F>> {
    if n < 1 {
        return invalid(format!("f-series needs rank n >= 1, got {n}"));
    }
    if order < 1 {
        return invalid("f-series order must be at least 1");
    }
    let n = n as i64;
    let one = F::one();
    let q2n = ctx.q_pow(2 * n);
    let pref = one
        .sub(&ctx.q_pow(2))
        .mul(&one.sub(&ctx.q_pow(2 * n - 2)))
        .div(&one.sub(&q2n))
        .expect("q^{2n} = 1")
        .neg();
    let mut f: Vec<F> = vec![one.clone()];
    for k in 1..order {
        let denom = one.sub(&q2n.pow(k as u32));
        let mut acc = F::zero();
        for i in 1..=k {
            let num = one.sub(&q2n.pow(i as u32));
            acc = acc.add(&num.mul(&f[k - i]));
        }
        f.push(pref.mul(&acc.div(&denom).expect("q is a root of unity")));
    }
    Ok(Fps::from_coeffs(f.into_iter().enumerate(), order))
}

/// `(c x; Q)_inf` if `inverse` is false, else its reciprocal, to the given order.
fn q_pochhammer<F: Field>(c: &F, base: &F, order: usize, inverse: bool) -> Fps<F> {
    // (base; base)_k accumulated on the fly
    let mut qq = F::one();
    let mut terms = Vec::with_capacity(order);
    for k in 0..order {
        if k > 0 {
            qq = qq.mul(&F::one().sub(&base.pow(k as u32)));
        }
        let ck = c.pow(k as u32);
        let t = if inverse {
            ck.div(&qq).expect("root of unity")
        } else {
            let sign = if k % 2 == 0 { F::one() } else { F::one().neg() };
            let tri = base.pow((k * k.saturating_sub(1) / 2) as u32);
            sign.mul(&tri).mul(&ck).div(&qq).expect("root of unity")
        };
        terms.push((k, t));
    }
    Fps::from_coeffs(terms, order)
}

/// `f(x)` to order `order` from the product formula.
pub fn f_series_product<F: Field>(ctx: &QCtx<F>, n: usize, order: usize) -> Result<Fps<F>> {
    if n < 2 {
        return invalid(format!("f-series needs rank n >= 2, got {n}"));
    }
    let n = n as i64;
    let base = ctx.q_pow(2 * n);
    let one = F::one();
    let num1 = q_pochhammer(&one, &base, order, false);
    let num2 = q_pochhammer(&base, &base, order, false);
    let den1 = q_pochhammer(&ctx.q_pow(2), &base, order, true);
    let den2 = q_pochhammer(&ctx.q_pow(2 * n - 2), &base, order, true);
    Ok(num1.mul(&num2).mul(&den1).mul(&den2))
}

/// Whether `f` satisfies the defining functional equation through `x^{N-1}`.
pub fn f_functional_holds<F: Field>(ctx: &QCtx<F>, n: usize, f: &Fps<F>) -> bool {
    functional_residual(ctx, n, f).is_zero()
}

pub fn functional_residual<F: Field>(ctx: &QCtx<F>, n: usize, f: &Fps<F>) -> Fps<F> {
    let n = n as i64;
    let lin = |c: F| Fps::polynomial(vec![F::one(), c.neg()]);
    let shifted = f.rescale_var(&ctx.q_pow(2 * n));
    let lhs = shifted.mul(&lin(F::one())).mul(&lin(ctx.q_pow(2 * n)));
    let rhs = f.mul(&lin(ctx.q_pow(2))).mul(&lin(ctx.q_pow(2 * n - 2)));
    lhs.sub(&rhs)
}

/// `f_functional_check(n, N)`: build `f` by recurrence and test its relation.
pub fn f_functional_check<F: Field>(ctx: &QCtx<F>, n: usize, order: usize) -> Result<bool> {
    let f = f_series(ctx, n, order)?;
    Ok(f_functional_holds(ctx, n, &f))
}

/// Exact symbolic `f(x)` in the form `f_k = g_k(q) / (Q;Q)_k` with `Q = q^{2n}`
/// and integer polynomials `g_k`.
///
/// With a fixed denominator per coefficient every step is integer polynomial
/// arithmetic, which keeps high orders cheap where generic rational-function
/// arithmetic would spend its time in gcds.
#[derive(Clone, Debug, PartialEq)]
pub struct FNumerators {
    n: usize,
    g: Vec<ZPoly>,
}

fn one_minus(e: usize) -> ZPoly {
    zadd(&zmono(1, 0), &zmono(-1, e))
}

/// `[i]_Q = 1 + Q + ... + Q^{i-1}` with `Q = q^qe`
fn q_int(i: usize, qe: usize) -> ZPoly {
    (0..i).fold(Vec::new(), |acc, j| zadd(&acc, &zmono(1, j * qe)))
}

/// Gaussian binomials `[k choose i]_Q` for all `i <= k`.
fn q_binomials(k: usize, qe: usize) -> Vec<ZPoly> {
    let mut row = vec![zmono(1, 0)];
    for m in 1..=k {
        let mut next = vec![zmono(1, 0)];
        for i in 1..m {
            next.push(zadd(&row[i - 1], &zmul(&zmono(1, i * qe), &row[i])));
        }
        next.push(zmono(1, 0));
        row = next;
    }
    row
}

/// Product of divided-power series `sum a_k x^k / (Q;Q)_k`.
fn divided_mul(a: &[ZPoly], b: &[ZPoly], qe: usize) -> Vec<ZPoly> {
    (0..a.len())
        .map(|k| {
            let bin = q_binomials(k, qe);
            (0..=k).fold(Vec::new(), |acc, i| zadd(&acc, &zmul(&bin[i], &zmul(&a[i], &b[k - i]))))
        })
        .collect()
}

impl FNumerators {
    /// Numerators from the coefficient recurrence.
    pub fn recurrence(n: usize, order: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("f-series needs rank n >= 2, got {n}"));
        }
        let qe = 2 * n;
        let pref = zneg(&zmul(&one_minus(2), &one_minus(2 * n - 2)));
        let mut g: Vec<ZPoly> = vec![zmono(1, 0)];
        for k in 1..order {
            let mut acc = Vec::new();
            // (Q;Q)_{k-1} / (Q;Q)_{k-i}, built up as i grows
            let mut ratio = zmono(1, 0);
            for i in 1..=k {
                if i > 1 {
                    ratio = zmul(&ratio, &one_minus((k - i + 1) * qe));
                }
                acc = zadd(&acc, &zmul(&q_int(i, qe), &zmul(&ratio, &g[k - i])));
            }
            g.push(zmul(&pref, &acc));
        }
        Ok(FNumerators { n, g })
    }

    /// Numerators from the infinite-product formula.
    pub fn product(n: usize, order: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("f-series needs rank n >= 2, got {n}"));
        }
        let qe = 2 * n;
        let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        let num1: Vec<ZPoly> = (0..order).map(|k| zmono(sign(k), qe * k * k.saturating_sub(1) / 2)).collect();
        let num2: Vec<ZPoly> = (0..order).map(|k| zmono(sign(k), qe * (k * k.saturating_sub(1) / 2 + k))).collect();
        let den1: Vec<ZPoly> = (0..order).map(|k| zmono(1, 2 * k)).collect();
        let den2: Vec<ZPoly> = (0..order).map(|k| zmono(1, (2 * n - 2) * k)).collect();
        let g = divided_mul(&divided_mul(&num1, &num2, qe), &divided_mul(&den1, &den2, qe), qe);
        Ok(FNumerators { n, g })
    }

    pub fn order(&self) -> usize {
        self.g.len()
    }

    /// Whether the functional equation holds through `x^{order-1}`, checked
    /// after clearing the denominator `(Q;Q)_k` of each coefficient.
    pub fn functional_holds(&self) -> bool {
        let qe = 2 * self.n;
        let zero = Vec::new();
        let g = |k: isize| if k < 0 { &zero } else { &self.g[k as usize] };
        (0..self.g.len()).all(|k| {
            let ki = k as isize;
            let t0 = zmul(&zneg(&one_minus(k * qe)), g(ki));
            let mut c1 = zadd(&zmono(1, 2), &zmono(1, 2 * self.n - 2));
            if k >= 1 {
                c1 = zadd(&c1, &zneg(&zmul(&zadd(&zmono(1, 0), &zmono(1, qe)), &zmono(1, (k - 1) * qe))));
            }
            let t1 = zmul(&zmul(&c1, &one_minus(k * qe)), g(ki - 1));
            let t2 = if k >= 2 {
                let c2 = zadd(&zmono(1, (k - 1) * qe), &zmono(-1, qe));
                zmul(&zmul(&c2, &zmul(&one_minus((k - 1) * qe), &one_minus(k * qe))), g(ki - 2))
            } else {
                Vec::new()
            };
            zadd(&zadd(&t0, &t1), &t2).is_empty()
        })
    }

    /// Perturb `g_1` by one unit (used to confirm the check can fail).
    pub fn perturb_first(&mut self) {
        if self.g.len() > 1 {
            self.g[1] = zadd(&self.g[1], &zmono(1, 0));
        }
    }

    /// The coefficients as reduced rational functions.
    pub fn to_fps(&self) -> Fps<RatFunc> {
        let qe = 2 * self.n;
        let mut den = zmono(1, 0);
        let mut out = Vec::with_capacity(self.g.len());
        for (k, g) in self.g.iter().enumerate() {
            if k > 0 {
                den = zmul(&den, &one_minus(k * qe));
            }
            out.push((k, RatFunc::new(to_q(g), to_q(&den))));
        }
        Fps::from_coeffs(out, self.g.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ring::rat;

    #[test]
    fn first_coefficient_n2() {
        let ctx = QCtx::<RatFunc>::symbolic();
        let f = f_series(&ctx, 2, 2).unwrap();
        let q = RatFunc::q();
        let one = RatFunc::one();
        let q2 = q.pow(2);
        let expect = one.sub(&q2).pow(2).div(&one.sub(&q.pow(4))).unwrap().neg();
        assert_eq!(f.coeff(1), expect);
        assert_eq!(f.coeff(1).eval_at_q(&rat(2, 1)).unwrap(), rat(3, 5));
    }

    #[test]
    fn order_one_is_constant() {
        let ctx = QCtx::<RatFunc>::symbolic();
        let f = f_series(&ctx, 3, 1).unwrap();
        assert_eq!(f, Fps::from_coeffs([(0, RatFunc::one())], 1));
        assert!(f_functional_check(&ctx, 3, 1).unwrap());
    }

    #[test]
    fn rejects_degenerate_rank() {
        let ctx = QCtx::<RatFunc>::symbolic();
        assert!(f_series(&ctx, 0, 3).is_err());
        // rank one: the recurrence prefactor vanishes and f = 1
        assert_eq!(f_series(&ctx, 1, 3).unwrap().coeff(1), RatFunc::zero());
        assert!(f_series(&ctx, 2, 0).is_err());
    }

    #[test]
    fn recurrence_matches_product_n3() {
        let ctx = QCtx::<RatFunc>::symbolic();
        let a = f_series(&ctx, 3, 6).unwrap();
        let b = f_series_product(&ctx, 3, 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generic_symbolic_order_nine() {
        let ctx = QCtx::<RatFunc>::symbolic();
        for n in [2, 3] {
            let a = f_series(&ctx, n, 9).unwrap();
            assert_eq!(a, f_series_product(&ctx, n, 9).unwrap());
            assert!(f_functional_holds(&ctx, n, &a));
        }
    }

    #[test]
    fn exact_numerators_order_twenty() {
        for n in [2, 3] {
            let a = FNumerators::recurrence(n, 20).unwrap();
            assert_eq!(a, FNumerators::product(n, 20).unwrap());
            assert!(a.functional_holds());
        }
        let mut a = FNumerators::recurrence(2, 20).unwrap();
        a.perturb_first();
        assert!(!a.functional_holds());
    }

    #[test]
    fn exact_numerators_match_generic() {
        let ctx = QCtx::<RatFunc>::symbolic();
        let a = FNumerators::recurrence(3, 6).unwrap().to_fps();
        assert_eq!(a, f_series(&ctx, 3, 6).unwrap());
    }

    #[test]
    fn mutated_f1_breaks_relation() {
        let ctx = QCtx::<RatFunc>::symbolic();
        let mut f = f_series(&ctx, 2, 10).unwrap();
        assert!(f_functional_holds(&ctx, 2, &f));
        f.add_term(1, RatFunc::one());
        assert!(!f_functional_holds(&ctx, 2, &f));
    }
}
