//! Exchange of `l-` past `l+`.
//!
//! With `A(x) = R(x q^n)`, `B(x) = R(x q^{-n})` and `x = u/v`,
//! `A(x) L1+(u) L2-(v) = L2-(v) L1+(u) B(x)`. Writing `P_{r,s}` for the
//! matrix of ordered products `l+_ij[-r] l-_km[s]` and `X_{r,s}` for the
//! reversed ones, the `u^r v^{-s}` coefficient gives
//! `X_{r,s} = (Σ_j A_j P_{r-j,s-j} - Σ_{j≥1} X_{r-j,s-j} B_j) B_0^{-1}`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::elem::AlgElem;
use super::gen::Gen;
use crate::coeff::{Field, Fps, Module, QCtx, Ring};
use crate::error::{Error, Result};
use crate::tensor::{r_full, r_full_with, TensorOp};

type Table<F> = TensorOp<AlgElem<F>>;

pub struct MixedTable<F: Field> {
    n: usize,
    a: Vec<TensorOp<F>>,
    b: Vec<TensorOp<F>>,
    b0_inv: TensorOp<F>,
    cache: RwLock<HashMap<(u16, u16), Arc<Table<F>>>>,
}

/// `x m` for a matrix of algebra elements and a scalar matrix.
fn mul_right<F: Field>(x: &Table<F>, m: &TensorOp<F>) -> Table<F> {
    let mut out = TensorOp::zero(x.n(), x.k());
    for (&(r, c), e) in x.entries() {
        for (&(c2, d), s) in m.entries() {
            if c2 == c {
                out.add_entry(r, d, e.scale_by(s));
            }
        }
    }
    out
}

fn mul_left<F: Field>(m: &TensorOp<F>, x: &Table<F>) -> Table<F> {
    let mut out = TensorOp::zero(x.n(), x.k());
    for (&(r, c), s) in m.entries() {
        for (&(c2, d), e) in x.entries() {
            if c2 == c {
                out.add_entry(r, d, e.scale_by(s));
            }
        }
    }
    out
}

impl<F: Field> MixedTable<F> {
    /// Tables with `R(x)` expanded to `order` terms.
    pub fn new(ctx: &QCtx<F>, n: usize, order: usize) -> Result<Self> {
        Self::from_r(ctx, n, &r_full(ctx, n, order)?)
    }

    /// Table for `R(x) = f(x) R̄(x)` with a caller-supplied `f`.
    pub fn with_f(ctx: &QCtx<F>, n: usize, f: &Fps<F>) -> Result<Self> {
        Self::from_r(ctx, n, &r_full_with(ctx, n, f)?)
    }

    fn from_r(ctx: &QCtx<F>, n: usize, r: &TensorOp<Fps<F>>) -> Result<Self> {
        let order = r.order();
        let mut a = Vec::with_capacity(order);
        let mut b = Vec::with_capacity(order);
        for j in 0..order {
            let rj = r.coeff_op(j);
            a.push(rj.scale(&ctx.q_pow((n * j) as i64)));
            b.push(rj.scale(&ctx.q_pow(-((n * j) as i64))));
        }
        let b0_inv = b[0].invert()?;
        Ok(MixedTable { n, a, b, b0_inv, cache: RwLock::new(HashMap::new()) })
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `P_{r,s}`: entry `((i,k),(j,m))` is `l+_ij[-r] l-_km[s]` with zero
    /// generators dropped and `l+_ii[0] l-_ii[0] = 1`.
    fn p(&self, r: usize, s: usize) -> Table<F> {
        let n = self.n;
        let mut out = TensorOp::zero(n, 2);
        for i in 1..=n {
            for k in 1..=n {
                for j in 1..=n {
                    for m in 1..=n {
                        let (x, y) = (Gen::plus(i, j, r), Gen::minus(k, m, s));
                        if x.is_zero_gen() || y.is_zero_gen() {
                            continue;
                        }
                        let e = if x.is_diag_zero() && y.is_diag_zero() && x.i == y.i {
                            AlgElem::one()
                        } else {
                            AlgElem::word(vec![x, y], F::one())
                        };
                        out.add_entry((i - 1) * n + k - 1, (j - 1) * n + m - 1, e);
                    }
                }
            }
        }
        out
    }

    /// `X_{r,s}`, memoised.
    pub fn x(&self, r: usize, s: usize) -> Result<Arc<Table<F>>> {
        let key = (r as u16, s as u16);
        if let Some(t) = self.cache.read().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let depth = r.min(s);
        if depth >= self.order() {
            return Err(Error::BudgetExceeded(format!(
                "exchanging l-[{s}] past l+[-{r}] needs R(x) to order {}, have {}",
                depth + 1,
                self.order()
            )));
        }
        let mut acc = TensorOp::zero(self.n, 2);
        for j in 0..=depth {
            acc = acc.add(&mul_left(&self.a[j], &self.p(r - j, s - j)));
        }
        for j in 1..=depth {
            let prev = self.x(r - j, s - j)?;
            acc = acc.sub(&mul_right(&prev, &self.b[j]));
        }
        let t = Arc::new(mul_right(&acc, &self.b0_inv));
        self.cache.write().unwrap().insert(key, t.clone());
        Ok(t)
    }

    /// Normal-ordered value of `l-_km[s] l+_ij[-r]`.
    pub fn exchange(&self, minus: &Gen, plus: &Gen) -> Result<AlgElem<F>> {
        let n = self.n;
        let t = self.x(plus.r as usize, minus.r as usize)?;
        let row = (plus.i as usize - 1) * n + minus.i as usize - 1;
        let col = (plus.j as usize - 1) * n + minus.j as usize - 1;
        Ok(t.entry(row, col))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RatFunc;

    fn table(n: usize) -> MixedTable<RatFunc> {
        MixedTable::new(&QCtx::symbolic(), n, 4).unwrap()
    }

    #[test]
    fn zero_mode_exchange() {
        let t = table(2);
        let (m, p) = (Gen::minus(1, 1, 0), Gen::plus(1, 2, 1));
        let q = QCtx::<RatFunc>::symbolic().q_pow(1);
        assert_eq!(t.exchange(&m, &p).unwrap(), AlgElem::word(vec![p, m], q));
        let d = Gen::plus(1, 1, 0);
        assert_eq!(t.exchange(&m, &d).unwrap(), AlgElem::one());
    }

    #[test]
    fn zero_generator_positions_vanish() {
        let t = table(3);
        for (r, s) in [(0, 0), (0, 2), (2, 0), (1, 1), (2, 2)] {
            for i in 1..=3 {
                for j in 1..=3 {
                    for k in 1..=3 {
                        for m in 1..=3 {
                            let (p, mi) = (Gen::plus(i, j, r), Gen::minus(k, m, s));
                            if p.is_zero_gen() || mi.is_zero_gen() {
                                assert!(t.exchange(&mi, &p).unwrap().is_zero(), "{mi} {p}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exchange_preserves_degree_and_weight() {
        let t = table(2);
        for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 3)] {
            for (i, j, k, m) in [(1, 2, 2, 1), (2, 1, 1, 2), (1, 1, 2, 2), (2, 2, 1, 1)] {
                let (p, mi) = (Gen::plus(i, j, r), Gen::minus(k, m, s));
                let deg = p.degree() + mi.degree();
                let wt = p.weight() + mi.weight();
                for (w, _) in t.exchange(&mi, &p).unwrap().terms() {
                    assert_eq!(super::super::elem::word_degree(w), deg);
                    assert_eq!(super::super::elem::word_weight(w), wt);
                }
            }
        }
    }
}
