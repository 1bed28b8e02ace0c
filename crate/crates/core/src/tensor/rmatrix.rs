//! The trigonometric R-matrices `R(u,v)`, `R̄(x)`, `R(x) = f(x) R̄(x)`, the
//! diagonal matrix `D`, and the identities they satisfy.

use super::TensorOp;
use crate::coeff::{f_series, Field, Fps, MPoly, Poly, QCtx, Ring};
use crate::error::{invalid, Error, Result};

fn check_rank(n: usize) -> Result<()> {
    if n < 1 {
        return invalid(format!("R-matrix needs n >= 1, got {n}"));
    }
    Ok(())
}

/// Entries of `R(u,v)` as `(row, col, coefficient of u, coefficient of v)`.
fn r_entries<F: Field>(ctx: &QCtx<F>, n: usize) -> Vec<(usize, usize, F, F)> {
    r_entries_with(ctx, n, false)
}

/// With `broken`, every `e_ij ⊗ e_ji` term is attached to `u`.
fn r_entries_with<F: Field>(ctx: &QCtx<F>, n: usize, broken: bool) -> Vec<(usize, usize, F, F)> {
    let mut out = Vec::new();
    let qd = ctx.qdiff();
    for i in 0..n {
        for j in 0..n {
            let diag = i * n + j;
            if i == j {
                out.push((diag, diag, ctx.q_pow(-1), ctx.q_pow(1).neg()));
            } else {
                out.push((diag, diag, F::one(), F::one().neg()));
                // e_ij ⊗ e_ji: row (i,j), column (j,i)
                let (cu, cv) = if i > j || broken { (qd.clone(), F::zero()) } else { (F::zero(), qd.clone()) };
                out.push((i * n + j, j * n + i, cu, cv));
            }
        }
    }
    out
}

/// The constant matrices `(A, B)` with `R(u,v) = u A + v B`.
pub fn r_uv_parts<F: Field>(ctx: &QCtx<F>, n: usize) -> Result<(TensorOp<F>, TensorOp<F>)> {
    check_rank(n)?;
    let (mut a, mut b) = (TensorOp::zero(n, 2), TensorOp::zero(n, 2));
    for (row, col, cu, cv) in r_entries(ctx, n) {
        a.add_entry(row, col, cu);
        b.add_entry(row, col, cv);
    }
    Ok((a, b))
}

/// `R(u,v)` with entries in `F[u,v]` (variables 0 and 1 of [`MPoly`]).
pub fn r_two_param<F: Field>(ctx: &QCtx<F>, n: usize) -> Result<TensorOp<MPoly<F>>> {
    r_two_param_with(ctx, n, false)
}

/// `R(u,v)`, or with `broken` a variant whose `e_ij ⊗ e_ji` terms all carry `u`.
pub fn r_two_param_with<F: Field>(ctx: &QCtx<F>, n: usize, broken: bool) -> Result<TensorOp<MPoly<F>>> {
    check_rank(n)?;
    let (u, v) = (MPoly::<F>::var(0), MPoly::<F>::var(1));
    let mut r = TensorOp::zero(n, 2);
    for (row, col, cu, cv) in r_entries_with(ctx, n, broken) {
        r.add_entry(row, col, u.scale(&cu).add(&v.scale(&cv)));
    }
    Ok(r)
}

/// `R12(u,v) R13(u,w) R23(v,w) - R23(v,w) R13(u,w) R12(u,v)`.
pub fn ybe_residual<F: Field>(ctx: &QCtx<F>, n: usize) -> Result<TensorOp<MPoly<F>>> {
    ybe_residual_of(&r_two_param(ctx, n)?)
}

/// The Yang-Baxter residual of any two-parameter operator on two legs.
pub fn ybe_residual_of<F: Field>(r: &TensorOp<MPoly<F>>) -> Result<TensorOp<MPoly<F>>> {
    let (u, v, w) = (MPoly::var(0), MPoly::var(1), MPoly::var(2));
    let sub = |a: &MPoly<F>, b: &MPoly<F>| r.map(|e| e.substitute(&[a.clone(), b.clone(), w.clone()]));
    let r12 = sub(&u, &v).embed_two_leg(1, 2, 3)?;
    let r13 = sub(&u, &w).embed_two_leg(1, 3, 3)?;
    let r23 = sub(&v, &w).embed_two_leg(2, 3, 3)?;
    Ok(r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12)))
}

/// `D = diag(q^{n-1}, q^{n-3}, ..., q^{-n+1})`.
pub fn d_matrix<F: Field>(ctx: &QCtx<F>, n: usize) -> TensorOp<F> {
    let mut d = TensorOp::zero(n, 1);
    for i in 0..n {
        d.add_entry(i, i, ctx.q_pow(n as i64 - 2 * i as i64 - 1));
    }
    d
}

/// `R̄(x) = R(x,1) / (q^{-1} x - q)`: polynomial numerators over a common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RBar<F> {
    pub num: TensorOp<Poly<F>>,
    pub den: Poly<F>,
}

pub fn r_bar<F: Field>(ctx: &QCtx<F>, n: usize) -> Result<RBar<F>> {
    check_rank(n)?;
    let mut num = TensorOp::zero(n, 2);
    for (row, col, cu, cv) in r_entries(ctx, n) {
        num.add_entry(row, col, Poly::from_coeffs(vec![cv, cu]));
    }
    let den = Poly::from_coeffs(vec![ctx.q_pow(1).neg(), ctx.q_pow(-1)]);
    Ok(RBar { num, den })
}

impl<F: Field> RBar<F> {
    /// Entrywise value at `x = 0`.
    pub fn at_zero(&self) -> TensorOp<F> {
        let d0 = self.den.coeff(0).inv().unwrap();
        self.num.map(|p| p.coeff(0).mul(&d0))
    }

    /// Expansion in powers of `x` to the given order.
    pub fn series(&self, order: usize) -> Result<TensorOp<Fps<F>>> {
        let den_inv = Fps::polynomial(self.den.coeffs().to_vec()).invert(order)?;
        Ok(self.num.map(|p| Fps::polynomial(p.coeffs().to_vec()).mul(&den_inv)))
    }
}

/// `R(x) = f(x) R̄(x)` expanded to the given order in `x`.
pub fn r_full<F: Field>(ctx: &QCtx<F>, n: usize, order: usize) -> Result<TensorOp<Fps<F>>> {
    let f = f_series(ctx, n, order)?;
    r_full_with(ctx, n, &f)
}

/// `R(x)` built from a caller-supplied `f`, used to probe sensitivity to `f`.
pub fn r_full_with<F: Field>(ctx: &QCtx<F>, n: usize, f: &Fps<F>) -> Result<TensorOp<Fps<F>>> {
    let rb = r_bar(ctx, n)?.series(f.order())?;
    Ok(rb.map(|e| f.mul(e)))
}

/// Unitarity `R̄(x^{-1}) R̄_21(x) = 1`, cleared of denominators:
/// residual of `R(v,u) R_21(u,v) = (q^{-1}v - qu)(q^{-1}u - qv)`.
pub fn unitarity_check<F: Field>(ctx: &QCtx<F>, n: usize) -> Result<TensorOp<MPoly<F>>> {
    let r = r_two_param(ctx, n)?;
    let (u, v, w) = (MPoly::<F>::var(0), MPoly::<F>::var(1), MPoly::<F>::var(2));
    let swapped = r.map(|e| e.substitute(&[v.clone(), u.clone(), w.clone()]));
    let r21 = r.embed_two_leg(2, 1, 2)?;
    let c1 = v.scale(&ctx.q_pow(-1)).sub(&u.scale(&ctx.q_pow(1)));
    let c2 = u.scale(&ctx.q_pow(-1)).sub(&v.scale(&ctx.q_pow(1)));
    Ok(swapped.mul(&r21).sub(&TensorOp::scalar(n, 2, c1.mul(&c2))))
}

impl<F: Field> TensorOp<F> {
    /// Inverse by Gauss-Jordan elimination on the dense matrix.
    pub fn invert(&self) -> Result<TensorOp<F>> {
        let dim = self.dim();
        let mut a: Vec<Vec<F>> = (0..dim).map(|r| (0..dim).map(|c| self.entry(r, c)).collect()).collect();
        let mut inv: Vec<Vec<F>> =
            (0..dim).map(|r| (0..dim).map(|c| if r == c { F::one() } else { F::zero() }).collect()).collect();
        for col in 0..dim {
            let piv = (col..dim)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::NotInvertible("singular operator".into()))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv().unwrap();
            for c in 0..dim {
                a[col][c] = a[col][c].mul(&p);
                inv[col][c] = inv[col][c].mul(&p);
            }
            for r in 0..dim {
                if r != col && !a[r][col].is_zero() {
                    let m = a[r][col].clone();
                    for c in 0..dim {
                        a[r][c] = a[r][c].sub(&m.mul(&a[col][c]));
                        inv[r][c] = inv[r][c].sub(&m.mul(&inv[col][c]));
                    }
                }
            }
        }
        let mut out = TensorOp::zero(self.n, self.k);
        for (r, row) in inv.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                out.add_entry(r, c, v);
            }
        }
        Ok(out)
    }
}

impl<F: Field> TensorOp<Fps<F>> {
    /// Coefficient matrix of `x^e`.
    pub fn coeff_op(&self, e: usize) -> TensorOp<F> {
        self.map(|s| s.coeff(e))
    }

    /// Smallest truncation order among the entries.
    pub fn order(&self) -> usize {
        self.entries().map(|(_, s)| s.order()).min().unwrap_or(crate::coeff::EXACT)
    }

    /// Inverse as a matrix power series, to the given order.
    pub fn invert_series(&self, order: usize) -> Result<TensorOp<Fps<F>>> {
        let order = order.min(self.order());
        let m: Vec<TensorOp<F>> = (0..order).map(|e| self.coeff_op(e)).collect();
        let m0_inv = m[0].invert()?;
        let mut inv: Vec<TensorOp<F>> = vec![m0_inv.clone()];
        for e in 1..order {
            let mut acc = TensorOp::zero(self.n, self.k);
            for j in 1..=e {
                acc = acc.add(&m[j].mul(&inv[e - j]));
            }
            inv.push(m0_inv.mul(&acc).neg());
        }
        let mut out = TensorOp::zero(self.n, self.k);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                let s = Fps::from_coeffs(inv.iter().enumerate().map(|(e, op)| (e, op.entry(r, c))), order);
                if !s.is_zero() {
                    out.entries.insert((r, c), s);
                }
            }
        }
        // keep zero entries with known order out of the map; they read back as exact zero
        Ok(out)
    }

    /// Substitute `x -> c x` in every entry.
    pub fn rescale_var(&self, c: &F) -> Self {
        self.map(|s| s.rescale_var(c))
    }
}

/// Residuals of both crossing relations for `R(x)`, to the given order:
/// `(R12(x)^{-1})^{t2} D2 R12(xq^{2n})^{t2} - D2` and
/// `R12(xq^{2n})^{t1} D1 (R12(x)^{-1})^{t1} - D1`.
pub fn crossing_check<F: Field>(
    ctx: &QCtx<F>,
    n: usize,
    r: &TensorOp<Fps<F>>,
    d: &TensorOp<F>,
) -> Result<(TensorOp<Fps<F>>, TensorOp<Fps<F>>)> {
    let order = r.order();
    let rinv = r.invert_series(order)?;
    let shifted = r.rescale_var(&ctx.q_pow(2 * n as i64));
    let as_series = |op: &TensorOp<F>| op.map(|c| Fps::from_coeffs([(0, c.clone())], order));
    let d1 = as_series(&d.embed_one_leg(1, 2)?);
    let d2 = as_series(&d.embed_one_leg(2, 2)?);
    let first = rinv.partial_transpose(2)?.mul(&d2).mul(&shifted.partial_transpose(2)?).sub(&d2);
    let second = shifted.partial_transpose(1)?.mul(&d1).mul(&rinv.partial_transpose(1)?).sub(&d1);
    Ok((first, second))
}

/// The residuals of [`crossing_check`] with the scalar factor kept apart.
/// Since `R(x) = f(x) R̄(x)`, both products equal `g(x)` times the same
/// products of `R̄`, where `g(x) = f(xq^{2n}) / f(x)`; the matrix work then
/// stays free of the large denominators of `f`.
pub fn crossing_check_factored<F: Field>(
    ctx: &QCtx<F>,
    n: usize,
    f: &Fps<F>,
    d: &TensorOp<F>,
) -> Result<(TensorOp<Fps<F>>, TensorOp<Fps<F>>)> {
    let order = f.order();
    let shift = ctx.q_pow(2 * n as i64);
    let g = f.rescale_var(&shift).mul(&f.invert(order)?);
    let rb = r_bar(ctx, n)?.series(order)?;
    let rinv = rb.invert_series(order)?;
    let shifted = rb.rescale_var(&shift);
    let as_series = |op: &TensorOp<F>| op.map(|c| Fps::from_coeffs([(0, c.clone())], order));
    let d1 = as_series(&d.embed_one_leg(1, 2)?);
    let d2 = as_series(&d.embed_one_leg(2, 2)?);
    let first = rinv.partial_transpose(2)?.mul(&d2).mul(&shifted.partial_transpose(2)?);
    let second = shifted.partial_transpose(1)?.mul(&d1).mul(&rinv.partial_transpose(1)?);
    Ok((first.map(|e| g.mul(e)).sub(&d2), second.map(|e| g.mul(e)).sub(&d1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rat, RatFunc};

    #[test]
    fn diagonal_entry() {
        let c = QCtx::<RatFunc>::symbolic();
        let r = r_two_param(&c, 2).unwrap();
        let expect = MPoly::var(0).scale(&c.q_pow(-1)).sub(&MPoly::var(1).scale(&c.q_pow(1)));
        assert_eq!(r.entry(0, 0), expect);
        assert!(r_two_param(&c, 0).is_err());
    }

    #[test]
    fn r_at_equal_points_is_scaled_flip() {
        let c = QCtx::<RatFunc>::symbolic();
        let u = MPoly::<RatFunc>::var(0);
        let r = r_two_param(&c, 3).unwrap().map(|e| e.substitute(&[u.clone(), u.clone(), MPoly::var(2)]));
        let mut flip = TensorOp::zero(3, 2);
        for i in 0..3 {
            for j in 0..3 {
                flip.add_entry(i * 3 + j, j * 3 + i, u.scale(&c.qdiff()));
            }
        }
        assert_eq!(r, flip);
    }

    #[test]
    fn r_bar_at_zero_and_unitarity() {
        let c = QCtx::<RatFunc>::symbolic();
        let rb = r_bar(&c, 2).unwrap();
        assert_eq!(rb.at_zero().entry(0, 0), RatFunc::one());
        assert!(unitarity_check(&c, 2).unwrap().is_zero());
    }

    #[test]
    fn ybe_n2_symbolic() {
        let c = QCtx::<RatFunc>::symbolic();
        assert!(ybe_residual(&c, 2).unwrap().is_zero());
    }

    #[test]
    fn broken_r_violates_ybe() {
        let c = QCtx::<RatFunc>::symbolic();
        assert!(!ybe_residual_of(&r_two_param_with(&c, 2, true).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn r_commutes_with_dd() {
        let c = QCtx::<RatFunc>::symbolic();
        let r = r_two_param(&c, 3).unwrap();
        let d = d_matrix(&c, 3);
        let dd = d.embed_one_leg(1, 2).unwrap().mul(&d.embed_one_leg(2, 2).unwrap()).map(|e| MPoly::constant(e.clone()));
        assert_eq!(r.mul(&dd), dd.mul(&r));
    }

    #[test]
    fn d_matrix_values() {
        let c = QCtx::<RatFunc>::symbolic();
        assert_eq!(d_matrix(&c, 1), TensorOp::identity(1, 1));
        let d = d_matrix(&c, 2);
        assert_eq!(d.entry(0, 0), RatFunc::q());
        assert_eq!(d.entry(1, 1), c.q_pow(-1));
        let prod = (0..4).fold(RatFunc::one(), |acc, i| acc.mul(&d_matrix(&c, 4).entry(i, i)));
        assert_eq!(prod, RatFunc::one());
    }

    #[test]
    fn crossing_n2_numeric() {
        let c = QCtx::numeric(rat(3, 2)).unwrap();
        let r = r_full(&c, 2, 5).unwrap();
        let (a, b) = crossing_check(&c, 2, &r, &d_matrix(&c, 2)).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn factored_crossing_matches_direct() {
        // a wrong D makes both residuals nonzero; the two routes must agree on them
        let c = QCtx::numeric(rat(3, 2)).unwrap();
        let f = crate::coeff::f_series(&c, 2, 5).unwrap();
        // doubling only the first entry; a scalar multiple of D would cancel
        let mut d = d_matrix(&c, 2);
        d.add_entry(0, 0, d.entry(0, 0));
        let direct = crossing_check(&c, 2, &r_full_with(&c, 2, &f).unwrap(), &d).unwrap();
        let factored = crossing_check_factored(&c, 2, &f, &d).unwrap();
        assert!(!direct.0.is_zero());
        assert_eq!(direct, factored);
    }

    #[test]
    fn series_inverse_roundtrip() {
        let c = QCtx::numeric(rat(5, 3)).unwrap();
        let r = r_full(&c, 2, 4).unwrap();
        let prod = r.mul(&r.invert_series(4).unwrap());
        let one: TensorOp<Fps<Rat>> = TensorOp::scalar(2, 2, Fps::from_coeffs([(0, rat(1, 1))], 4));
        assert!(prod.sub(&one).is_zero());
    }
}
