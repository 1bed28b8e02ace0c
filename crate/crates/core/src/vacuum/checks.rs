//! Module-level checks of centrality, invariance and commutativity.

use crate::algebra::{ASeries, AlgElem, Gen, Sign};
use crate::coeff::{Field, Ring};
use crate::error::Result;

use super::{first_witness, Operator, VacVector, Vacuum};

/// Nonzero coefficients of a series on `lo..=hi`, as `(exponent, element)`.
pub fn window<F: Field>(s: &ASeries<F>, lo: i64, hi: i64) -> Result<Vec<(i64, AlgElem<F>)>> {
    (lo..=hi).map(|e| Ok((e, s.coeff(e)?))).collect()
}

/// `[c, g] v = 0` for every coefficient `c`, generator `g` and vector `v`.
pub fn centrality_witness<F: Field>(
    vac: &Vacuum<F>,
    coeffs: &[(i64, AlgElem<F>)],
    gens: &[Gen],
    vectors: &[VacVector<F>],
) -> Result<Option<String>> {
    let ops: Vec<Operator<F>> = coeffs.iter().map(|(_, c)| Operator::new(vac, c.clone())).collect();
    let jobs: Vec<(usize, Gen)> = (0..coeffs.len()).flat_map(|a| gens.iter().map(move |g| (a, *g))).collect();
    first_witness(&jobs, |&(a, g)| {
        let e = coeffs[a].0;
        let g_elem = AlgElem::gen(g);
        for v in vectors {
            let r = ops[a].commutator(&g_elem, v)?;
            if !r.is_zero() {
                return Ok(Some(format!("[z^{e} coefficient, {g}] on {} gives {}", v.elem(), r.elem())));
            }
        }
        Ok(None)
    })
}

/// `l-_ij[r] v = δ_ij δ_r0 v` for each coefficient `v` of `x(z) 𝟙` and `r <= r_max`.
pub fn invariance_witness<F: Field>(
    vac: &Vacuum<F>,
    coeffs: &[(i64, AlgElem<F>)],
    r_max: u32,
) -> Result<Option<String>> {
    let n = vac.engine().n();
    let vectors: Vec<(i64, VacVector<F>)> = coeffs.iter().map(|(e, c)| (*e, vac.project(c))).collect();
    let gens: Vec<Gen> = super::generators(n, r_max).into_iter().filter(|g| g.sign == Sign::Minus).collect();
    first_witness(&gens, |g| {
        for (e, v) in &vectors {
            let got = vac.act_gen(*g, v)?;
            let want = if g.i == g.j && g.r == 0 { v.clone() } else { VacVector::zero() };
            if got != want {
                return Ok(Some(format!("{g} on the z^{e} coefficient gives {}, expected {}", got.elem(), want.elem())));
            }
        }
        Ok(None)
    })
}

/// `[a, b] v = 0` for coefficients `a`, `b` and vectors `v`.
pub fn commutativity_witness<F: Field>(
    vac: &Vacuum<F>,
    xs: &[(i64, AlgElem<F>)],
    ys: &[(i64, AlgElem<F>)],
    vectors: &[VacVector<F>],
) -> Result<Option<String>> {
    let jobs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|a| (0..ys.len()).map(move |b| (a, b))).collect();
    first_witness(&jobs, |&(a, b)| {
        let (e, x) = &xs[a];
        let (f, y) = &ys[b];
        for v in vectors {
            let r = vac.commutator(x, y, v)?;
            if !r.is_zero() {
                return Ok(Some(format!("z^{e} and w^{f} coefficients on {} give {}", v.elem(), r.elem())));
            }
        }
        Ok(None)
    })
}

/// `x y = y x` in the algebra itself, for `l+`-only coefficients.
pub fn exact_commutativity_witness<F: Field>(
    vac: &Vacuum<F>,
    xs: &[(i64, AlgElem<F>)],
    ys: &[(i64, AlgElem<F>)],
) -> Result<Option<String>> {
    let eng = vac.engine();
    let jobs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|a| (0..ys.len()).map(move |b| (a, b))).collect();
    first_witness(&jobs, |&(a, b)| {
        let (e, x) = &xs[a];
        let (f, y) = &ys[b];
        let r = eng.mul(x, y, None)?.sub(&eng.mul(y, x, None)?);
        Ok((!r.is_zero()).then(|| format!("z^{e} and w^{f} coefficients: commutator {r}")))
    })
}

/// `x(z) 𝟙 = y(z) 𝟙` coefficientwise.
pub fn same_on_vacuum_witness<F: Field>(
    vac: &Vacuum<F>,
    xs: &[(i64, AlgElem<F>)],
    ys: &[(i64, AlgElem<F>)],
) -> Option<String> {
    xs.iter().zip(ys).find_map(|((e, x), (_, y))| {
        let d = vac.project(x).sub(&vac.project(y));
        (!d.is_zero()).then(|| format!("z^{e}: difference {}", d.elem()))
    })
}

/// `x(z) 𝟙 = 𝟙`, i.e. only the constant coefficient survives and it acts as one.
pub fn acts_as_one_witness<F: Field>(vac: &Vacuum<F>, xs: &[(i64, AlgElem<F>)]) -> Option<String> {
    xs.iter().find_map(|(e, x)| {
        let want = if *e == 0 { VacVector::vacuum() } else { VacVector::zero() };
        let got = vac.project(x);
        (got != want).then(|| format!("z^{e}: {} on the vacuum", got.elem()))
    })
}
