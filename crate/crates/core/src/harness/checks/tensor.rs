//! R-matrix, f-series, fusion and antisymmetrizer checks, and confluence of
//! the rewrite engine.

use std::cmp::Ordering;

use super::{engine, fn_check, ks, mutated, op_witness, Check, Outcome};
use crate::algebra::OrderingKind;
use crate::coeff::{f_functional_check, f_series, f_series_product, FNumerators, Field, QCtx, Ring};
use crate::error::Result;
use crate::harness::spec::CheckSpec;
use crate::tensor::{
    antisymmetrizer, crossing_check_factored, d_matrix, fusion_residual, r_two_param_with, unitarity_check,
    ybe_residual_of, PermKind,
};
use crate::vacuum::generators;

pub(super) fn checks() -> Vec<Box<dyn Check>> {
    vec![
        fn_check!("ybe", "Yang-Baxter equation for R(u,v)", &["broken-r"], None, (1, 6), |_| {}, ybe),
        fn_check!(
            "f-series",
            "recurrence, product formula and functional equation of f(x)",
            &["perturb-f"],
            None,
            (2, 8),
            |s| {
                s.series_order.get_or_insert(21);
            },
            f_check
        ),
        fn_check!(
            "crossing",
            "crossing symmetry of R(x) and unitarity of the normalized R-matrix",
            &[],
            None,
            (1, 4),
            |s| {
                s.series_order.get_or_insert(9);
            },
            crossing
        ),
        fn_check!(
            "fusion",
            "product of R-matrices at q^-2 spaced points is a multiple of A^(k)",
            &["plain-perm"],
            None,
            (1, 4),
            |s| {
                s.k.get_or_insert(2);
            },
            fusion
        ),
        fn_check!(
            "antisym",
            "A^(k) is idempotent with trace C(n,k), and zero for k > n",
            &[],
            None,
            (1, 4),
            |_| {},
            antisym
        ),
        fn_check!(
            "pbw-confluence",
            "both reduction paths of descending triples of generators agree",
            &[],
            None,
            (1, 3),
            |s| {
                s.depth.get_or_insert(1);
            },
            confluence
        ),
    ]
}

fn ybe<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let r = r_two_param_with(ctx, spec.n, mutated(spec, "broken-r"))?;
    Ok(Outcome::witness(op_witness("R12 R13 R23 - R23 R13 R12", &ybe_residual_of(&r)?)))
}

fn f_check<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let (n, order) = (spec.n, spec.series_order.unwrap_or(21));
    // exact in Q(q), via integer numerators over a fixed denominator
    let mut rec = FNumerators::recurrence(n, order)?;
    if mutated(spec, "perturb-f") {
        rec.perturb_first();
    }
    if rec != FNumerators::product(n, order)? {
        return Ok(Outcome::witness(Some("recurrence and product formula differ".into())));
    }
    if !rec.functional_holds() {
        return Ok(Outcome::witness(Some("functional equation fails".into())));
    }
    // the generic-field construction at this q, up to a cheaper order
    let low = order.min(8);
    if f_series(ctx, n, low)? != f_series_product(ctx, n, low)? || !f_functional_check(ctx, n, low)? {
        return Ok(Outcome::witness(Some(format!("field-level series disagree below x^{low}"))));
    }
    Ok(Outcome::default())
}

fn crossing<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let n = spec.n;
    let f = f_series(ctx, n, spec.series_order.unwrap_or(9))?;
    let (a, b) = crossing_check_factored(ctx, n, &f, &d_matrix(ctx, n))?;
    let w = op_witness("first crossing relation", &a)
        .or_else(|| op_witness("second crossing relation", &b))
        .or_else(|| unitarity_check(ctx, n).ok().and_then(|u| op_witness("unitarity", &u)));
    Ok(Outcome::witness(w))
}

fn fusion<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let kind = if mutated(spec, "plain-perm") { PermKind::Plain } else { PermKind::Q };
    let k = spec.k_or(2);
    Ok(Outcome::witness(op_witness(&format!("fusion k = {k}"), &fusion_residual(ctx, spec.n, k, kind)?)))
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn antisym<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let n = spec.n;
    for k in ks(spec, 5) {
        let a = antisymmetrizer(ctx, n, k);
        if let Some(w) = op_witness(&format!("k = {k}: A^2 - A"), &a.mul(&a).sub(&a)) {
            return Ok(Outcome::witness(Some(w)));
        }
        let tr = a.trace();
        if tr != F::from_i64(binomial(n, k)) {
            return Ok(Outcome::witness(Some(format!("k = {k}: trace {tr}, expected {}", binomial(n, k)))));
        }
        if k > n && !a.is_zero() {
            return Ok(Outcome::witness(Some(format!("k = {k} > n: A^(k) is nonzero"))));
        }
    }
    Ok(Outcome::default())
}

fn confluence<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let gens = generators(spec.n, spec.depth.unwrap_or(1));
    let mut out = Outcome::default();
    for ord in [OrderingKind::Standard, OrderingKind::Opposite] {
        let eng = engine(ctx, spec.n, ord, 6)?;
        for x in &gens {
            for y in gens.iter().filter(|y| ord.cmp(x, y) == Ordering::Greater) {
                for z in gens.iter().filter(|z| ord.cmp(y, z) == Ordering::Greater) {
                    let d = eng.confluence_defect(*x, *y, *z)?;
                    if !d.is_zero() {
                        out.witness = Some(format!("{} ordering, {x} {y} {z}: defect {d}", ord.name()));
                        return Ok(out);
                    }
                }
            }
        }
        out.drops += eng.drops();
    }
    Ok(out)
}
