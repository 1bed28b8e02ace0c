//! Constructions of the Sugawara series and the determinant identities.

use super::{engine, fn_check, ks, Check, Outcome};
use crate::algebra::{constant, ASeries, LCalc, OrderingKind, Sign, TruncPolicy};
use crate::coeff::{Field, QCtx, Ring};
use crate::error::Result;
use crate::harness::spec::CheckSpec;
use crate::sugawara::{
    detq_identity_witness, ell_methods, inverse_by_minors, manin_witness, plus_ctx, qdet_ratio, EllMethod,
    SugawaraCtx, Trace34,
};
use crate::tensor::PermKind;

pub(super) fn checks() -> Vec<Box<dyn Check>> {
    vec![
        fn_check!(
            "rll-consistency",
            "four constructions of l_k(z) agree, and the inverse of L-(z) is two-sided",
            &[],
            None,
            (1, 3),
            |s| {
                s.p_minus.get_or_insert(2);
                s.window.get_or_insert((-1, 1));
            },
            rll_consistency
        ),
        fn_check!(
            "factorization",
            "l_n(z) = qdet L+(z) qdet L-(zq^-n)^-1",
            &[],
            None,
            (1, 3),
            |s| {
                s.p_minus.get_or_insert(2);
                s.window.get_or_insert((-1, 1));
            },
            factorization
        ),
        fn_check!(
            "inverse-minors",
            "entries of L-(z)^-1 from quantum minors against Neumann inversion",
            &[],
            None,
            (2, 3),
            |s| {
                s.p_minus.get_or_insert(3);
                s.window.get_or_insert((-2, 0));
            },
            inverse_minors
        ),
        fn_check!(
            "manin",
            "L+(z)δ and L+(z)Dδ are q-Manin matrices",
            &[],
            None,
            (2, 3),
            |s| {
                s.d_plus.get_or_insert(2);
            },
            manin
        ),
        fn_check!(
            "detq-identity",
            "det_q(Π + L+(z)Dδ) = 1 + Σ l̄_k(z)δ^k modulo the left ideal of Π - 1",
            &[],
            None,
            (2, 3),
            |s| {
                s.d_plus.get_or_insert(2);
            },
            detq_identity
        ),
    ]
}

fn trunc(spec: &CheckSpec) -> Result<TruncPolicy> {
    let (_, hi) = spec.window_or((-1, 1));
    let mut t = TruncPolicy::for_window(spec.p_minus.unwrap_or(2), hi)?;
    if let Some(d) = spec.d_plus.filter(|&d| d > t.d_plus) {
        t = TruncPolicy::new(t.p_minus, d, t.p_minus as usize + d as usize + 1)?;
    }
    if let Some(o) = spec.series_order.filter(|&o| o > t.series_order) {
        t.series_order = o;
    }
    Ok(t)
}

fn compare<F: Field>(label: &str, a: &ASeries<F>, b: &ASeries<F>, window: (i64, i64)) -> Result<Option<String>> {
    for e in window.0..=window.1 {
        let (x, y) = (a.coeff(e)?, b.coeff(e)?);
        if x != y {
            return Ok(Some(format!("{label}, z^{e}: {} differs from {}", x, y)));
        }
    }
    Ok(None)
}

fn rll_consistency<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let t = trunc(spec)?;
    let window = spec.window_or((-1, 1));
    let eng = engine(ctx, spec.n, OrderingKind::Standard, t.series_order)?;
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
    let mut out = Outcome::default();
    for k in ks(spec, spec.n) {
        let methods = ell_methods::<F>();
        let base = methods[0].ell(&cx, k)?;
        for m in &methods[1..] {
            let label = format!("k = {k}, {} against {}", m.name(), methods[0].name());
            if let Some(w) = compare(&label, &m.ell(&cx, k)?, &base, window)? {
                out.witness = Some(w);
                out.drops = eng.drops();
                return Ok(out);
            }
        }
    }
    let l = cx.calc.l_matrix(Sign::Minus)?;
    let inv = cx.l_minus_inv()?;
    let n = spec.n;
    for (side, prod) in [("L- L-^-1", cx.calc.mat_mul(&l, &inv)?), ("L-^-1 L-", cx.calc.mat_mul(&inv, &l)?)] {
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { constant(F::one()) } else { ASeries::zero() };
                let label = format!("{side} entry ({},{})", i + 1, j + 1);
                if let Some(w) = compare(&label, &prod[i][j], &want, (-(t.cap() as i64), 0))? {
                    out.witness = Some(w);
                    out.drops = eng.drops();
                    return Ok(out);
                }
            }
        }
    }
    out.drops = eng.drops();
    Ok(out)
}

fn factorization<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let t = trunc(spec)?;
    let eng = engine(ctx, spec.n, OrderingKind::Standard, t.series_order)?;
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
    let w = compare("l_n against the qdet ratio", &Trace34.ell(&cx, spec.n)?, &qdet_ratio(&cx)?, spec.window_or((-1, 1)))?;
    Ok(Outcome { witness: w, drops: eng.drops(), ..Default::default() })
}

fn inverse_minors<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let t = TruncPolicy::new(spec.p_minus.unwrap_or(3), 1, spec.series_order.unwrap_or(6))?;
    let eng = engine(ctx, spec.n, OrderingKind::Standard, t.series_order)?;
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
    let a = inverse_by_minors(&cx)?;
    let b = cx.l_minus_inv()?;
    let mut out = Outcome::default();
    'outer: for i in 0..spec.n {
        for j in 0..spec.n {
            let label = format!("entry ({},{})", i + 1, j + 1);
            if let Some(w) = compare(&label, &a[i][j], &b[i][j], spec.window_or((-2, 0)))? {
                out.witness = Some(w);
                break 'outer;
            }
        }
    }
    out.drops = eng.drops();
    Ok(out)
}

fn manin<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let d = spec.d_plus.unwrap_or(2);
    let eng = engine(ctx, spec.n, OrderingKind::Standard, d as usize)?;
    let cx = plus_ctx(&eng, d);
    for (with_d, label) in [(false, "L+(z)δ"), (true, "L+(z)Dδ")] {
        if let Some(w) = manin_witness(&cx, with_d, true, PermKind::Q)? {
            return Ok(Outcome::witness(Some(format!("{label}: {w}"))));
        }
    }
    Ok(Outcome::default())
}

fn detq_identity<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let d = spec.d_plus.unwrap_or(2);
    let eng = engine(ctx, spec.n, OrderingKind::Standard, d as usize)?;
    Ok(Outcome::witness(detq_identity_witness(&plus_ctx(&eng, d))?))
}
