//! Harish-Chandra images, the Miura form and the Wakimoto specialization.

use super::{engine, fn_check, ks, Check, Outcome};
use crate::algebra::{OrderingKind, TruncPolicy};
use crate::coeff::{Field, QCtx};
use crate::error::{invalid, Result};
use crate::harness::spec::CheckSpec;
use crate::hc::{hc_formula, hc_image_witness, miura_witness, wakimoto_witness, PiSeries, PiTrunc};

pub(super) fn checks() -> Vec<Box<dyn Check>> {
    vec![
        fn_check!(
            "hc-image",
            "projection of normal-ordered l_k(z) equals the sum over λ_i products",
            &[],
            None,
            (1, 3),
            |s| {
                s.k.get_or_insert(1);
                s.p_minus.get_or_insert(2);
                s.window.get_or_insert((0, 2));
            },
            hc_image
        ),
        fn_check!(
            "hc-image-primed",
            "projection for the opposite ordering equals the sum over λ'_i products",
            &[],
            None,
            (1, 3),
            |s| {
                s.k.get_or_insert(1);
                s.p_minus.get_or_insert(2);
                s.window.get_or_insert((0, 2));
            },
            hc_image_primed
        ),
        fn_check!(
            "miura",
            "projected det_q(Π + L+(z)Dδ) factors as (1 + λ̄_1(z)δ)...(1 + λ̄_n(z)δ)",
            &[],
            None,
            (1, 4),
            |s| {
                s.d_plus.get_or_insert(3);
                s.window.get_or_insert((0, 3));
            },
            miura
        ),
        fn_check!(
            "wakimoto",
            "specialized images against products of q^(n-2i+1) κ+_i(z) κ-(zq^-n)^-1",
            &[],
            None,
            (1, 4),
            |s| {
                s.d_plus.get_or_insert(4);
                s.p_minus.get_or_insert(3);
            },
            wakimoto
        ),
    ]
}

pub(crate) fn series_text<F: Field>(s: &PiSeries<F>, window: (i64, i64)) -> Result<String> {
    let mut lines = Vec::new();
    for e in window.0..=window.1 {
        lines.push(format!("z^{e}: {}", s.coeff(e)?));
    }
    Ok(lines.join("\n"))
}

fn image<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>, ord: OrderingKind) -> Result<Outcome> {
    let k = spec.k_or(1);
    if k > spec.n {
        return invalid(format!("k must be at most n = {}", spec.n));
    }
    let window = spec.window_or((0, 2));
    let t = TruncPolicy::for_window(spec.p_minus.unwrap_or(2), window.1)?;
    let eng = engine(ctx, spec.n, ord, t.series_order)?;
    let primed = ord == OrderingKind::Opposite;
    let w = hc_image_witness(&eng, k, &t, window)?;
    let art = series_text(&hc_formula(ctx, spec.n, k, primed, (&t).into())?, window)?;
    Ok(Outcome { witness: w, drops: eng.drops(), artifact: Some(art), ..Default::default() })
}

fn hc_image<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    image(spec, ctx, OrderingKind::Standard)
}

fn hc_image_primed<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    image(spec, ctx, OrderingKind::Opposite)
}

fn miura<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let d = spec.d_plus.unwrap_or(3);
    let eng = engine(ctx, spec.n, OrderingKind::Standard, d as usize)?;
    Ok(Outcome::witness(miura_witness(&eng, d, spec.window_or((0, d as i64)))?))
}

fn wakimoto<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let t = PiTrunc { d_plus: spec.d_plus.unwrap_or(4), cap: spec.p_minus.unwrap_or(3) - 1 };
    for k in ks(spec, spec.n) {
        if let Some(w) = wakimoto_witness(ctx, spec.n, k, t)? {
            return Ok(Outcome::witness(Some(format!("k = {k}: {w}"))));
        }
    }
    Ok(Outcome::default())
}
