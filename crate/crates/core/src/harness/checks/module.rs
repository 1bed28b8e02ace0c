//! Checks on the vacuum module: centrality, invariance, commutativity.

use super::{engine, fn_check, ks, mutated, Check, Outcome};
use crate::algebra::{Engine, LCalc, OrderingKind, Sign, TruncPolicy};
use crate::coeff::{f_series, Field, QCtx};
use crate::error::Result;
use crate::harness::spec::CheckSpec;
use crate::sugawara::{ell_bar_trace, plus_ctx, EllMethod, EllOptions, SugawaraCtx, Trace34};
use crate::tensor::PermKind;
use crate::vacuum::checks::{
    acts_as_one_witness, centrality_witness, commutativity_witness, exact_commutativity_witness,
    invariance_witness, same_on_vacuum_witness, window,
};
use crate::vacuum::{generators, spanning_words, Vacuum};

const MODULE_SCOPE: &str = "module-level evidence: commutators vanish on the listed vacuum-module vectors, \
which is necessary for centrality in the completed algebra but does not prove it";

pub(super) fn checks() -> Vec<Box<dyn Check>> {
    vec![
        fn_check!(
            "centrality",
            "commutators of l_k(z) coefficients with generator modes annihilate module vectors",
            &["drop-d"],
            Some(MODULE_SCOPE),
            (1, 3),
            |s| {
                s.k.get_or_insert(1);
                let d = *s.depth.get_or_insert(2);
                s.p_minus.get_or_insert(2 * d + 1);
                s.window.get_or_insert((-1, 1));
            },
            centrality
        ),
        fn_check!(
            "qdet-central",
            "commutators of qdet L+(z) and qdet L-(z) coefficients with generator modes annihilate module vectors",
            &[],
            Some(MODULE_SCOPE),
            (1, 3),
            |s| {
                let d = *s.depth.get_or_insert(2);
                s.p_minus.get_or_insert((2 * d + 1).max(s.n as u32 + 1));
                s.window.get_or_insert((0, 2));
            },
            qdet_central
        ),
        fn_check!(
            "invariance",
            "l̄_k(z)1 is annihilated by L-(u) - 1, and l_k(z)1 = l̄_k(z)1, qdet L-(z)1 = 1",
            &["perturb-f"],
            None,
            (1, 3),
            |s| {
                s.depth.get_or_insert(2);
                s.window.get_or_insert((0, 2));
            },
            invariance
        ),
        fn_check!(
            "commutativity",
            "coefficients of l̄_k(z) and l̄_m(w) commute, exactly and on module vectors",
            &["plain-perm"],
            Some(MODULE_SCOPE),
            (1, 3),
            |s| {
                s.depth.get_or_insert(if s.n <= 2 { 3 } else { 2 });
                s.window.get_or_insert((0, 2));
            },
            commutativity
        ),
    ]
}

/// Generator modes up to `depth` and the spanning vectors of depth at most `depth`.
fn probes<F: Field>(eng: &Engine<F>, spec: &CheckSpec) -> (Vec<crate::algebra::Gen>, Vec<crate::vacuum::VacVector<F>>) {
    let d = spec.depth.unwrap_or(2);
    (generators(eng.n(), d), spanning_words(eng, d, d as usize + 1))
}

fn centrality<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let (lo, hi) = spec.window_or((-1, 1));
    let t = TruncPolicy::for_window(spec.p_minus.unwrap_or(5), hi)?;
    let eng = engine(ctx, spec.n, OrderingKind::Standard, t.series_order)?;
    let opts = EllOptions { drop_d: mutated(spec, "drop-d"), perm: PermKind::Q };
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t)).with_options(opts);
    let k = spec.k_or(1);
    let coeffs = window(&Trace34.ell(&cx, k)?, lo, hi)?;
    let vac = Vacuum::new(&eng);
    let (gens, vectors) = probes(&eng, spec);
    let w = centrality_witness(&vac, &coeffs, &gens, &vectors)?;
    Ok(Outcome { witness: w.map(|w| format!("k = {k}: {w}")), drops: eng.drops(), ..Default::default() })
}

fn qdet_central<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let (lo, hi) = spec.window_or((0, 2));
    let t = TruncPolicy::for_window(spec.p_minus.unwrap_or(3), hi)?;
    let eng = engine(ctx, spec.n, OrderingKind::Standard, t.series_order)?;
    let calc = LCalc::new(&eng, &t);
    let vac = Vacuum::new(&eng);
    let (gens, vectors) = probes(&eng, spec);
    let plus = window(&calc.qdet(Sign::Plus)?, lo, hi)?;
    let minus = window(&calc.qdet(Sign::Minus)?, -hi, -lo)?;
    let w = match centrality_witness(&vac, &plus, &gens, &vectors)? {
        Some(w) => Some(format!("qdet L+: {w}")),
        None => centrality_witness(&vac, &minus, &gens, &vectors)?.map(|w| format!("qdet L-: {w}")),
    };
    Ok(Outcome { witness: w, drops: eng.drops(), ..Default::default() })
}

/// Engine for the plus-only checks, with `f` perturbed under `perturb-f`.
fn plus_engine<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>, order: usize) -> Result<Engine<F>> {
    if mutated(spec, "perturb-f") {
        let mut f = f_series(ctx, spec.n.max(2), order)?;
        f.add_term(1, F::one());
        Engine::with_f(ctx.clone(), spec.n, OrderingKind::Standard, &f)
    } else {
        engine(ctx, spec.n, OrderingKind::Standard, order)
    }
}

fn invariance<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    let (lo, hi) = spec.window_or((0, 2));
    let d_plus = hi.max(1) as u32 + 1;
    let eng = plus_engine(spec, ctx, d_plus as usize + 3)?;
    let vac = Vacuum::new(&eng);
    let cx = plus_ctx(&eng, d_plus);
    let r_max = spec.depth.unwrap_or(2);
    let mut out = Outcome::default();
    for k in ks(spec, spec.n) {
        let lb = window(&ell_bar_trace(&cx, k)?, lo, hi)?;
        if let Some(w) = invariance_witness(&vac, &lb, r_max)? {
            out.witness = Some(format!("l̄_{k}: {w}"));
            break;
        }
        let t = TruncPolicy::for_window(1, hi)?;
        let full = SugawaraCtx::new(LCalc::new(&eng, &t));
        let l = window(&Trace34.ell(&full, k)?, lo, hi)?;
        if let Some(w) = same_on_vacuum_witness(&vac, &l, &lb) {
            out.witness = Some(format!("l_{k} against l̄_{k} on the vacuum: {w}"));
            break;
        }
    }
    if out.witness.is_none() {
        let t = TruncPolicy::new(3, 1, 6)?;
        let calc = LCalc::new(&eng, &t);
        out.witness = acts_as_one_witness(&vac, &window(&calc.qdet(Sign::Minus)?, -2, 0)?)
            .map(|w| format!("qdet L-: {w}"));
    }
    out.drops = eng.drops();
    Ok(out)
}

fn commutativity<F: Field>(spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Outcome> {
    if spec.k.is_some_and(|k| k > spec.n) {
        return crate::error::invalid(format!("k must be at most n = {}", spec.n));
    }
    let (lo, hi) = spec.window_or((0, 2));
    let d_plus = hi.max(1) as u32;
    let eng = engine(ctx, spec.n, OrderingKind::Standard, d_plus as usize + 2)?;
    let vac = Vacuum::new(&eng);
    let good = plus_ctx(&eng, d_plus);
    let plain = SugawaraCtx::new(LCalc::plus_only(&eng, d_plus)).with_options(EllOptions { drop_d: false, perm: PermKind::Plain });
    let broken = mutated(spec, "plain-perm");
    let ell_bar = |k: usize| {
        let cx = if broken && k >= 2 { &plain } else { &good };
        window(&ell_bar_trace(cx, k)?, lo, hi)
    };
    let series: Vec<_> = (1..=spec.n).map(ell_bar).collect::<Result<_>>()?;
    let d = spec.depth.unwrap_or(3);
    let vectors = spanning_words(&eng, d, d as usize);
    let pairs: Vec<(usize, usize)> = match spec.k {
        Some(k) => (1..=spec.n).map(|m| (k.min(m), k.max(m))).collect(),
        None => (1..=spec.n).flat_map(|k| (k..=spec.n).map(move |m| (k, m))).collect(),
    };
    for (k, m) in pairs {
        let (a, b) = (&series[k - 1], &series[m - 1]);
        if let Some(w) = exact_commutativity_witness(&vac, a, b)? {
            return Ok(Outcome::witness(Some(format!("l̄_{k}, l̄_{m} in the algebra: {w}"))));
        }
        if let Some(w) = commutativity_witness(&vac, a, b, &vectors)? {
            return Ok(Outcome::witness(Some(format!("l̄_{k}, l̄_{m} on the module: {w}"))));
        }
    }
    Ok(Outcome { drops: eng.drops(), ..Default::default() })
}
