//! Series computed on request, serialized as canonical text and JSON.

use serde::{Deserialize, Serialize};

use super::spec::{CheckSpec, Mode};
use crate::algebra::{LCalc, OrderingKind, Sign, TruncPolicy};
use crate::coeff::{Field, QCtx};
use crate::error::{invalid, Result};
use crate::hc::hc_project_series;
use crate::sugawara::{ell_bar_trace, plus_ctx, EllMethod, SugawaraCtx, Trace34};
use crate::vacuum::Vacuum;

pub const TARGETS: [&str; 5] = ["ell", "ell-bar", "qdet", "hc-image", "miura"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Computed {
    pub target: String,
    /// `symbolic` or the value of `q` used.
    pub q: String,
    pub params: CheckSpec,
    pub entries: Vec<Entry>,
}

impl Computed {
    pub fn to_text(&self) -> String {
        let mut s = format!("# {} n={} q={}\n", self.target, self.params.n, self.q);
        for e in &self.entries {
            s.push_str(&format!("{}: {}\n", e.key, e.value));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series serializes")
    }
}

fn defaults(target: &str, spec: &mut CheckSpec) -> Result<()> {
    match target {
        "ell" => {
            spec.k.get_or_insert(1);
            spec.p_minus.get_or_insert(2);
            spec.window.get_or_insert((-1, 1));
        }
        "ell-bar" | "hc-image" => {
            spec.k.get_or_insert(1);
            spec.p_minus.get_or_insert(2);
            spec.window.get_or_insert((0, 2));
        }
        "qdet" => {
            spec.window.get_or_insert((0, 2));
        }
        "miura" => {
            spec.window.get_or_insert((0, 2));
        }
        _ => return invalid(format!("unknown target {target}; known: {TARGETS:?}")),
    }
    if spec.k.is_some_and(|k| k == 0 || k > spec.n) || spec.n == 0 {
        return invalid(format!("need 1 <= k <= n, got n = {} k = {:?}", spec.n, spec.k));
    }
    Ok(())
}

fn entries<F: Field>(target: &str, spec: &CheckSpec, ctx: &QCtx<F>) -> Result<Vec<Entry>> {
    let n = spec.n;
    let (lo, hi) = spec.window.unwrap_or((0, 2));
    let d_plus = hi.max(1) as u32;
    let mut out = Vec::new();
    let mut push = |key: String, value: String| out.push(Entry { key, value });
    match target {
        "ell" | "hc-image" => {
            let t = TruncPolicy::for_window(spec.p_minus.unwrap_or(2), hi)?;
            let eng = crate::algebra::Engine::new(ctx.clone(), n, OrderingKind::Standard, t.series_order)?;
            let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
            let l = Trace34.ell(&cx, spec.k.unwrap_or(1))?;
            if target == "ell" {
                for e in lo..=hi {
                    push(format!("z^{e}"), l.coeff(e)?.to_string());
                }
            } else {
                let img = hc_project_series(&l, OrderingKind::Standard, t.cap())?;
                for e in lo..=hi {
                    push(format!("z^{e}"), img.coeff(e)?.to_string());
                }
            }
        }
        "ell-bar" | "qdet" => {
            let eng = crate::algebra::Engine::new(ctx.clone(), n, OrderingKind::Standard, d_plus as usize + 2)?;
            let cx = plus_ctx(&eng, d_plus);
            let s = if target == "qdet" { cx.calc.qdet(Sign::Plus)? } else { ell_bar_trace(&cx, spec.k.unwrap_or(1))? };
            let vac = Vacuum::new(&eng);
            for e in lo..=hi {
                let c = s.coeff(e)?;
                // l̄_k(z) is reported through its action on the vacuum
                let v = if target == "qdet" { c.to_string() } else { vac.project(&c).elem().to_string() };
                push(format!("z^{e}"), v);
            }
        }
        "miura" => {
            let eng = crate::algebra::Engine::new(ctx.clone(), n, OrderingKind::Standard, d_plus as usize)?;
            let cx = plus_ctx(&eng, d_plus);
            for k in 1..=n {
                let s = hc_project_series(&ell_bar_trace(&cx, k)?, OrderingKind::Standard, 0)?
                    .map(|c| c.plus_zero_modes_one());
                for e in lo..=hi {
                    push(format!("δ^{k} z^{e}"), s.coeff(e)?.to_string());
                }
            }
        }
        _ => return invalid(format!("unknown target {target}")),
    }
    Ok(out)
}

/// Computes `target` for the parameters in `spec`; numeric mode uses the first sample point.
pub fn compute(target: &str, spec: &CheckSpec) -> Result<Computed> {
    let mut spec = spec.clone();
    spec.check.clear();
    defaults(target, &mut spec)?;
    let (q, entries) = match spec.mode {
        Mode::Symbolic => ("symbolic".to_string(), entries(target, &spec, &QCtx::symbolic())?),
        Mode::Numeric => {
            let q = spec.sample_points()?.remove(0);
            spec.q = vec![q.to_string()];
            (q.to_string(), entries(target, &spec, &QCtx::numeric(q)?)?)
        }
    };
    Ok(Computed { target: target.into(), q, params: spec, entries })
}
