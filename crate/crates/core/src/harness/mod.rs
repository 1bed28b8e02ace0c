//! Check orchestration: resolve a spec, evaluate at each sample point, rerun
//! at a finer truncation, and report.

pub mod checks;
pub mod compute;
pub mod spec;
pub mod suite;

use std::time::Instant;

use crate::coeff::{QCtx, Rat};
use crate::error::{Error, Result};

pub use checks::{lookup, registry, Check, FnCheck, Outcome};
pub use spec::{CheckSpec, Mode, Report, Status, Timing, DEFAULT_Q};

fn eval(check: &dyn Check, spec: &CheckSpec, q: Option<&Rat>) -> Result<Outcome> {
    match q {
        None => check.run_symbolic(spec, &QCtx::symbolic()),
        Some(q) => check.run_numeric(spec, &QCtx::numeric(q.clone())?),
    }
}

/// Resolves defaults without running anything.
pub fn resolve(spec: &CheckSpec) -> Result<CheckSpec> {
    let mut spec = spec.clone();
    lookup(&spec.check)?.resolve(&mut spec)?;
    if spec.mode == Mode::Numeric && spec.q.is_empty() {
        spec.q = spec.sample_points()?.iter().map(|q| q.to_string()).collect();
    }
    Ok(spec)
}

/// Runs one check. Exceeding a resource budget gives a report with that
/// status; invalid specs are errors.
pub fn run(spec: &CheckSpec) -> Result<Report> {
    let check = lookup(&spec.check)?;
    let spec = resolve(spec)?;
    let points: Vec<Option<Rat>> = match spec.mode {
        Mode::Symbolic => vec![None],
        Mode::Numeric => spec.sample_points()?.into_iter().map(Some).collect(),
    };
    let label = |q: &Option<Rat>| q.as_ref().map_or("symbolic".to_string(), |q| q.to_string());
    let mut report = Report {
        check: spec.check.clone(),
        params: spec.clone(),
        status: Status::Pass,
        warning: false,
        witness: None,
        timings: Some(Vec::new()),
        drops: 0,
        stability: None,
        scope: check.scope().map(str::to_string),
        artifact: None,
    };
    let mut total = Outcome::default();
    for q in &points {
        let start = Instant::now();
        let out = match eval(check.as_ref(), &spec, q.as_ref()) {
            Ok(out) => out,
            Err(Error::BudgetExceeded(m)) => {
                report.status = Status::BudgetExceeded;
                report.witness = Some(format!("q = {}: {m}", label(q)));
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        if let Some(t) = report.timings.as_mut() {
            t.push(Timing { q: label(q), millis: start.elapsed().as_millis() });
        }
        let failed = out.witness.clone();
        total = total.merge(out);
        if let Some(w) = failed {
            report.status = Status::Fail;
            report.witness = Some(format!("q = {}: {w}", label(q)));
            report.drops = total.drops;
            return Ok(report);
        }
    }
    if let Some(p) = spec.p_minus {
        // the same verdict one truncation level finer, at the first point
        let mut finer = spec.clone();
        finer.p_minus = Some(p + 1);
        let start = Instant::now();
        let out = match eval(check.as_ref(), &finer, points[0].as_ref()) {
            Ok(out) => out,
            Err(Error::BudgetExceeded(m)) => Outcome::witness(Some(format!("refinement exceeded the budget: {m}"))),
            Err(e) => return Err(e),
        };
        if let Some(t) = report.timings.as_mut() {
            t.push(Timing { q: format!("{} at p_minus = {}", label(&points[0]), p + 1), millis: start.elapsed().as_millis() });
        }
        report.stability = Some(out.witness.is_none());
        if let Some(w) = &out.witness {
            report.status = Status::Fail;
            report.witness = Some(format!("not stable at p_minus = {}: {w}", p + 1));
        }
        total.drops += out.drops;
    }
    report.drops = total.drops;
    report.artifact = total.artifact;
    if report.status == Status::Pass && spec.mode == Mode::Numeric {
        report.status = Status::ProbabilisticPass;
        report.warning = true;
    }
    Ok(report)
}

impl Report {
    /// JSON with keys in a fixed order; timings are left out when
    /// `with_timings` is false, which makes reruns byte-identical.
    pub fn to_json(&self, with_timings: bool) -> String {
        let mut r = self.clone();
        if !with_timings {
            r.timings = None;
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let mut s = format!("{} n={} {}", self.check, self.params.n, self.status.name());
        if let Some(k) = self.params.k {
            s = format!("{} n={} k={k} {}", self.check, self.params.n, self.status.name());
        }
        if let Some(m) = &self.params.mutation {
            s.push_str(&format!(" [mutation {m}]"));
        }
        if self.warning {
            s.push_str(" (sampled q)");
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(": {w}"));
        }
        s
    }
}
