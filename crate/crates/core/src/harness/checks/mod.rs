//! Named checks, registered as trait objects.

mod module;
mod sugawara;
mod tensor;
mod images;

use std::fmt::Display;

use crate::algebra::{Engine, OrderingKind};
use crate::coeff::{Field, QCtx, Rat, RatFunc, Ring};
use crate::error::{invalid, Result};
use crate::tensor::TensorOp;

use super::spec::CheckSpec;

/// What one evaluation at a single `q` produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub witness: Option<String>,
    pub drops: u64,
    pub stability: Option<bool>,
    pub artifact: Option<String>,
}

impl Outcome {
    pub fn witness(w: Option<String>) -> Self {
        Outcome { witness: w, ..Default::default() }
    }

    /// Keeps the first witness and accumulates the rest.
    pub fn merge(mut self, other: Outcome) -> Self {
        self.witness = self.witness.or(other.witness);
        self.drops += other.drops;
        self.stability = match (self.stability, other.stability) {
            (Some(a), Some(b)) => Some(a && b),
            (a, b) => a.or(b),
        };
        self.artifact = match (self.artifact, other.artifact) {
            (Some(a), Some(b)) => Some(format!("{a}\n{b}")),
            (a, b) => a.or(b),
        };
        self
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// Names accepted by `CheckSpec::mutation`.
    fn mutations(&self) -> &'static [&'static str];
    /// Scope label carried by every report of this check.
    fn scope(&self) -> Option<&'static str>;
    /// Fills unset parameters and rejects unsupported ones.
    fn resolve(&self, spec: &mut CheckSpec) -> Result<()>;
    fn run_symbolic(&self, spec: &CheckSpec, ctx: &QCtx<RatFunc>) -> Result<Outcome>;
    fn run_numeric(&self, spec: &CheckSpec, ctx: &QCtx<Rat>) -> Result<Outcome>;
}

type Eval<F> = fn(&CheckSpec, &QCtx<F>) -> Result<Outcome>;

/// A check assembled from plain functions; `eval` is one generic function
/// instantiated at both coefficient fields.
pub struct FnCheck {
    pub name: &'static str,
    pub describe: &'static str,
    pub mutations: &'static [&'static str],
    pub scope: Option<&'static str>,
    pub n_range: (usize, usize),
    pub defaults: fn(&mut CheckSpec),
    pub symbolic: Eval<RatFunc>,
    pub numeric: Eval<Rat>,
}

impl Check for FnCheck {
    fn name(&self) -> &'static str {
        self.name
    }
    fn describe(&self) -> &'static str {
        self.describe
    }
    fn mutations(&self) -> &'static [&'static str] {
        self.mutations
    }
    fn scope(&self) -> Option<&'static str> {
        self.scope
    }
    fn resolve(&self, spec: &mut CheckSpec) -> Result<()> {
        let (lo, hi) = self.n_range;
        if spec.n < lo || spec.n > hi {
            return invalid(format!("{} supports n in {lo}..={hi}, got {}", self.name, spec.n));
        }
        if let Some(m) = &spec.mutation {
            if !self.mutations.contains(&m.as_str()) {
                return invalid(format!("{} has no mutation {m}; known: {:?}", self.name, self.mutations));
            }
        }
        if let Some((a, b)) = spec.window {
            if a > b {
                return invalid(format!("empty window {a}..{b}"));
            }
        }
        (self.defaults)(spec);
        if spec.k.is_some_and(|k| k == 0) {
            return invalid("k must be positive");
        }
        Ok(())
    }
    fn run_symbolic(&self, spec: &CheckSpec, ctx: &QCtx<RatFunc>) -> Result<Outcome> {
        (self.symbolic)(spec, ctx)
    }
    fn run_numeric(&self, spec: &CheckSpec, ctx: &QCtx<Rat>) -> Result<Outcome> {
        (self.numeric)(spec, ctx)
    }
}

macro_rules! fn_check {
    ($name:expr, $desc:expr, $muts:expr, $scope:expr, $range:expr, $defaults:expr, $eval:ident) => {
        Box::new($crate::harness::checks::FnCheck {
            name: $name,
            describe: $desc,
            mutations: $muts,
            scope: $scope,
            n_range: $range,
            defaults: $defaults,
            symbolic: $eval::<$crate::coeff::RatFunc>,
            numeric: $eval::<$crate::coeff::Rat>,
        })
    };
}
pub(crate) use fn_check;

/// Every registered check.
pub fn registry() -> Vec<Box<dyn Check>> {
    let mut out = tensor::checks();
    out.extend(sugawara::checks());
    out.extend(module::checks());
    out.extend(images::checks());
    out
}

pub fn lookup(name: &str) -> Result<Box<dyn Check>> {
    match registry().into_iter().find(|c| c.name() == name) {
        Some(c) => Ok(c),
        None => invalid(format!("unknown check {name}")),
    }
}

pub(crate) fn mutated(spec: &CheckSpec, name: &str) -> bool {
    spec.mutation.as_deref() == Some(name)
}

/// First nonzero entry of a residual operator.
pub(crate) fn op_witness<R: Ring + Display>(label: &str, op: &TensorOp<R>) -> Option<String> {
    op.first_entry().map(|(r, c, v)| format!("{label}: entry {r} {c} is {v}"))
}

pub(crate) fn engine<F: Field>(ctx: &QCtx<F>, n: usize, ord: OrderingKind, order: usize) -> Result<Engine<F>> {
    Engine::new(ctx.clone(), n, ord, order)
}

/// Values of `k` to run: the given one, else `1..=k_max`.
pub(crate) fn ks(spec: &CheckSpec, k_max: usize) -> Vec<usize> {
    match spec.k {
        Some(k) => vec![k],
        None => (1..=k_max).collect(),
    }
}
