//! Check specifications and reports.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{rat, Rat};
use crate::error::{Error, Result};

/// Default numeric sample points for `q`.
pub const DEFAULT_Q: [&str; 3] = ["3/2", "5/3", "7/4"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Mode {
    #[serde(rename = "symbolic-q")]
    Symbolic,
    #[default]
    #[serde(rename = "numeric-q")]
    Numeric,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic-q" | "symbolic" => Ok(Mode::Symbolic),
            "numeric-q" | "numeric" => Ok(Mode::Numeric),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s}; use symbolic-q or numeric-q"))),
        }
    }
}

/// Everything needed to reproduce one check run. Unset fields take the
/// check's defaults when a CheckSpec is resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckSpec {
    pub check: String,
    pub n: usize,
    pub k: Option<usize>,
    pub p_minus: Option<u32>,
    pub d_plus: Option<u32>,
    pub series_order: Option<usize>,
    pub window: Option<(i64, i64)>,
    /// Depth budget for vacuum-module vectors.
    pub depth: Option<u32>,
    pub mode: Mode,
    /// Numeric sample points; empty means the defaults or seeded draws.
    pub q: Vec<String>,
    pub seed: Option<u64>,
    /// Name of a deliberate breakage; the run is then expected to fail.
    pub mutation: Option<String>,
}

impl Default for CheckSpec {
    fn default() -> Self {
        CheckSpec {
            check: String::new(),
            n: 2,
            k: None,
            p_minus: None,
            d_plus: None,
            series_order: None,
            window: None,
            depth: None,
            mode: Mode::Numeric,
            q: Vec::new(),
            seed: None,
            mutation: None,
        }
    }
}

impl CheckSpec {
    pub fn new(check: &str, n: usize) -> Self {
        CheckSpec { check: check.into(), n, ..Default::default() }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_q(mut self, q: &[&str]) -> Self {
        self.q = q.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_window(mut self, lo: i64, hi: i64) -> Self {
        self.window = Some((lo, hi));
        self
    }

    pub fn with_p_minus(mut self, p: u32) -> Self {
        self.p_minus = Some(p);
        self
    }

    pub fn with_depth(mut self, d: u32) -> Self {
        self.depth = Some(d);
        self
    }

    pub fn with_mutation(mut self, m: &str) -> Self {
        self.mutation = Some(m.into());
        self
    }

    /// Sample points: explicit values, else three seeded draws, else the defaults.
    pub fn sample_points(&self) -> Result<Vec<Rat>> {
        if !self.q.is_empty() {
            return self
                .q
                .iter()
                .map(|s| Rat::from_str(s.trim()).map_err(|e| Error::InvalidArgument(format!("bad q value {s}: {e}"))))
                .collect();
        }
        if let Some(seed) = self.seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            while out.len() < 3 {
                let x = rat(rng.gen_range(2..=40), rng.gen_range(1..=20));
                if x != rat(1, 1) && !out.contains(&x) {
                    out.push(x);
                }
            }
            return Ok(out);
        }
        Ok(DEFAULT_Q.iter().map(|s| Rat::from_str(s).expect("valid default")).collect())
    }

    pub fn k_or(&self, d: usize) -> usize {
        self.k.unwrap_or(d)
    }

    pub fn window_or(&self, d: (i64, i64)) -> (i64, i64) {
        self.window.unwrap_or(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "probabilistic-pass")]
    ProbabilisticPass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "budget-exceeded")]
    BudgetExceeded,
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass | Status::ProbabilisticPass)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ProbabilisticPass => "probabilistic-pass",
            Status::Fail => "fail",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    /// Sample point, or "symbolic".
    pub q: String,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: CheckSpec,
    pub status: Status,
    /// Set when the pass rests on sampled values of `q`.
    pub warning: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Omitted when timings are suppressed for byte-stable output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
    pub drops: u64,
    /// Whether a rerun at a finer truncation agreed; `None` when not applicable.
    pub stability: Option<bool>,
    /// Scope note, e.g. that a module-level check is evidence, not proof.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    /// Computed data worth keeping, such as an image series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<String>,
}
