//! The acceptance suite: fixed runs grouped into numbered criteria.

use std::time::{Duration, Instant};

use super::spec::{CheckSpec, Mode, Report};
use super::run;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    /// A mutation run, which must fail with a witness.
    Fail,
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub budget: Duration,
    pub runs: Vec<(CheckSpec, Expect)>,
}

pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    pub reports: Vec<Report>,
    /// Problems other than a wrong verdict: errors and budget overruns.
    pub notes: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2} {verdict} {} ({:.1}s of {}s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        for n in &self.notes {
            s.push_str(&format!("; {n}"));
        }
        s
    }
}

fn sym(check: &str, n: usize) -> CheckSpec {
    CheckSpec::new(check, n).with_mode(Mode::Symbolic)
}

fn num(check: &str, n: usize) -> CheckSpec {
    CheckSpec::new(check, n)
}

const TWO_POINTS: [&str; 2] = ["3/2", "5/3"];

pub fn criteria() -> Vec<Criterion> {
    use Expect::*;
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "Yang-Baxter equation",
            budget: secs(60),
            runs: vec![(sym("ybe", 2), Pass), (sym("ybe", 3), Pass), (num("ybe", 4), Pass)],
        },
        Criterion {
            id: 2,
            title: "f-series recurrence, product and functional equation",
            budget: secs(10),
            runs: vec![(sym("f-series", 2), Pass), (sym("f-series", 3), Pass)],
        },
        Criterion {
            id: 3,
            title: "crossing symmetry and unitarity",
            budget: secs(60),
            runs: vec![(sym("crossing", 2), Pass), (sym("crossing", 3), Pass)],
        },
        Criterion {
            id: 4,
            title: "fusion",
            budget: secs(60),
            runs: [(2, 2), (2, 3), (3, 2), (3, 3)].iter().map(|&(n, k)| (sym("fusion", n).with_k(k), Pass)).collect(),
        },
        Criterion {
            id: 5,
            title: "antisymmetrizer",
            budget: secs(30),
            runs: (1..=4).map(|n| (sym("antisym", n), Pass)).collect(),
        },
        Criterion {
            id: 6,
            title: "four constructions of l_k agree",
            budget: secs(600),
            runs: vec![
                (num("rll-consistency", 2).with_k(1), Pass),
                (num("rll-consistency", 2).with_k(2), Pass),
                (num("rll-consistency", 3).with_k(1), Pass),
            ],
        },
        Criterion {
            id: 7,
            title: "centrality on the vacuum module",
            budget: secs(900),
            runs: (1..=2).map(|k| (num("centrality", 2).with_k(k).with_q(&TWO_POINTS), Pass)).collect(),
        },
        Criterion {
            id: 8,
            title: "invariance and commutativity",
            budget: secs(600),
            runs: vec![
                (num("invariance", 2), Pass),
                (num("invariance", 3), Pass),
                (num("commutativity", 2), Pass),
                (num("commutativity", 3), Pass),
            ],
        },
        Criterion {
            id: 9,
            title: "qdet centrality and factorization of l_n",
            budget: secs(300),
            runs: vec![(num("qdet-central", 2), Pass), (num("factorization", 2), Pass)],
        },
        Criterion {
            id: 10,
            title: "inverse of L-(z) from quantum minors",
            budget: secs(300),
            runs: vec![(num("inverse-minors", 2), Pass)],
        },
        Criterion {
            id: 11,
            title: "q-Manin matrices and the det_q identity",
            budget: secs(300),
            runs: vec![
                (sym("manin", 2), Pass),
                (num("manin", 3), Pass),
                (sym("detq-identity", 2), Pass),
                (num("detq-identity", 3), Pass),
            ],
        },
        Criterion {
            id: 12,
            title: "Harish-Chandra images",
            budget: secs(900),
            runs: [("hc-image", 1), ("hc-image", 2), ("hc-image-primed", 1), ("hc-image-primed", 2)]
                .iter()
                .map(|&(c, k)| (num(c, 2).with_k(k), Pass))
                .collect(),
        },
        Criterion {
            id: 13,
            title: "Miura factorization",
            budget: secs(60),
            runs: (1..=3).map(|n| (sym("miura", n), Pass)).collect(),
        },
        Criterion {
            id: 14,
            title: "Wakimoto eigenvalues",
            budget: secs(60),
            runs: vec![(sym("wakimoto", 2), Pass), (sym("wakimoto", 3), Pass)],
        },
        Criterion {
            id: 15,
            title: "mutations are detected",
            budget: secs(600),
            runs: vec![
                (sym("ybe", 2).with_mutation("broken-r"), Fail),
                (sym("fusion", 2).with_k(2).with_mutation("plain-perm"), Fail),
                (
                    num("centrality", 2).with_k(1).with_depth(1).with_p_minus(3).with_q(&["3/2"]).with_mutation("drop-d"),
                    Fail,
                ),
                (num("invariance", 2).with_q(&["3/2"]).with_mutation("perturb-f"), Fail),
                (num("commutativity", 2).with_depth(2).with_q(&["3/2"]).with_mutation("plain-perm"), Fail),
            ],
        },
    ]
}

/// Runs one criterion; a run passes when its verdict matches the expectation
/// and, for mutation runs, a witness is reported.
pub fn run_criterion(c: &Criterion) -> CriterionResult {
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    let mut passed = true;
    for (spec, expect) in &c.runs {
        match run(spec) {
            Ok(r) => {
                let ok = match expect {
                    Expect::Pass => r.status.is_pass(),
                    Expect::Fail => r.status == super::Status::Fail && r.witness.is_some(),
                };
                if !ok {
                    passed = false;
                    notes.push(format!("unexpected: {}", r.line()));
                }
                reports.push(r);
            }
            Err(e) => {
                passed = false;
                notes.push(format!("{} n={}: error {e}", spec.check, spec.n));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > c.budget {
        passed = false;
        notes.push(format!("over the {}s budget", c.budget.as_secs()));
    }
    CriterionResult { id: c.id, title: c.title, passed, elapsed, budget: c.budget, reports, notes }
}

pub fn criterion(id: u32) -> Result<Criterion> {
    criteria()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| crate::error::Error::InvalidArgument(format!("no criterion {id}")))
}
