use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qaffine::harness::compute::{compute, TARGETS};
use qaffine::harness::suite::{criteria, run_criterion};
use qaffine::harness::{registry, run, CheckSpec, Mode, Report};
use qaffine::{Error, Result};

#[derive(Parser)]
#[command(name = "qaffine", about = "Exact checks for Sugawara operators of the quantum affine algebra at the critical level")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run checks and report; the exit code is 0 only if all pass.
    Verify {
        /// Check names, comma separated; `acceptance` runs the whole suite.
        #[arg(long, value_delimiter = ',', required = true)]
        check: Vec<String>,
        /// With `--check acceptance`: run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u32>,
        #[command(flatten)]
        params: Params,
        /// Leave timings out of the JSON so reruns are byte-identical.
        #[arg(long)]
        no_timings: bool,
        /// Print full JSON reports instead of summary lines.
        #[arg(long)]
        json: bool,
    },
    /// Compute a series and print or write it as text and JSON.
    Compute {
        /// One of ell, ell-bar, qdet, hc-image, miura.
        target: String,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
    /// List the registered checks.
    List,
}

#[derive(Args, Clone, Default)]
struct Params {
    /// TOML file with CheckSpec fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p_minus: Option<u32>,
    #[arg(long)]
    d_plus: Option<u32>,
    #[arg(long)]
    series_order: Option<usize>,
    /// Exponent window `lo,hi`, e.g. `--window=-1,1`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long)]
    depth: Option<u32>,
    /// symbolic-q or numeric-q.
    #[arg(long)]
    mode: Option<String>,
    /// Sample points for numeric-q, comma separated rationals.
    #[arg(long, value_delimiter = ',')]
    q: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    mutation: Option<String>,
    /// Directory for JSON and text artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidArgument(format!("window {s} is not of the form lo,hi"));
    let (a, b) = s.split_once(',').or_else(|| s.split_once("..")).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl Params {
    fn spec(&self, check: &str) -> Result<CheckSpec> {
        let mut spec = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                toml::from_str::<CheckSpec>(&text)
                    .map_err(|e| Error::InvalidArgument(format!("bad config {}: {e}", path.display())))?
            }
            None => CheckSpec::default(),
        };
        if !check.is_empty() {
            spec.check = check.to_string();
        }
        if let Some(n) = self.n {
            spec.n = n;
        }
        spec.k = self.k.or(spec.k);
        spec.p_minus = self.p_minus.or(spec.p_minus);
        spec.d_plus = self.d_plus.or(spec.d_plus);
        spec.series_order = self.series_order.or(spec.series_order);
        spec.depth = self.depth.or(spec.depth);
        spec.seed = self.seed.or(spec.seed);
        spec.mutation = self.mutation.clone().or(spec.mutation);
        if let Some(w) = &self.window {
            spec.window = Some(parse_window(w)?);
        }
        if let Some(m) = &self.mode {
            spec.mode = m.parse::<Mode>()?;
        }
        if !self.q.is_empty() {
            spec.q = self.q.clone();
        }
        Ok(spec)
    }
}

fn write_artifact(dir: &Path, name: &str, body: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn report_name(r: &Report) -> String {
    let mut s = format!("{}-n{}", r.check, r.params.n);
    if let Some(k) = r.params.k {
        s.push_str(&format!("-k{k}"));
    }
    if let Some(m) = &r.params.mutation {
        s.push_str(&format!("-{m}"));
    }
    s + ".json"
}

fn emit(r: &Report, params: &Params, json: bool, with_timings: bool) -> Result<()> {
    if json {
        println!("{}", r.to_json(with_timings));
    } else {
        println!("{}", r.line());
    }
    if let Some(dir) = &params.out {
        write_artifact(dir, &report_name(r), &(r.to_json(with_timings) + "\n"))?;
    }
    Ok(())
}

fn verify(checks: &[String], only: &[u32], params: &Params, no_timings: bool, json: bool) -> Result<bool> {
    let mut all = true;
    for name in checks {
        if name == "acceptance" {
            for c in criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
                let res = run_criterion(c);
                for r in &res.reports {
                    if json || params.out.is_some() {
                        emit(r, params, json, !no_timings)?;
                    }
                }
                println!("{}", res.line());
                all &= res.passed;
            }
            continue;
        }
        let r = run(&params.spec(name)?)?;
        emit(&r, params, json, !no_timings)?;
        all &= r.status.is_pass();
    }
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify { check, criterion, params, no_timings, json } => verify(&check, &criterion, &params, no_timings, json),
        Cmd::Compute { target, params, json } => params.spec("").and_then(|spec| {
            let c = compute(&target, &spec)?;
            print!("{}", if json { c.to_json() + "\n" } else { c.to_text() });
            if let Some(dir) = &params.out {
                let stem = format!("{target}-n{}", c.params.n);
                write_artifact(dir, &format!("{stem}.txt"), &c.to_text())?;
                write_artifact(dir, &format!("{stem}.json"), &(c.to_json() + "\n"))?;
            }
            Ok(true)
        }),
        Cmd::List => {
            for c in registry() {
                let muts = if c.mutations().is_empty() { String::new() } else { format!(" [mutations: {}]", c.mutations().join(", ")) };
                println!("{:<16} {}{muts}", c.name(), c.describe());
            }
            println!("{:<16} every acceptance criterion", "acceptance");
            println!("compute targets: {}", TARGETS.join(", "));
            Ok(true)
        }
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
