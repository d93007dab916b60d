//! The `ffdet` command line: parameter sweeps over the claim checkers,
//! report streaming, and the modulus cache.
//!
//! Exit status is 0 when every emitted report matched, 1 when any report
//! did not, and 2 on usage or precondition errors.

use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{is_prime, prime_power};
use crate::claims::{
    check_carlitz, check_corollary, check_q_hypothesis, check_remark, check_sun_ap, check_sun_sp,
    check_theorem_in, theorem_assembly_check_in, ClaimError,
};
use crate::field::{make_extension_field_cached, FieldCtx, FieldError, ModulusCache};
use crate::lemmas::{
    check_inversion_sign, check_lemma22_field, check_lemma22_integer_grid, check_lemma22_rational,
    check_lerch, DEFAULT_SEED, DEFAULT_TRIALS, LERCH_MAX_M,
};
use crate::polyring::verify_lemma21;
use crate::report::{sort_reports, VerificationReport};

pub const DEFAULT_MAX_Q: u64 = 200;
pub const DEFAULT_MAX_P: u64 = 200;
/// Prime bound for `zoo` when `--max-p` is not given.
pub const DEFAULT_ZOO_MAX_P: u64 = 50;
pub const CARLITZ_MAX_P: u64 = 13;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Determinant of T_q against the closed form, plus each step of its evaluation
    VerifyTheorem,
    /// The reduced-power, closed-form determinant and permutation-sign lemmas
    VerifyLemmas,
    /// 2 det T_p is a quadratic residue mod p
    Conjecture,
    /// S_p, A_p, C_p(lambda) and the exact rational T_5, T_11 values
    Zoo,
    /// One determinant of T_q with its predicted value
    DetTq,
    /// The modulus chosen for F_{p^r}
    FieldInfo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    JsonLines,
    Table,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "ffdet", version, about = "Exact determinant checks over finite fields")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<i64>,
    #[arg(long)]
    pub max_q: Option<u64>,
    #[arg(long)]
    pub max_p: Option<u64>,
    /// Seed for the randomized closed-form determinant checks
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Modulus cache file, read and appended
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::JsonLines)]
    pub format: OutputFormat,
    /// Record wall-clock milliseconds in `elapsed_ms` (otherwise 0)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bound {0} is below 5")]
    BoundTooSmall(u64),
    #[error("--jobs must be at least 1")]
    NoJobs,
    #[error("{0} needs {1}")]
    MissingParam(&'static str, &'static str),
    #[error(transparent)]
    Claim(#[from] ClaimError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cache: {0}")]
    Cache(#[from] io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

/// Odd prime powers `q = p^r <= bound` with `q = 2 (mod 3)`, ascending.
pub fn enumerate_valid_q(bound: u64) -> Result<Vec<(u64, u32, u64)>, HarnessError> {
    if bound < 5 {
        return Err(HarnessError::BoundTooSmall(bound));
    }
    Ok((5..=bound)
        .filter_map(|q| check_q_hypothesis(q).ok().map(|(p, r)| (p, r, q)))
        .collect())
}

/// Odd prime powers `3 <= q <= bound`, ascending.
pub fn odd_prime_powers(bound: u64) -> Vec<(u64, u32, u64)> {
    (3..=bound)
        .filter_map(|q| prime_power(q).filter(|&(p, _)| p != 2).map(|(p, r)| (p, r, q)))
        .collect()
}

fn odd_primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p))
}

type Task = Box<dyn Fn() -> Vec<VerificationReport> + Send + Sync>;

fn single(f: impl Fn() -> VerificationReport + Send + Sync + 'static) -> Task {
    Box::new(move || vec![f()])
}

fn check_bound(bound: u64) -> Result<u64, HarnessError> {
    if bound < 5 {
        Err(HarnessError::BoundTooSmall(bound))
    } else {
        Ok(bound)
    }
}

struct Planner {
    cache: ModulusCache,
}

impl Planner {
    fn field(&mut self, p: u64, r: u32) -> Result<Arc<FieldCtx>, HarnessError> {
        Ok(make_extension_field_cached(p, r, &mut self.cache)?)
    }

    fn plan(&mut self, config: &RunConfig) -> Result<Vec<Task>, HarnessError> {
        let max_q = check_bound(config.max_q.unwrap_or(DEFAULT_MAX_Q))?;
        let max_p = check_bound(config.max_p.unwrap_or(DEFAULT_MAX_P))?;
        let mut tasks: Vec<Task> = Vec::new();
        match config.command {
            Command::VerifyTheorem => {
                for (p, r, _) in enumerate_valid_q(max_q)? {
                    let ctx = self.field(p, r)?;
                    let other = Arc::clone(&ctx);
                    tasks.push(single(move || check_theorem_in(&ctx)));
                    tasks.push(single(move || theorem_assembly_check_in(&other)));
                }
            }
            Command::VerifyLemmas => {
                for (p, r, _) in enumerate_valid_q(max_q)? {
                    let ctx = self.field(p, r)?;
                    tasks.push(single(move || verify_lemma21(&ctx)));
                }
                let (seed, trials) = (config.seed, config.trials);
                tasks.push(single(move || check_lemma22_field(7, 5, trials, seed)));
                tasks.push(single(move || check_lemma22_rational(5, trials, seed)));
                tasks.push(single(|| check_lemma22_integer_grid(3, 2)));
                for m in 1..=LERCH_MAX_M {
                    tasks.push(single(move || check_lerch(m)));
                }
                for (p, r, _) in odd_prime_powers(max_q) {
                    let ctx = self.field(p, r)?;
                    tasks.push(single(move || check_inversion_sign(&ctx)));
                }
            }
            Command::Conjecture => {
                for p in odd_primes(5, max_p).filter(|p| p % 3 == 2) {
                    tasks.push(single(move || check_corollary(p)));
                }
            }
            Command::Zoo => {
                let bound = config.max_p.unwrap_or(DEFAULT_ZOO_MAX_P);
                for p in odd_primes(3, bound) {
                    tasks.push(single(move || check_sun_sp(p)));
                    if p % 4 == 3 {
                        tasks.push(single(move || check_sun_ap(p)));
                    }
                }
                let lambdas: Vec<i64> = match config.lambda {
                    Some(l) => vec![l],
                    None => vec![0, 1, 2],
                };
                for p in odd_primes(5, bound.min(CARLITZ_MAX_P)) {
                    for &l in &lambdas {
                        tasks.push(single(move || check_carlitz(p, l)));
                    }
                }
                tasks.push(single(|| check_remark(5)));
                tasks.push(single(|| check_remark(11)));
            }
            Command::DetTq => {
                let (p, r) = match (config.q, config.p) {
                    (Some(q), _) => check_q_hypothesis(q)?,
                    (None, Some(p)) => {
                        let r = config.r.unwrap_or(1);
                        let q = p
                            .checked_pow(r)
                            .ok_or(FieldError::OrderOverflow { p, r })?;
                        let split = check_q_hypothesis(q)?;
                        if split != (p, r) {
                            return Err(FieldError::NotOddPrime(p).into());
                        }
                        split
                    }
                    (None, None) => return Err(HarnessError::MissingParam("det-tq", "--q or --p")),
                };
                let ctx = self.field(p, r)?;
                tasks.push(single(move || check_theorem_in(&ctx)));
            }
            Command::FieldInfo => unreachable!("handled without reports"),
        }
        Ok(tasks)
    }
}

fn execute(tasks: Vec<Task>, jobs: usize) -> Vec<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let mut reports: Vec<VerificationReport> =
        pool.install(|| tasks.par_iter().flat_map(|t| t()).collect());
    sort_reports(&mut reports);
    reports
}

fn open_cache(config: &RunConfig) -> Result<ModulusCache, HarnessError> {
    Ok(match &config.cache {
        Some(path) => ModulusCache::open(path)?,
        None => ModulusCache::in_memory(),
    })
}

/// Runs every check the configuration selects and returns the reports in
/// canonical order.
pub fn collect_reports(config: &RunConfig) -> Result<Vec<VerificationReport>, HarnessError> {
    if config.jobs == 0 {
        return Err(HarnessError::NoJobs);
    }
    let mut planner = Planner {
        cache: open_cache(config)?,
    };
    let tasks = planner.plan(config)?;
    let mut reports = execute(tasks, config.jobs);
    if !config.timing {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    Ok(reports)
}

fn table_header() -> String {
    format!(
        "{:<22} {:<40} {:<8} {}",
        "claim", "params", "matched", "computed | predicted"
    )
}

fn table_row(r: &VerificationReport) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "{:<22} {:<40} {:<8} {} | {}",
        r.claim.tag(),
        params.join(" "),
        r.matched,
        r.computed,
        r.predicted
    )
}

pub fn write_reports(
    reports: &[VerificationReport],
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::JsonLines => {
            for r in reports {
                writeln!(out, "{}", r.to_json_line())?;
            }
        }
        OutputFormat::Table => {
            writeln!(out, "{}", table_header())?;
            for r in reports {
                writeln!(out, "{}", table_row(r))?;
            }
        }
    }
    Ok(())
}

fn field_info(config: &RunConfig, out: &mut dyn Write) -> Result<(), HarnessError> {
    let p = config.p.ok_or(HarnessError::MissingParam("field-info", "--p"))?;
    let r = config.r.unwrap_or(1);
    let mut cache = open_cache(config)?;
    let ctx = make_extension_field_cached(p, r, &mut cache)?;
    let modulus: Vec<String> = ctx.modulus().iter().map(u64::to_string).collect();
    let modulus = modulus.join(",");
    match config.format {
        OutputFormat::JsonLines => {
            let line = serde_json::json!({
                "p": p,
                "r": r,
                "q": ctx.order(),
                "modulus": modulus,
            });
            writeln!(out, "{line}")?;
        }
        OutputFormat::Table => writeln!(out, "F_{} = F_{p}[T]/({modulus})", ctx.order())?,
    }
    Ok(())
}

/// Executes `config`, writing reports to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = if config.command == Command::FieldInfo {
        field_info(config, out).map(|()| EXIT_OK)
    } else {
        collect_reports(config).and_then(|reports| {
            write_reports(&reports, config.format, out)?;
            Ok(if reports.iter().all(|r| r.matched) {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        })
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "ffdet: {e}");
            e.exit_code()
        }
    }
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunConfig::try_parse_from(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let config = parse_args(std::iter::once("ffdet").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&config, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn valid_q_enumeration() {
        let got = enumerate_valid_q(30).unwrap();
        assert_eq!(
            got,
            vec![(5, 1, 5), (11, 1, 11), (17, 1, 17), (23, 1, 23), (29, 1, 29)]
        );
        assert!(enumerate_valid_q(125).unwrap().contains(&(5, 3, 125)));
        assert!(matches!(enumerate_valid_q(4), Err(HarnessError::BoundTooSmall(4))));
    }

    #[test]
    fn det_tq_command() {
        let (code, out, _) = run_args(&["det-tq", "--q", "5"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(
            out.trim(),
            r#"{"claim":"theorem_1_1","params":{"p":5,"q":5,"r":1},"computed":"3","predicted":"3","matched":true,"elapsed_ms":0}"#
        );
        let (code, out, err) = run_args(&["det-tq", "--q", "7"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("7"));
        let (code, _, _) = run_args(&["det-tq", "--p", "5", "--r", "3"]);
        assert_eq!(code, EXIT_OK);
        let (code, _, _) = run_args(&["det-tq"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn field_info_command() {
        let (code, out, _) = run_args(&["field-info", "--p", "5", "--r", "3"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), r#"{"modulus":"1,0,1,1","p":5,"q":125,"r":3}"#);
    }

    #[test]
    fn bad_bounds_and_flags() {
        let (code, _, _) = run_args(&["conjecture", "--max-p", "4"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(parse_args(["ffdet", "frobnicate"]).is_err());
        assert!(parse_args(["ffdet", "zoo", "--max-q", "x"]).is_err());
        assert_eq!(
            parse_args(["ffdet", "zoo", "--lambda", "-3"]).unwrap().lambda,
            Some(-3)
        );
    }

    #[test]
    fn conjecture_small() {
        let (code, out, _) = run_args(&["conjecture", "--max-p", "30", "--format", "table"]);
        assert_eq!(code, EXIT_OK);
        // Header plus p = 5, 11, 17, 23, 29.
        assert_eq!(out.lines().count(), 6);
    }
}
