//! Batch command-line surface: enumerate the claim catalog, verify single
//! points, sweep ranges, run the searches, and re-run the frozen golden
//! examples.
//!
//! Exit codes: 0 every check passed; 1 a theorem-status claim failed (an
//! implementation bug); 2 a conjecture-status claim produced a finding that
//! survived exact re-verification (a counterexample candidate); 64 usage
//! error; 70 internal error. Workers fan out over (claim, point) pairs and a
//! single writer emits rows in sorted order, so output is byte-identical
//! across runs and `--jobs` settings unless `--timings` is requested.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::{parse_rational, BigRational};
use crate::claims::{
    check_ao_beukers, check_claim_timed, find_claim, resolve_selector, reverify_failures, sweep,
    ClaimDescriptor, ClaimKind, ClaimStatus, Ctx, PointKind, SweepConfig, SweepSummary,
};
use crate::error::{Error, Result};
use crate::report::{
    parse_jsonl_line, read_csv, sort_reports, write_csv, write_jsonl, ClaimReport,
};
use crate::sequences::{apery_poly, eta_product_coeffs, hilbert_inverse_trace, s_of_n};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Summary,
}

/// Which subcommand runs, with its point argument where one applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cmd {
    List,
    Verify { point: u64 },
    Sweep,
    Search { n_max: u64 },
    Selftest,
}

/// Normalized invocation: everything `run` needs, already validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Cmd,
    /// Claim id, or a selector (all / all-theorems / all-conjectures / list).
    pub selector: String,
    pub pmin: u64,
    pub pmax: u64,
    pub nmax: u64,
    pub x_samples: Option<Vec<BigRational>>,
    pub t_depth: u32,
    pub format: Format,
    pub jobs: usize,
    pub output: Option<PathBuf>,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Cmd::List,
            selector: "all".to_string(),
            pmin: 3,
            pmax: 50,
            nmax: 20,
            x_samples: None,
            t_depth: 5,
            format: Format::Jsonl,
            jobs: 1,
            output: None,
            timings: false,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "apery-lab",
    version,
    about = "Verify congruences of Apéry polynomials, Delannoy sums, and central binomial series in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Print the claim catalog
    List {
        /// all, all-theorems, all-conjectures, or comma-separated claim ids
        #[arg(long, default_value = "all")]
        claim: String,
        /// summary (two lines per claim) or jsonl (one object per claim)
        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check one claim at one point
    Verify {
        /// Claim id (see `list`)
        #[arg(long)]
        claim: String,
        /// Evaluation point for prime-indexed claims
        #[arg(long)]
        p: Option<u64>,
        /// Evaluation point for index claims (scan bound for search claims)
        #[arg(long)]
        n: Option<u64>,
        /// Override the x-sample list, e.g. "0,1,-1,1/4"
        #[arg(long)]
        x_samples: Option<String>,
        /// How many lift offsets t to sample from {0, 1, -1, 2, 1/3}
        #[arg(long, default_value_t = 5)]
        t_depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Write reports to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record per-point latency in the us field (breaks determinism)
        #[arg(long)]
        timings: bool,
    },
    /// Check many claims over a point range
    Sweep {
        /// all, all-theorems, all-conjectures, or comma-separated claim ids
        #[arg(long, default_value = "all")]
        claim: String,
        /// Smallest prime to check
        #[arg(long, default_value_t = 3)]
        pmin: u64,
        /// Largest prime to check
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        /// Largest index for index claims (scan bound for search claims)
        #[arg(long, default_value_t = 20)]
        nmax: u64,
        /// Override the x-sample list, e.g. "0,1,-1,1/4"
        #[arg(long)]
        x_samples: Option<String>,
        /// How many lift offsets t to sample from {0, 1, -1, 2, 1/3}
        #[arg(long, default_value_t = 5)]
        t_depth: u32,
        /// Worker threads (default: APERY_LAB_JOBS, else 1)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Write reports to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record per-point latency in the us field (breaks determinism)
        #[arg(long)]
        timings: bool,
    },
    /// Run a desk search for counterexamples
    Search {
        /// Scan prefix sums of a_n = sum C(n,k)^2 C_k for composite n^2 hits
        /// and prime p^3 hits
        #[arg(long = "remark-1.4")]
        remark_1_4: bool,
        /// Scan bound
        #[arg(long, default_value_t = 10_000)]
        nmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Write reports to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-run the frozen golden examples
    Selftest,
}

fn jobs_from_env() -> usize {
    std::env::var("APERY_LAB_JOBS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&j| j >= 1)
        .unwrap_or(1)
}

fn parse_x_samples(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|piece| parse_rational(piece.trim()))
        .collect()
}

impl Cli {
    fn into_config(self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        match self.command {
            CliCommand::List {
                claim,
                format,
                output,
            } => {
                cfg.command = Cmd::List;
                cfg.selector = claim;
                cfg.format = format;
                cfg.output = output;
            }
            CliCommand::Verify {
                claim,
                p,
                n,
                x_samples,
                t_depth,
                format,
                output,
                timings,
            } => {
                let point = match (p, n) {
                    (Some(p), None) => p,
                    (None, Some(n)) => n,
                    _ => {
                        return Err(Error::Parse(
                            "verify needs exactly one of --p or --n".into(),
                        ))
                    }
                };
                cfg.command = Cmd::Verify { point };
                cfg.selector = claim;
                cfg.x_samples = x_samples.as_deref().map(parse_x_samples).transpose()?;
                cfg.t_depth = t_depth;
                cfg.format = format;
                cfg.output = output;
                cfg.timings = timings;
            }
            CliCommand::Sweep {
                claim,
                pmin,
                pmax,
                nmax,
                x_samples,
                t_depth,
                jobs,
                format,
                output,
                timings,
            } => {
                if pmin > pmax {
                    return Err(Error::Parse(format!("pmin {pmin} exceeds pmax {pmax}")));
                }
                let jobs = jobs.unwrap_or_else(jobs_from_env);
                if jobs == 0 {
                    return Err(Error::Parse("jobs must be >= 1".into()));
                }
                cfg.command = Cmd::Sweep;
                cfg.selector = claim;
                cfg.pmin = pmin;
                cfg.pmax = pmax;
                cfg.nmax = nmax;
                cfg.x_samples = x_samples.as_deref().map(parse_x_samples).transpose()?;
                cfg.t_depth = t_depth;
                cfg.jobs = jobs;
                cfg.format = format;
                cfg.output = output;
                cfg.timings = timings;
            }
            CliCommand::Search {
                remark_1_4,
                nmax,
                format,
                output,
            } => {
                if !remark_1_4 {
                    return Err(Error::Parse(
                        "search needs a target: pass --remark-1.4".into(),
                    ));
                }
                cfg.command = Cmd::Search { n_max: nmax };
                cfg.selector = "remark-1.4".to_string();
                cfg.format = format;
                cfg.output = output;
            }
            CliCommand::Selftest => {
                cfg.command = Cmd::Selftest;
            }
        }
        Ok(cfg)
    }
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit(cfg: &RunConfig, rows: &[ClaimReport], summary: Option<SweepSummary>) -> Result<()> {
    let mut out = open_output(cfg)?;
    match cfg.format {
        Format::Jsonl => write_jsonl(rows, &mut out)?,
        Format::Csv => write_csv(rows, &mut out)?,
        Format::Summary => {
            for r in rows.iter().filter(|r| !r.pass) {
                writeln!(
                    out,
                    "FAIL {} point={} params=[{}] lhs={} rhs={} modulus={}",
                    r.claim,
                    r.point,
                    r.params_canonical(),
                    r.lhs,
                    r.rhs,
                    r.modulus
                )?;
            }
            let s = summary.unwrap_or_else(|| {
                let passed = rows.iter().filter(|r| r.pass).count() as u64;
                SweepSummary {
                    checked: rows.len() as u64,
                    passed,
                    failed: rows.len() as u64 - passed,
                    skipped: 0,
                }
            });
            writeln!(
                out,
                "checked={} passed={} failed={} skipped={}",
                s.checked, s.passed, s.failed, s.skipped
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// 1 if any theorem-status row failed, else 2 if any conjecture-status row
/// failed, else 0.
fn exit_for_rows(rows: &[ClaimReport]) -> Result<u8> {
    let mut code = 0;
    for r in rows.iter().filter(|r| !r.pass) {
        match find_claim(&r.claim)?.status {
            ClaimStatus::Theorem => return Ok(1),
            ClaimStatus::Conjecture => code = 2,
        }
    }
    Ok(code)
}

fn kind_str(k: ClaimKind) -> &'static str {
    match k {
        ClaimKind::Identity => "identity",
        ClaimKind::Congruence => "congruence",
        ClaimKind::Conjecture => "conjecture",
        ClaimKind::Search => "search",
    }
}

fn status_str(s: ClaimStatus) -> &'static str {
    match s {
        ClaimStatus::Theorem => "theorem",
        ClaimStatus::Conjecture => "conjecture",
    }
}

fn point_str(p: PointKind) -> &'static str {
    match p {
        PointKind::Prime => "prime",
        PointKind::Index => "index",
    }
}

fn descriptor_json(d: &ClaimDescriptor) -> String {
    serde_json::json!({
        "id": d.id,
        "kind": kind_str(d.kind),
        "status": status_str(d.status),
        "point": point_str(d.point),
        "e": d.e,
        "param_domain": d.param_domain,
        "anchor": d.anchor,
    })
    .to_string()
}

fn run_list(cfg: &RunConfig) -> Result<u8> {
    let claims = resolve_selector(&cfg.selector)?;
    let mut out = open_output(cfg)?;
    match cfg.format {
        Format::Jsonl => {
            for d in claims {
                writeln!(out, "{}", descriptor_json(d))?;
            }
        }
        Format::Summary => {
            for d in claims {
                writeln!(
                    out,
                    "{:<12} {:<10} {:<10} {:<6} e={}  [{}]",
                    d.id,
                    status_str(d.status),
                    kind_str(d.kind),
                    point_str(d.point),
                    d.e,
                    d.param_domain
                )?;
                writeln!(out, "             {}", d.anchor)?;
            }
        }
        Format::Csv => {
            return Err(Error::Parse(
                "list supports --format summary or jsonl".into(),
            ))
        }
    }
    out.flush()?;
    Ok(0)
}

fn run_verify(cfg: &RunConfig, point: u64) -> Result<u8> {
    let ctx = Ctx::with_samples(cfg.t_depth, cfg.x_samples.clone());
    let mut rows = check_claim_timed(&ctx, &cfg.selector, point, cfg.timings)?;
    reverify_failures(&mut rows)?;
    sort_reports(&mut rows);
    emit(cfg, &rows, None)?;
    exit_for_rows(&rows)
}

fn run_sweep(cfg: &RunConfig) -> Result<u8> {
    let claims = resolve_selector(&cfg.selector)?;
    let sweep_cfg = SweepConfig {
        pmin: cfg.pmin,
        pmax: cfg.pmax,
        nmax: cfg.nmax,
        jobs: cfg.jobs,
        t_depth: cfg.t_depth,
        x_override: cfg.x_samples.clone(),
        timings: cfg.timings,
    };
    let (rows, summary) = sweep(&claims, &sweep_cfg)?;
    emit(cfg, &rows, Some(summary))?;
    exit_for_rows(&rows)
}

fn run_search(cfg: &RunConfig, n_max: u64) -> Result<u8> {
    let ctx = Ctx::new();
    let mut rows = check_claim_timed(&ctx, "remark-1.4", n_max, cfg.timings)?;
    sort_reports(&mut rows);
    emit(cfg, &rows, None)?;
    exit_for_rows(&rows)
}

/// Run every frozen golden example; one line per item.
pub fn run_selftest<W: Write>(mut out: W) -> Result<u8> {
    let mut failures = 0u32;
    let mut item = |name: &str, ok: bool, detail: String, out: &mut W| -> Result<()> {
        if ok {
            writeln!(out, "ok   {name}")?;
        } else {
            failures += 1;
            writeln!(out, "FAIL {name}: {detail}")?;
        }
        Ok(())
    };

    let expected_s: [u64; 8] = [1, 8, 127, 2624, 61501, 1552760, 41186755, 1131614720];
    let got: Vec<String> = (1..=8)
        .map(|n| {
            s_of_n(n)
                .map(|v| v.to_string())
                .unwrap_or_else(|e| e.to_string())
        })
        .collect();
    let want: Vec<String> = expected_s.iter().map(|v| v.to_string()).collect();
    item(
        "s_of_n(1..=8) frozen table",
        got == want,
        format!("{got:?}"),
        &mut out,
    )?;

    let mut hilbert_ok = true;
    let mut hilbert_detail = String::new();
    for n in 1..=12 {
        let h = hilbert_inverse_trace(n)?;
        let s = s_of_n(n)?;
        if h != s {
            hilbert_ok = false;
            hilbert_detail = format!("n={n}: trace {h} vs sum {s}");
            break;
        }
    }
    item(
        "hilbert_inverse_trace = s_of_n, n <= 12",
        hilbert_ok,
        hilbert_detail,
        &mut out,
    )?;

    let ctx = Ctx::new();
    let point_cases: [(&str, u64, &str, &str); 5] = [
        ("1.6", 5, "1255", "5^5"),
        ("1.7", 5, "130", "5^4"),
        ("1.17", 5, "26", "5^3"),
        ("1.8", 5, "19", "5^2"),
        ("1.15", 5, "0", "5^2"),
    ];
    for (id, p, want, want_mod) in point_cases {
        let rows = check_claim_timed(&ctx, id, p, false)?;
        let ok = !rows.is_empty()
            && rows
                .iter()
                .all(|r| r.pass && r.lhs == want && r.rhs == want && r.modulus == want_mod);
        let detail = rows
            .iter()
            .map(|r| format!("{}/{} mod {}", r.lhs, r.rhs, r.modulus))
            .collect::<Vec<_>>()
            .join(", ");
        item(
            &format!("{id} at p={p} = {want} mod {want_mod}"),
            ok,
            detail,
            &mut out,
        )?;
    }

    let rows = check_claim_timed(&ctx, "1.11", 3, false)?;
    let x2 = rows
        .iter()
        .find(|r| r.params.get("x").is_some_and(|x| x == "2"));
    let ok = x2.is_some_and(|r| r.pass && r.lhs == "6" && r.modulus == "3^2");
    item(
        "1.11 at p=3, x=2 = 6 mod 3^2",
        ok,
        x2.map(|r| format!("{}/{} mod {}", r.lhs, r.rhs, r.modulus))
            .unwrap_or_default(),
        &mut out,
    )?;

    let coeffs = eta_product_coeffs(10)?;
    let a5 = coeffs.a(5).to_string();
    item("eta-product a(5) = -2", a5 == "-2", a5, &mut out)?;
    let a2 = apery_poly(2, &BigRational::from_integer(1.into()));
    item(
        "A_2 = 73 and a(5) = -2 agree mod 25 (73 = 23, -2 = 23)",
        a2.to_string() == "73" && check_ao_beukers(5, &coeffs)?.pass,
        a2.to_string(),
        &mut out,
    )?;

    let frozen = r#"{"claim":"1.6","point":5,"params":{},"modulus":"5^5","lhs":"1255","rhs":"1255","pass":true,"us":0}"#;
    let rows = check_claim_timed(&ctx, "1.6", 5, false)?;
    let line = rows[0].to_jsonl_line();
    item(
        "JSONL row bytes frozen",
        line == frozen,
        line.clone(),
        &mut out,
    )?;
    let reparsed = parse_jsonl_line(&line)?;
    item(
        "JSONL round-trip",
        reparsed == rows[0],
        String::new(),
        &mut out,
    )?;
    let mut csv_buf = Vec::new();
    write_csv(&rows, &mut csv_buf)?;
    let back = read_csv(csv_buf.as_slice())?;
    item("CSV round-trip", back == rows, String::new(), &mut out)?;

    writeln!(out, "selftest: {} items, {} failures", 13, failures)?;
    Ok(if failures == 0 { 0 } else { 1 })
}

/// Execute a validated config; the exit code contract is the module contract.
pub fn run(cfg: &RunConfig) -> Result<u8> {
    match &cfg.command {
        Cmd::List => run_list(cfg),
        Cmd::Verify { point } => run_verify(cfg, *point),
        Cmd::Sweep => run_sweep(cfg),
        Cmd::Search { n_max } => run_search(cfg, *n_max),
        Cmd::Selftest => {
            let stdout = io::stdout();
            run_selftest(stdout.lock())
        }
    }
}

fn usage_exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownClaim(_) | Error::DomainViolation(_) | Error::Parse(_) => 64,
        _ => 70,
    }
}

/// Binary entry point: parse, run, map errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match cli.into_config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(64);
        }
    };
    match run(&cfg) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(usage_exit_code(&e))
        }
    }
}
