//! Command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use algind_core::casebook::{list_cases, run_case, CaseInputs};
use algind_core::criterion::{check, job_jacobian, CheckOptions};
use algind_core::series::Precision;
use algind_core::zerotest::DEFAULT_BUDGET;
use algind_core::{Error, Result};
use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::eval::{eval_series, SERIES};
use crate::job::parse_job;
use crate::report;

pub const DEFAULT_PREC: u32 = 128;

#[derive(Parser, Debug)]
#[command(name = "algind", version, about = "Jacobian criteria for algebraic independence, with certified numerics")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized zero test (overrides the job's seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of sample points for the randomized zero test.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a job file with the matching criterion.
    Check { job: PathBuf },
    /// Print the symbolic Jacobian matrix and its determinant.
    Jacobian { job: PathBuf },
    /// Evaluate a series or constant to certified precision.
    #[command(after_help = series_help())]
    Eval {
        series: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: u32,
    },
    /// Built-in worked examples.
    Case {
        #[command(subcommand)]
        action: CaseAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CaseAction {
    List,
    Run {
        id: String,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: u32,
        /// File holding one polynomial; repeat for f1, f2.
        #[arg(long = "poly")]
        polys: Vec<PathBuf>,
    },
}

fn series_help() -> String {
    let mut s = String::from("Series:\n");
    for (name, params) in SERIES {
        s.push_str(&format!("  {name} {params}\n"));
    }
    s
}

/// What a run printed and how it should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Validation(_) | Error::Structural(_) | Error::Domain(_) | Error::Arithmetic(_) => 2,
        Error::Precision(_) | Error::Undecided(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read '{}': {e}", path.display())))
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    } else {
        text
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    let opts = CheckOptions { seed: cli.seed, budget: cli.budget };
    let start = Instant::now();
    match &cli.command {
        Command::Check { job } => {
            let job = parse_job(&read(job)?)?;
            let cert = check(&job, &opts)?;
            let bits = job.precision_bits;
            Ok(render(cli.json, report::check_json(&cert, bits, elapsed_ms(start)), report::check_text(&cert, bits)))
        }
        Command::Jacobian { job } => {
            let job = parse_job(&read(job)?)?;
            let (mat, det) = job_jacobian(&job)?;
            Ok(render(
                cli.json,
                report::jacobian_json(&job.digest(), &mat, &det, elapsed_ms(start)),
                report::jacobian_text(&mat, &det),
            ))
        }
        Command::Eval { series, params, prec } => {
            let p = Precision::new(*prec)?;
            let value = eval_series(series, params, p)?;
            Ok(render(
                cli.json,
                report::eval_json(series, params, *prec, &value, elapsed_ms(start)),
                report::eval_text(series, params, *prec, &value),
            ))
        }
        Command::Case { action: CaseAction::List } => {
            Ok(render(cli.json, report::case_list_json(list_cases()), report::case_list_text(list_cases())))
        }
        Command::Case { action: CaseAction::Run { id, prec, polys } } => {
            let p = Precision::new(*prec)?;
            let polynomials = polys.iter().map(|f| read(f).map(|t| t.trim().to_string())).collect::<Result<_>>()?;
            let r = run_case(id, p, &CaseInputs { polynomials, options: opts })?;
            let seed = cli.seed.unwrap_or(0);
            Ok(render(cli.json, report::case_json(&r, seed, elapsed_ms(start)), report::case_text(&r)))
        }
    }
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let mut s = serde_json::to_string_pretty(&report::error_json(&e, code)).expect("serializable");
                s.push('\n');
                Outcome { code, stdout: s, stderr: format!("error: {e}\n") }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        }
    }
}
