//! `knotinv`: knot invariants, family scans and property checks from the
//! command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
//! cap exceeded.

mod render;

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotinv::diagram::parse_pd_line;
use knotinv::families::{generate, FamilySpec, TwistFamily};
use knotinv::invariants::Limits;
use knotinv::obstructions::{analyze_family_with, analyze_with, AnalysisError, InvariantReport};
use knotinv::verify::{run_suite, Suite, SuiteParams};
use rayon::prelude::*;

const DEFAULT_MAX_POINTS: u64 = 10_000;

#[derive(Parser)]
#[command(name = "knotinv", version, about = "Exact knot invariants and cosmetic surgery obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report for one knot, given as a family spec or a PD code line.
    Invariants {
        /// `kt:r,n`, `conway:r,n`, `torus2:k`, `pretzel4:p1,p2,p3,p4`, or `[name:] PD[X(...), ...]`.
        input: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Print the diagram as a PD code line instead of the report.
        #[arg(long)]
        emit_pd: bool,
    },
    /// Reports for every (r, n) in a grid of one twist family.
    Scan {
        #[arg(long)]
        family: TwistFamily,
        /// Inclusive range `a..b` (or a single value).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        r: RangeInclusive<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        n: RangeInclusive<i64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Write the table here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Largest number of grid points accepted.
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: u64,
    },
    /// Run a property suite over a grid; `all` runs every suite.
    Verify {
        /// lemma-v3, hoste, skein-step, mutation, symmetry, mirror, triviality, obstruction, torus or all.
        suite: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-5..5")]
        r: RangeInclusive<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-3..3")]
        n: RangeInclusive<i64>,
        /// Torus suite: k for T(2, 2k+1) and T(2, 2k).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "0..8")]
        k: RangeInclusive<i64>,
        /// Print only failing cases and the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Reports for every PD code line of a file.
    Batch {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Stop with exit code 2 on the first malformed line.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let code = match &e {
            e if e.is_resource_cap() => 3,
            AnalysisError::Inconsistent { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("expected an integer or a range `a..b`, got `{s}`");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    let limits = Limits::from_env();
    match command {
        Command::Invariants { input, format, emit_pd } => invariants(&input, format, emit_pd, &limits),
        Command::Scan { family, r, n, format, output, max_points } => {
            scan(family, r, n, format, output, max_points, &limits)
        }
        Command::Verify { suite, r, n, k, quiet } => verify(&suite, SuiteParams { r, n, k, limits }, quiet),
        Command::Batch { path, format, strict } => batch(&path, format, strict, &limits),
    }
}

enum Output {
    Report(Box<InvariantReport>),
    PdLine(String),
}

fn invariants(input: &str, format: ReportFormat, emit_pd: bool, limits: &Limits) -> Result<u8, Failure> {
    let input = input.trim();
    let output = if input.contains("PD[") {
        let named = parse_pd_line(input).map_err(|e| Failure::input(format!("column {}: {}", e.column, e.message)))?;
        let name = named.name.unwrap_or_else(|| "input".to_string());
        if emit_pd {
            Output::PdLine(format!("{name}: {}", named.pd.canonical()))
        } else {
            Output::Report(Box::new(analyze_with(&named.pd, &name, limits)?))
        }
    } else {
        let spec: FamilySpec = input.parse().map_err(|e| Failure::input(format!("{e}")))?;
        if emit_pd {
            Output::PdLine(format!("{spec}: {}", generate(&spec).map_err(|e| Failure::input(e.to_string()))?))
        } else {
            Output::Report(Box::new(analyze_family_with(&spec, limits)?))
        }
    };
    let mut out = io::stdout().lock();
    match output {
        Output::PdLine(line) => writeln!(out, "{line}")?,
        Output::Report(report) => match format {
            ReportFormat::Text => write!(out, "{}", render::text(&report))?,
            ReportFormat::Json => writeln!(out, "{}", render::json(&report))?,
        },
    }
    Ok(0)
}

fn scan(
    family: TwistFamily,
    r: RangeInclusive<i64>,
    n: RangeInclusive<i64>,
    format: TableFormat,
    output: Option<PathBuf>,
    max_points: u64,
    limits: &Limits,
) -> Result<u8, Failure> {
    let points = (r.end() - r.start() + 1) as u64 * (n.end() - n.start() + 1) as u64;
    if points > max_points {
        return Err(Failure {
            code: 3,
            message: format!("grid has {points} points, above the limit of {max_points} (raise it with --max-points)"),
        });
    }
    let grid: Vec<(i64, i64)> = r.flat_map(|r| n.clone().map(move |n| (r, n))).collect();
    let reports = grid
        .into_par_iter()
        .map(|(r, n)| analyze_family_with(&family.spec(r, n), limits))
        .collect::<Result<Vec<_>, _>>()?;
    let table = render::table(&reports, format).map_err(|e| Failure::input(e.to_string()))?;
    emit(output, &table)?;
    eprintln!("{}", render::summary(&reports));
    Ok(0)
}

fn emit(output: Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(&path, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => Ok(io::stdout().lock().write_all(content.as_bytes())?),
    }
}

fn verify(which: &str, params: SuiteParams, quiet: bool) -> Result<u8, Failure> {
    let suites: Vec<Suite> = if which == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![which.parse().map_err(Failure::input)?]
    };
    let mut out = io::stdout().lock();
    let mut all_passed = true;
    for suite in suites {
        let report = run_suite(suite, &params)?;
        for case in &report.cases {
            if case.passed {
                if !quiet {
                    writeln!(out, "PASS {suite} {}", case.case)?;
                }
            } else {
                writeln!(out, "FAIL {suite} {}: {}", case.case, case.detail)?;
                writeln!(out, "  reproduce: knotinv verify {suite} {}", reproduce_args(&case.case))?;
            }
        }
        let status = if report.all_passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{suite}: {status}, {}/{}", report.passed(), report.cases.len())?;
        all_passed &= report.all_passed();
    }
    Ok(if all_passed { 0 } else { 1 })
}

/// `r=2 n=-1` becomes `--r 2 --n -1`.
fn reproduce_args(case: &str) -> String {
    case.split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| format!("--{k} {v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn batch(path: &PathBuf, format: TableFormat, strict: bool, limits: &Limits) -> Result<u8, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let mut inputs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match parse_pd_line(line) {
            Ok(named) => inputs.push((lineno, named.name.unwrap_or_else(|| format!("line {lineno}")), named.pd)),
            Err(e) => {
                let message = format!("{}: line {lineno}, column {}: {}", path.display(), e.column, e.message);
                if strict {
                    return Err(Failure::input(message));
                }
                eprintln!("warning: {message} (skipped)");
            }
        }
    }
    let results: Vec<_> = inputs
        .into_par_iter()
        .map(|(lineno, name, pd)| (lineno, analyze_with(&pd, &name, limits)))
        .collect();
    let mut reports = Vec::new();
    for (lineno, result) in results {
        match result {
            Ok(report) => reports.push(report),
            Err(e) if e.is_resource_cap() || strict => {
                return Err(Failure { message: format!("line {lineno}: {e}"), ..Failure::from(e) });
            }
            Err(e) => eprintln!("warning: {}: line {lineno}: {e} (skipped)", path.display()),
        }
    }
    let table = render::table(&reports, format).map_err(|e| Failure::input(e.to_string()))?;
    io::stdout().lock().write_all(table.as_bytes())?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduce_line_for_a_case() {
        assert_eq!(reproduce_args("r=2 n=-1"), "--r 2 --n -1");
        assert_eq!(reproduce_args("k=3"), "--k 3");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-5..5").unwrap(), -5..=5);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("2..1").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
