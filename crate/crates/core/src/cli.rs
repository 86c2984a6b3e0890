//! Command-line surface. [`run`] parses arguments, writes the rendered
//! result to `--out` or the given writer, and returns the exit code:
//! 0 pass, 1 verification failure, 2 usage, 3 non-stabilization.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::connecting::{case_analysis, delta0_ker_coker, delta0_matrix, delta1_matrix, resolve_u, ConnectingMatrix};
use crate::error::{Error, Result};
use crate::spectral::render::{chart_svg, cross_check_text, page_json, page_text};
use crate::spectral::{collapse_check, cross_check, e2_filtration, CandidateStatus};
use crate::verify::{self, Suite, VerifyConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Show {
    Matrix,
    Kernel,
    Cokernel,
    Case,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Arith,
    Ring,
    Tmf,
    Delta,
    E2,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Arith => Suite::Arith,
            SuiteArg::Ring => Suite::Ring,
            SuiteArg::Tmf => Suite::Tmf,
            SuiteArg::Delta => Suite::Delta,
            SuiteArg::E2 => Suite::E2,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "q2bkss", version, about = "Exact 3-local E2-term of the Bousfield-Kan spectral sequence for Q(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Smallest internal degree.
    #[arg(long, global = true, default_value_t = -24, allow_negative_numbers = true)]
    pub t_min: i64,

    /// Largest internal degree.
    #[arg(long, global = true, default_value_t = 24, allow_negative_numbers = true)]
    pub t_max: i64,

    /// Truncation V of the 0-line basis; results are certified against V + 4.
    #[arg(long, global = true, env = "Q2BKSS_TRUNC", default_value_t = 24)]
    pub trunc: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Both computed pages and their cross-check.
    E2,
    /// Run invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// A connecting map on one sector.
    Delta {
        #[arg(long, default_value_t = 0)]
        eps: u8,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_enum, default_value_t = Show::Case)]
        show: Show,
    },
    /// The undetermined summand for m = 13 mod 27.
    ResolveU {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Chart of the filtration page with possible differentials.
    Chart,
}

/// Rendered output and whether the mathematical checks it carries passed.
struct Output {
    body: String,
    passed: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Precondition(_) => EXIT_USAGE,
        Error::NonStabilized { .. } => EXIT_UNSTABLE,
        _ => EXIT_FAIL,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli).and_then(|o| emit(&cli, stdout, &o.body).map(|_| o.passed)) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, stdout: &mut dyn Write, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn json_body(v: &serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn reject_svg(cli: &Cli, what: &str) -> Result<()> {
    if cli.format == Format::Svg {
        return Err(Error::Usage(format!("{what} has no svg rendering")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::E2 => e2(cli),
        Command::Verify { suite } => verify_cmd(cli, (*suite).into()),
        Command::Delta { eps, m, show } => delta(cli, *eps, *m, *show),
        Command::ResolveU { m } => resolve(cli, *m),
        Command::Chart => chart(cli),
    }
}

fn e2(cli: &Cli) -> Result<Output> {
    let (direct, filtration, report) = cross_check(cli.t_min, cli.t_max, cli.trunc)?;
    let body = match cli.format {
        Format::Text => format!("{}\n{}\n{}", page_text(&direct), page_text(&filtration), cross_check_text(&report)),
        Format::Json => json_body(&json!({
            "direct": page_json(&direct),
            "filtration": page_json(&filtration),
            "crossCheck": report,
        }))?,
        Format::Svg => chart_svg(&filtration),
    };
    Ok(Output { body, passed: report.passed() })
}

fn verify_cmd(cli: &Cli, suite: Suite) -> Result<Output> {
    reject_svg(cli, "verify")?;
    let config = VerifyConfig { trunc: cli.trunc, t_min: cli.t_min, t_max: cli.t_max, ..VerifyConfig::default() };
    let report = verify::run(suite, &config)?;
    let body = match cli.format {
        Format::Json => json_body(&serde_json::to_value(&report)?)?,
        _ => {
            let mut s = String::new();
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{mark} [{}] {}", c.suite, c.name);
                if !c.passed {
                    let _ = writeln!(s, "     {}", c.detail);
                }
            }
            let failed = report.failures().count();
            let _ = writeln!(s, "{} checks, {failed} failed", report.checks.len());
            s
        }
    };
    Ok(Output { body, passed: report.passed() })
}

fn matrix_text(cm: &ConnectingMatrix) -> String {
    let mut s = String::new();
    let modulus = cm.exponent.map_or("exact".to_string(), |k| format!("mod 3^{k}"));
    let _ = writeln!(s, "{:?} on (eps={}, m={}), V = {}, residues {modulus}", cm.map, cm.eps, cm.m, cm.trunc);
    let residues = cm.residues();
    for (j, col) in residues.col_labels.iter().enumerate() {
        let entries: Vec<String> = (0..residues.nrows())
            .filter_map(|i| {
                let x = residues.get(i, j);
                (!x.is_zero()).then(|| format!("{} {}", x, residues.row_labels[i]))
            })
            .collect();
        let rhs = if entries.is_empty() { "0".to_string() } else { entries.join(" + ") };
        let _ = writeln!(s, "  {col} -> {rhs}");
    }
    s
}

fn delta(cli: &Cli, eps: u8, m: i64, show: Show) -> Result<Output> {
    reject_svg(cli, "delta")?;
    if eps > 1 {
        return Err(Error::Usage(format!("eps must be 0 or 1, got {eps}")));
    }
    let v = cli.trunc;
    if (eps, m) == (0, 0) {
        // degree 0 carries δ⁰ as well as δ¹
        let (ker, coker) = delta0_ker_coker(v)?;
        let body = match (show, cli.format) {
            (Show::Matrix, Format::Json) => json_body(&json!({
                "delta0": delta0_matrix(v)?,
                "delta1": delta1_matrix(0, 0, v)?,
            }))?,
            (Show::Matrix, _) => format!("{}{}", matrix_text(&delta0_matrix(v)?), matrix_text(&delta1_matrix(0, 0, v)?)),
            (_, Format::Json) => json_body(&json!({ "kernel": ker, "cokernel": coker }))?,
            (_, _) => format!("ker delta0 = {ker}\ncoker delta0 = {}\n", coker.invariants()),
        };
        return Ok(Output { body, passed: true });
    }
    let report = case_analysis(eps, m, v)?;
    let body = match (show, cli.format) {
        (Show::Matrix, Format::Json) => json_body(&serde_json::to_value(delta1_matrix(eps, m, v)?)?)?,
        (Show::Matrix, _) => matrix_text(&delta1_matrix(eps, m, v)?),
        (Show::Kernel, Format::Json) => json_body(&json!({ "kernel": report.kernel, "u": report.u }))?,
        (Show::Kernel, _) => match &report.u {
            Some(_) => {
                let r = resolve_u(m, v)?;
                format!(
                    "ker delta1 = K'' + U^{}\n  K'' = {}\n  U = {}\n  ({})\n",
                    r.t,
                    r.k_double_prime.invariants(),
                    r.u,
                    r.certificate.detail
                )
            }
            None => format!("ker delta1 = {}\n  {}\n", report.kernel.invariants(), report.closed_kernel),
        },
        (Show::Cokernel, Format::Json) => json_body(&json!({ "cokernel": report.cokernel }))?,
        (Show::Cokernel, _) => {
            format!("coker delta1 = {}\n  {}\n", report.cokernel.invariants(), report.closed_cokernel)
        }
        (Show::Case, Format::Json) => json_body(&serde_json::to_value(&report)?)?,
        (Show::Case, _) => {
            let mut s = format!(
                "{} at (eps={eps}, m={m}), V = {v}: {}\n",
                report.case,
                if report.matches { "closed forms confirmed" } else { "MISMATCH" }
            );
            let _ = writeln!(s, "  kernel   = {}", report.closed_kernel);
            let _ = writeln!(s, "  cokernel = {}", report.closed_cokernel);
            if let Some(u) = &report.u {
                let _ = writeln!(s, "  U        = {u}");
            }
            for f in &report.failures {
                let _ = writeln!(s, "  failure: {f}");
            }
            s
        }
    };
    Ok(Output { body, passed: report.matches })
}

fn resolve(cli: &Cli, m: i64) -> Result<Output> {
    reject_svg(cli, "resolve-u")?;
    let r = resolve_u(m, cli.trunc)?;
    let body = match cli.format {
        Format::Json => json_body(&serde_json::to_value(&r)?)?,
        _ => format!(
            "U^{} = {}\n  = {}\nK'' = {}\ncertificate: {}\n",
            r.t,
            r.u.invariants(),
            r.u,
            r.k_double_prime.invariants(),
            r.certificate.detail
        ),
    };
    Ok(Output { body, passed: r.certificate.stable })
}

fn chart(cli: &Cli) -> Result<Output> {
    let page = e2_filtration(cli.t_min, cli.t_max, cli.trunc)?;
    let report = collapse_check(&page);
    let body = match cli.format {
        Format::Json => json_body(&serde_json::to_value(&report)?)?,
        Format::Text => {
            let mut s = String::new();
            for c in report.possibly_nonzero.iter().filter(|c| c.status == CandidateStatus::PossiblyNonzero) {
                let _ = writeln!(
                    s,
                    "d{}: (s={}, tTop={}) -> (s={}, tTop={})",
                    c.r, c.source.s, c.source.t_top, c.target.s, c.target.t_top
                );
            }
            let _ = writeln!(s, "{} candidates, collapse check {}", report.candidates, if report.passed() { "PASS" } else { "FAIL" });
            s
        }
        Format::Svg => chart_svg(&page),
    };
    Ok(Output { body, passed: report.passed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("q2bkss").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["e2", "--t-min", "5", "--t-max", "4", "--trunc", "8"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["resolve-u", "--m", "12", "--trunc", "8"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "--suite", "bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["e2", "--trunc", "4"]).0, EXIT_USAGE);
    }

    #[test]
    fn e2_json_has_unit_in_degree_zero() {
        let (code, out, _) = run_args(&["e2", "--t-min", "-8", "--t-max", "8", "--trunc", "8", "--format", "json"]);
        assert_eq!(code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let e = v["direct"]["entries"].as_array().unwrap().iter().find(|e| e["s"] == 0 && e["t"] == 0).unwrap();
        assert_eq!(e["summands"].as_array().unwrap().len(), 1);
        assert_eq!(e["summands"][0]["order"], "free");
        assert!(v["crossCheck"]["checks"].is_array());
    }

    #[test]
    fn delta_matrix_has_zero_column() {
        let (code, out, _) = run_args(&["delta", "--eps", "0", "--m", "3", "--show", "matrix", "--trunc", "8"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.lines().any(|l| l.trim_start().starts_with("C_1^3 -> 0")), "{out}");
    }
}
