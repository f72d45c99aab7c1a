//! Command line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cycles::{
    binary_form_from_roots, cycle_hilbert, express_in_point_basis, fake_point_poly, is_fake_linear, join_hypersurface,
    join_poly, point_poly, CycleSpec,
};
use crate::error::{Error, Result};
use crate::field::{CycloNumber, Rational};
use crate::fixtures::{verify_all, verify_fixture, verify_theorem4, FixtureReport, Theorem4Params};
use crate::jacobian::HypersurfaceSpec;
use crate::problem::Problem;
use crate::qform::theorem6_check;
use crate::report::run_all;
use crate::text::{parse_number_at, parse_rational_at};

pub const EXIT_MISMATCH: i32 = 5;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  parse error (problem file, polynomial or number syntax, command line)
  3  hypersurface is not smooth
  4  domain error (unknown fixture, root mismatch, zero class, i/o, ...)
  5  fixture mismatch";

#[derive(Parser, Debug)]
#[command(name = "hodge-join", version, about = "Exact Jacobian-ring computations for Hodge cycles", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the tasks of a problem file, one JSON report per task.
    #[command(after_help = EXIT_CODES)]
    Compute(ComputeArgs),
    /// Recompute a published fixture (or `all`) and compare exactly.
    #[command(after_help = EXIT_CODES)]
    Verify(VerifyArgs),
    /// Tabulate fake point cycles of a binary form with rational roots.
    #[command(after_help = EXIT_CODES)]
    ExploreFake(ExploreArgs),
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub file: PathBuf,
    /// Write `task-NNN.json` files here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run tasks concurrently; output keeps task order.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Fixture id or `all`.
    pub fixture: String,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub alpha0: Option<u32>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub rcheck: Option<String>,
}

#[derive(Args, Debug)]
pub struct ExploreArgs {
    #[arg(long)]
    pub d: u32,
    /// Comma-separated distinct rational roots.
    #[arg(long, allow_hyphen_values = true)]
    pub roots: String,
    /// Comma-separated parameters c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// Also assemble the join of n/2+1 copies.
    #[arg(long)]
    pub join: bool,
    #[arg(long, requires = "join")]
    pub n: Option<usize>,
    /// Tab-separated table instead of JSON lines.
    #[arg(long)]
    pub table: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Compute(a) => compute(&a, out),
        Command::Verify(a) => verify(&a, out, err),
        Command::ExploreFake(a) => explore(&a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let src = fs::read_to_string(&args.file).map_err(|e| Error::Io(format!("{}: {e}", args.file.display())))?;
    let problem = Problem::parse(&src)?;
    let reports = run_all(&problem, args.parallel);
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(io)?;
        for r in &reports {
            write_report(dir, r.task.index, &r.to_json_line())?;
        }
    } else {
        for r in &reports {
            writeln!(out, "{}", r.to_json_line()).map_err(io)?;
        }
    }
    Ok(reports.iter().map(|r| r.exit_code()).find(|&c| c != 0).unwrap_or(0))
}

fn write_report(dir: &Path, index: usize, line: &str) -> Result<()> {
    let path = dir.join(format!("task-{index:03}.json"));
    fs::write(&path, format!("{line}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let overrides = args.d.is_some() || args.alpha0.is_some() || args.r.is_some() || args.rcheck.is_some();
    let reports: Vec<(String, Result<FixtureReport>)> = if overrides {
        if args.fixture != "thm-1.4" {
            return Err(Error::Domain("--d/--alpha0/--r/--rcheck apply to thm-1.4 only".into()));
        }
        let rat = |s: &Option<String>, default: i64| match s {
            Some(s) => parse_rational_at(s, 1, 0),
            None => Ok(Rational::from_integer(default)),
        };
        let params = Theorem4Params {
            d: args.d.unwrap_or(4),
            alpha0: args.alpha0.unwrap_or(3),
            r: rat(&args.r, 1)?,
            rcheck: rat(&args.rcheck, 2)?,
        };
        vec![(args.fixture.clone(), verify_theorem4(Some(&params)))]
    } else if args.fixture == "all" {
        verify_all()
    } else {
        vec![(args.fixture.clone(), verify_fixture(&args.fixture))]
    };
    let mut code = 0;
    for (id, r) in reports {
        match r {
            Ok(report) => {
                writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes")).map_err(io)?;
                let _ = writeln!(err, "{} {id} ({:.0} ms)", if report.passed { "PASS" } else { "FAIL" }, report.elapsed_ms);
                for c in report.checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(err, "  failed: {}", c.name);
                }
                if !report.passed && code == 0 {
                    code = EXIT_MISMATCH;
                }
            }
            Err(e @ Error::UnknownFixture(_)) => return Err(e),
            Err(e) => {
                let _ = writeln!(err, "ERROR {id}: {e}");
                if code == 0 {
                    code = e.exit_code();
                }
            }
        }
    }
    Ok(code)
}

fn split_items(src: &str) -> Vec<(&str, usize)> {
    let mut items = Vec::new();
    let mut start = 0;
    for piece in src.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        items.push((piece.trim(), start + lead));
        start += piece.len() + 1;
    }
    items
}

/// Point cycle when F(c, 1) = 0, fake point cycle otherwise.
fn factor_cycle(fbin: &HypersurfaceSpec, c: &CycloNumber) -> Result<CycleSpec> {
    let value = fbin.f().evaluate(&[c.clone(), CycloNumber::one()])?;
    if value.is_zero() {
        return point_poly(fbin, c);
    }
    let q = c
        .is_rational()
        .ok_or_else(|| Error::Domain(format!("fake parameter {c} is not rational")))?;
    fake_point_poly(fbin, &q)
}

fn explore_row(fbin: &HypersurfaceSpec, roots: &[Rational], c: &CycloNumber) -> Result<Value> {
    let q = c
        .is_rational()
        .ok_or_else(|| Error::Domain(format!("fake parameter {c} is not rational")))?;
    let cycle = fake_point_poly(fbin, &q)?;
    let coefficients = express_in_point_basis(&cycle.poly, roots)?;
    let hilbert = cycle_hilbert(fbin, &cycle.poly)?;
    let verdict = is_fake_linear(fbin, &cycle.poly)?;
    Ok(json!({
        "c": c,
        "cycle": cycle.poly,
        "coefficients": coefficients,
        "hilbert": hilbert.values(),
        "verdict": verdict.verdict,
    }))
}

fn explore(args: &ExploreArgs, out: &mut dyn Write) -> Result<i32> {
    let roots = split_items(&args.roots)
        .into_iter()
        .map(|(s, col)| parse_rational_at(s, 1, col))
        .collect::<Result<Vec<_>>>()?;
    let cs = split_items(&args.c)
        .into_iter()
        .map(|(s, col)| parse_number_at(s, 1, col))
        .collect::<Result<Vec<_>>>()?;
    if roots.len() != args.d as usize {
        return Err(Error::Domain(format!("--d {} needs {} roots, got {}", args.d, args.d, roots.len())));
    }
    if cs.is_empty() {
        return Err(Error::Domain("--c needs at least one value".into()));
    }
    let fbin = HypersurfaceSpec::new(binary_form_from_roots(&roots))?;
    let mut rows = Vec::new();
    for c in &cs {
        rows.push(match explore_row(&fbin, &roots, c) {
            Ok(v) => v,
            Err(e) => json!({ "c": c, "error": e.to_string(), "exit_code": e.exit_code() }),
        });
    }
    if args.join {
        let n = args.n.unwrap_or(2 * (cs.len().max(2) - 1));
        if n % 2 != 0 {
            return Err(Error::Domain(format!("n = {n} must be even")));
        }
        let k = n / 2 + 1;
        let params: Vec<CycloNumber> = (0..k).map(|i| cs[i % cs.len()].clone()).collect();
        let mut spec = fbin.clone();
        let mut cycle = factor_cycle(&fbin, &params[0])?;
        for c in &params[1..] {
            spec = join_hypersurface(&spec, &fbin)?;
            cycle = join_poly(&cycle, &factor_cycle(&fbin, c)?)?;
        }
        let hilbert = cycle_hilbert(&spec, &cycle.poly)?;
        let factors = vec![fbin.clone(); k];
        let certificate = theorem6_check(&factors, &params)?;
        rows.push(json!({
            "join": { "n": n, "c": params },
            "hilbert": hilbert.values(),
            "verdict": certificate.join_type,
            "certificate": certificate,
        }));
    }
    for row in &rows {
        let line = if args.table { table_row(row) } else { row.to_string() };
        writeln!(out, "{line}").map_err(io)?;
    }
    Ok(0)
}

fn table_row(row: &Value) -> String {
    let field = |k: &str| match &row[k] {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    if row.get("join").is_some() {
        format!("join\t{}\t{}\t{}", row["join"]["n"], field("hilbert"), field("verdict"))
    } else if row.get("error").is_some() {
        format!("{}\terror\t{}", field("c"), field("error"))
    } else {
        format!("{}\t{}\t{}\t{}", field("c"), field("coefficients"), field("hilbert"), field("verdict"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn explore_rows() {
        let (code, out, _) = run_args(&["hodge-join", "explore-fake", "--d", "3", "--roots", "0,1,-1", "--c", "2,1"]);
        assert_eq!(code, 0);
        let rows: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(rows[0]["hilbert"], json!([1, 1]));
        assert_eq!(rows[0]["verdict"], json!("FakeLinear"));
        assert!(rows[1]["error"].as_str().unwrap().contains("is a root"));
    }

    #[test]
    fn explore_join() {
        let (code, out, _) = run_args(&[
            "hodge-join", "explore-fake", "--d", "3", "--roots", "0,1,-1", "--c", "2", "--join", "--n", "2",
        ]);
        assert_eq!(code, 0);
        let last: Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
        assert_eq!(last["hilbert"], json!([1, 2, 1]));
        assert_eq!(last["verdict"], json!("FakeLinear"));
    }

    #[test]
    fn verify_single_theorem4() {
        let (code, out, _) = run_args(&[
            "hodge-join", "verify", "thm-1.4", "--d", "4", "--alpha0", "3", "--r", "1", "--rcheck", "1",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["passed"], json!(true));
    }

    #[test]
    fn unknown_fixture_and_bad_args() {
        assert_eq!(run_args(&["hodge-join", "verify", "nope"]).0, 4);
        assert_eq!(run_args(&["hodge-join", "frobnicate"]).0, 2);
        assert_eq!(run_args(&["hodge-join", "explore-fake", "--d", "3", "--roots", "0,1,x", "--c", "2"]).0, 2);
    }
}
