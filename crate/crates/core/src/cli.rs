//! Command-line front end for the `bohr` binary.
//!
//! Exit codes: 0 pass, 1 violation (or no sharpness witness), 2 no radius,
//! 3 hypotheses unmet, 4 input error, 5 internal numerical inconsistency.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::functionals::{
    bohr_functional, bombieri_bound, carlson_residuals, derivative_majorant, majorant, norm_sq,
    quadratic_weighted_sum, refined_functional, refined_remainder, FunctionalValue, QuadraticWeight,
};
use crate::radii::{self, RadiusProblem, SolveOptions, DEFAULT_SCAN_STEP, DEFAULT_TOL, TABLE1};
use crate::verify::{self, CheckConfig, Lambda, MajorizationMode, Outcome, VerificationReport};
use crate::{Error, PowerSeries, Result, WeightSequence};

/// Environment variable naming the default directory for output files.
pub const OUTPUT_DIR_ENV: &str = "BOHR_OUTPUT_DIR";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_NO_RADIUS: i32 = 2;
pub const EXIT_SKIPPED: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_TOOLING: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "bohr", version, about = "Weighted Bohr radii and inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a radius equation.
    Radius(RadiusArgs),
    /// Roots of p(1-r) = 2r(1-r^n) as a CSV table.
    Table1(Table1Args),
    /// Run a seeded verification check.
    Verify(VerifyArgs),
    /// Evaluate a functional on a coefficient file.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Equation {
    General,
    Corollary,
    Power,
    Harmonic,
    SchwarzDerivative,
    Odd,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    #[arg(long, value_enum, default_value = "general")]
    equation: Equation,
    /// geometric, power:<alpha>, truncated:<n>, a JSON descriptor or a path to one.
    #[arg(long, default_value = "geometric")]
    weights: String,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "K", default_value_t = 1.0)]
    big_k: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_SCAN_STEP)]
    scan_step: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Table1Args {
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// A single n or an inclusive range such as 2-15.
    #[arg(long, default_value = "2-15")]
    n: String,
    /// Compare against the published table; mismatches above 1e-6 exit with 1.
    #[arg(long)]
    compare_paper: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    Theorem1,
    Sharpness,
    Quasi,
    WeightedQuasi,
    Goluzin,
    Harmonic,
    Derivative,
    DerivativeMajorization,
    Odd,
    Bombieri,
    Carlson,
    Table1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Subordination,
    Modulus,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: CheckName,
    #[arg(long, default_value = "geometric")]
    weights: String,
    /// Defaults to 1; for `table1`, all entries when omitted.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long = "K", default_value_t = 1.0)]
    big_k: f64,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long, default_value = "geometric")]
    psi: String,
    /// `carlson` or a nonnegative constant.
    #[arg(long, default_value = "carlson")]
    lambda: String,
    #[arg(long, value_enum, default_value = "subordination")]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
    order: usize,
    /// Report path; defaults to `$BOHR_OUTPUT_DIR/<check>.json`, else stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FunctionalName {
    Majorant,
    RefinedRemainder,
    NormSq,
    Bohr,
    Refined,
    Derivative,
    Quadratic,
    BombieriBound,
    Carlson,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    functional: FunctionalName,
    /// Coefficient file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long = "N", default_value_t = 0)]
    big_n: usize,
    #[arg(long, default_value = "geometric")]
    weights: String,
    #[arg(long, default_value = "geometric")]
    psi: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Parses a weight descriptor: `geometric`, `power:<alpha>`, `truncated:<n>`,
/// inline JSON, or a path to a JSON file.
pub fn parse_weights(s: &str) -> Result<WeightSequence> {
    let s = s.trim();
    if s == "geometric" {
        return Ok(WeightSequence::geometric());
    }
    if let Some(a) = s.strip_prefix("power:") {
        let alpha = a.parse().map_err(|_| Error::Input(format!("bad exponent in {s:?}")))?;
        return WeightSequence::power(alpha);
    }
    if let Some(n) = s.strip_prefix("truncated:") {
        let n = n.parse().map_err(|_| Error::Input(format!("bad length in {s:?}")))?;
        return WeightSequence::truncated_geometric(n);
    }
    if s.starts_with('{') {
        return WeightSequence::from_json(s);
    }
    let path = Path::new(s);
    if path.is_file() {
        return WeightSequence::from_json(&std::fs::read_to_string(path)?);
    }
    Err(Error::Input(format!("unrecognised weight descriptor {s:?}")))
}

fn parse_lambda(s: &str) -> Result<Lambda> {
    if s == "carlson" {
        return Ok(Lambda::Carlson);
    }
    s.parse()
        .map(Lambda::Constant)
        .map_err(|_| Error::Input(format!("λ must be `carlson` or a number, got {s:?}")))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("bad n range {s:?}"));
    let (a, b) = match s.split_once('-') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a < 1 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoRadius(_) => EXIT_NO_RADIUS,
        Error::Precondition(_) => EXIT_SKIPPED,
        Error::Tooling(_) => EXIT_TOOLING,
        _ => EXIT_INPUT,
    }
}

fn outcome_code(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Pass => EXIT_PASS,
        Outcome::Violation | Outcome::NoWitness => EXIT_VIOLATION,
        Outcome::Skipped => EXIT_SKIPPED,
    }
}

/// Relative paths land in `$BOHR_OUTPUT_DIR` when it is set.
fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => {
            let path = resolve(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_PASS
            };
        }
    };
    let result = match cli.command {
        Command::Radius(a) => cmd_radius(a, out),
        Command::Table1(a) => cmd_table1(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        // A missing tag or too short a prefix is a defect of the input file here.
        Command::Eval(a) => cmd_eval(a, out).map_err(|e| match e {
            Error::Precondition(m) | Error::Capability(m) => Error::Input(m),
            e => e,
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "bohr: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Debug, Serialize)]
struct RadiusReport {
    equation: &'static str,
    weights: Option<WeightSequence>,
    p: Option<f64>,
    radius: f64,
    residual: f64,
    crossing: bool,
    closed_form: Option<f64>,
    discrepancy: Option<f64>,
}

fn cmd_radius(a: RadiusArgs, out: &mut dyn Write) -> Result<i32> {
    let need = |name: &str| Error::Input(format!("--equation {name} needs --{name}"));
    let weights = || parse_weights(&a.weights);
    let problem = match a.equation {
        Equation::General => RadiusProblem::General { w: weights()?, p: a.p },
        Equation::Corollary => RadiusProblem::Corollary {
            n: a.n.ok_or_else(|| Error::Input("--equation corollary needs --n".into()))?,
            p: a.p,
        },
        Equation::Power => RadiusProblem::PowerAlpha {
            alpha: a.alpha.ok_or_else(|| need("alpha"))?,
            p: a.p,
        },
        Equation::Harmonic => {
            let w = weights()?;
            let k = radii::dilatation(a.big_k)?;
            // Validates the monotonicity hypothesis before solving with the caller's options.
            radii::radius_harmonic(&w, a.p, k)?;
            RadiusProblem::Harmonic { w, p: a.p, k }
        }
        Equation::SchwarzDerivative => RadiusProblem::SchwarzDerivative { w: weights()? },
        Equation::Odd => RadiusProblem::Odd { w: weights()? },
    };
    let opts = SolveOptions {
        tol: a.tol,
        scan_step: a.scan_step,
        ..Default::default()
    };
    let sol = radii::solve_with(&problem, opts)?;
    let closed = problem.closed_form();
    let (w, p) = match &problem {
        RadiusProblem::General { w, p } | RadiusProblem::Harmonic { w, p, .. } => (Some(w.clone()), Some(*p)),
        RadiusProblem::Corollary { p, .. } | RadiusProblem::PowerAlpha { p, .. } => (None, Some(*p)),
        RadiusProblem::SchwarzDerivative { w } | RadiusProblem::Odd { w } => (Some(w.clone()), None),
    };
    let report = RadiusReport {
        equation: problem.name(),
        weights: w,
        p,
        radius: sol.radius,
        residual: sol.residual.abs(),
        crossing: sol.crossing,
        closed_form: closed,
        discrepancy: closed.map(|c| (c - sol.radius).abs()),
    };
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
            format!(
                "equation,R,residual,closed_form,discrepancy\n{},{:.12},{:e},{},{}\n",
                report.equation,
                report.radius,
                report.residual,
                opt(report.closed_form),
                opt(report.discrepancy)
            )
        }
        Format::Text => {
            let mut s = format!("equation: {}\n", report.equation);
            if let Some(w) = &report.weights {
                s += &format!("weights: {w}\n");
            }
            s += &format!("radius: {:.12}\nresidual: {:e}\n", report.radius, report.residual);
            if !report.crossing {
                s += "note: G touches zero without changing sign\n";
            }
            if let (Some(c), Some(d)) = (report.closed_form, report.discrepancy) {
                s += &format!("closed_form: {c:.12}\ndiscrepancy: {d:e}\n");
            }
            s
        }
    };
    emit(&text, a.output.as_deref(), out)?;
    Ok(EXIT_PASS)
}

/// Rows `(n, R_n(p))`.
pub fn table1_rows(p: f64, n_lo: usize, n_hi: usize) -> Result<Vec<(usize, f64)>> {
    (n_lo..=n_hi).map(|n| Ok((n, radii::radius_corollary(n, p)?))).collect()
}

/// CSV with header `n,R`; six decimals. Binary64 values cannot sit exactly on a
/// six-decimal tie, so correctly rounded formatting is also half-to-even.
pub fn table1_csv(rows: &[(usize, f64)]) -> String {
    let mut s = String::from("n,R\n");
    for (n, r) in rows {
        s += &format!("{n},{r:.6}\n");
    }
    s
}

fn cmd_table1(a: Table1Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (lo, hi) = parse_range(&a.n)?;
    let rows = table1_rows(a.p, lo, hi)?;
    emit(&table1_csv(&rows), a.output.as_deref(), out)?;
    if !a.compare_paper {
        return Ok(EXIT_PASS);
    }
    let mut compared = 0;
    let mut code = EXIT_PASS;
    for &(n, r) in &rows {
        if let Some(&(_, _, printed)) = TABLE1.iter().find(|(tp, tn, _)| *tp == a.p && *tn == n) {
            compared += 1;
            let diff = (r - printed).abs();
            if diff > verify::TABLE_TOLERANCE {
                writeln!(err, "mismatch at n = {n}: computed {r:.9}, published {printed:.6}, |diff| = {diff:e}")?;
                code = EXIT_VIOLATION;
            }
        }
    }
    if compared == 0 {
        return Err(Error::Input(format!("no published entries for p = {} and n in {lo}..={hi}", a.p)));
    }
    writeln!(err, "compared {compared} published entries")?;
    Ok(code)
}

fn run_check(a: &VerifyArgs) -> Result<VerificationReport> {
    let cfg = CheckConfig {
        samples: a.samples,
        seed: a.seed,
        order: a.order,
        ..Default::default()
    };
    let p = a.p.unwrap_or(1.0);
    let w = || parse_weights(&a.weights);
    match a.check {
        CheckName::Theorem1 => verify::check_theorem1(&w()?, p, &cfg),
        CheckName::Sharpness => verify::probe_sharpness(&w()?, p, a.eps, &cfg),
        CheckName::Quasi => verify::check_quasi_majorant(&w()?, &cfg),
        CheckName::WeightedQuasi => {
            verify::check_weighted_quasi(&w()?, QuadraticWeight::parse(&a.psi)?, parse_lambda(&a.lambda)?, &cfg)
        }
        CheckName::Goluzin => verify::check_goluzin(QuadraticWeight::parse(&a.psi)?, &cfg),
        CheckName::Harmonic => verify::check_harmonic(&w()?, p, a.big_k, &cfg),
        CheckName::Derivative => verify::check_derivative_bohr(&w()?, &cfg),
        CheckName::DerivativeMajorization => {
            let mode = match a.mode {
                Mode::Subordination => MajorizationMode::Subordination,
                Mode::Modulus => MajorizationMode::Modulus,
            };
            verify::check_derivative_majorization(&w()?, mode, &cfg)
        }
        CheckName::Odd => verify::check_odd_majorant(&w()?, &cfg),
        CheckName::Bombieri => verify::check_bombieri(&cfg),
        CheckName::Carlson => verify::check_carlson(&cfg),
        CheckName::Table1 => verify::check_table1(a.p),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let report = run_check(&a)?;
    let json = report.to_json() + "\n";
    let target = a.output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|_| PathBuf::from(format!("{}.json", report.check)))
    });
    match target {
        Some(path) => {
            emit(&json, Some(&path), out)?;
            writeln!(out, "{}", summary(&report))?;
        }
        None => out.write_all(json.as_bytes())?,
    }
    Ok(outcome_code(report.outcome))
}

/// One-line human summary of a report.
pub fn summary(r: &VerificationReport) -> String {
    match r.outcome {
        Outcome::Skipped => format!("{}: skipped ({})", r.check, r.skipped.as_deref().unwrap_or("")),
        Outcome::Pass if !r.witnesses.is_empty() && r.max_residual.is_none() => {
            format!("{}: pass, {} witnesses", r.check, r.witnesses.len())
        }
        _ => format!(
            "{}: {}, {} samples, {} violations, {} witnesses, max residual {}",
            r.check,
            match r.outcome {
                Outcome::Pass => "pass",
                Outcome::Violation => "violation",
                Outcome::NoWitness => "no witness",
                Outcome::Skipped => unreachable!(),
            },
            r.samples,
            r.violations.len(),
            r.witnesses.len(),
            r.max_residual.map(|x| format!("{x:e}")).unwrap_or_else(|| "n/a".into())
        ),
    }
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let need_r = || a.r.ok_or_else(|| Error::Input("--r is required".into()));
    let input = || -> Result<PowerSeries> {
        let path = a.input.as_ref().ok_or_else(|| Error::Input("--input is required".into()))?;
        PowerSeries::load(path)
    };
    let w = parse_weights(&a.weights)?;
    let value = match a.functional {
        FunctionalName::BombieriBound => FunctionalValue {
            value: bombieri_bound(need_r()?)?,
            tail_bound: 0.0,
        },
        FunctionalName::Majorant => majorant(&input()?, &w, a.big_n, need_r()?)?,
        FunctionalName::RefinedRemainder => refined_remainder(&input()?, &w, need_r()?)?,
        FunctionalName::NormSq => norm_sq(&input()?, need_r()?)?,
        FunctionalName::Bohr => bohr_functional(&input()?, &w, a.p, need_r()?)?,
        FunctionalName::Refined => refined_functional(&input()?, &w, a.p, need_r()?)?,
        FunctionalName::Derivative => derivative_majorant(&input()?, &w, need_r()?)?,
        FunctionalName::Quadratic => quadratic_weighted_sum(&input()?, QuadraticWeight::parse(&a.psi)?, need_r()?)?,
        FunctionalName::Carlson => {
            let f = input()?;
            let n_max = f.order().saturating_sub(1) / 2;
            FunctionalValue {
                value: carlson_residuals(&f, n_max)?.min(),
                tail_bound: 0.0,
            }
        }
    };
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv => format!("value,tail_bound\n{:e},{:e}\n", value.value, value.tail_bound),
        Format::Text => format!("value: {}\ntail_bound: {:e}\n", value.value, value.tail_bound),
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bohr").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn weight_descriptors() {
        assert_eq!(parse_weights("geometric").unwrap(), WeightSequence::geometric());
        assert_eq!(parse_weights("power:2").unwrap(), WeightSequence::power(2.0).unwrap());
        assert_eq!(parse_weights("truncated:6").unwrap(), WeightSequence::truncated_geometric(6).unwrap());
        assert_eq!(
            parse_weights(r#"{"kind":"truncated_geometric","n":3}"#).unwrap(),
            WeightSequence::truncated_geometric(3).unwrap()
        );
        assert!(matches!(parse_weights("power:x"), Err(Error::Input(_))));
        assert!(matches!(parse_weights("nonsense"), Err(Error::Input(_))));
    }

    #[test]
    fn ranges_and_lambda() {
        assert_eq!(parse_range("2-15").unwrap(), (2, 15));
        assert_eq!(parse_range("9").unwrap(), (9, 9));
        assert!(parse_range("5-2").is_err());
        assert!(parse_range("0").is_err());
        assert_eq!(parse_lambda("carlson").unwrap(), Lambda::Carlson);
        assert_eq!(parse_lambda("0.5").unwrap(), Lambda::Constant(0.5));
        assert!(parse_lambda("big").is_err());
    }

    #[test]
    fn radius_examples() {
        let (code, out, _) = call(&["radius", "--weights", "geometric", "--p", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("radius: 0.333333333333"));
        let (_, out, _) = call(&["radius", "--equation", "schwarz-derivative"]);
        assert!(out.contains("radius: 0.183503"));
        let (_, out, _) = call(&["radius", "--equation", "harmonic", "--p", "1", "--K", "2"]);
        assert!(out.contains("radius: 0.272727"));
    }

    #[test]
    fn table1_examples() {
        let (code, out, _) = call(&["table1", "--p", "1", "--n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,R\n2,0.366025\n");
        let (_, out, _) = call(&["table1", "--p", "2", "--n", "9"]);
        assert_eq!(out, "n,R\n9,0.500493\n");
        let (_, out, _) = call(&["table1", "--p", "1", "--n", "15"]);
        assert_eq!(out, "n,R\n15,0.333333\n");
    }

    #[test]
    fn usage_errors_exit_four() {
        assert_eq!(call(&["radius", "--p"]).0, EXIT_INPUT);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(call(&["radius", "--equation", "power"]).0, EXIT_INPUT);
        assert_eq!(call(&["radius", "--p", "3"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn bombieri_eval() {
        let (code, out, _) = call(&["eval", "--functional", "bombieri-bound", "--r", "0.5"]);
        assert_eq!(code, 0);
        let v: f64 = out.lines().next().unwrap().trim_start_matches("value: ").parse().unwrap();
        assert!((v - 2.0 * (3.0 - 6f64.sqrt())).abs() < 1e-12);
    }
}
