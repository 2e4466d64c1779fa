//! `combquad` command-line front end.

mod demo;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use combquad_core::builder::{legendre_roots, random_rational_nodes, rationalize, rationalize_convergent};
use combquad_core::composite::{error_table, error_table_csv};
use combquad_core::families::{region_raster, RasterSpec};
use combquad_core::format::{built_rule_json, combine_report_json, exact_json, rule_from_str, rule_to_string};
use combquad_core::{
    build_combined, classify, combine_pair, least_squares_coeffs, mean_rule, parse_rational, BaseRule, BuilderInput, CompositeJob, Expr,
    NumericContext, QuadRule, Rational, Reference,
};
use serde_json::Value;

const EXPR_GRAMMAR: &str = "\
Integrand grammar (variable t):
  expr  := term (('+'|'-') term)*
  term  := unary (('*'|'/') unary)*
  unary := '-' unary | power
  power := atom ('^' integer)?
  atom  := number | 't' | 'pi' | ident '(' expr ')' | '(' expr ')'
Functions: sin, cos, exp, log, sqrt, atan. '+', '-', '*', '/' are left
associative; '^' binds tighter than unary minus. Whitespace is ignored.";

#[derive(Parser)]
#[command(name = "combquad", version, about = "Build, classify, combine and evaluate exact quadrature rules on [-1, 1]")]
#[command(
    after_help = "Exit status: 0 on success, 1 on a domain error, 2 on a usage error.\nCOMBQUAD_THREADS caps the number of worker threads."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of precision, principal moment, defect and sign of a rule file.
    Classify {
        #[arg(long)]
        rule: PathBuf,
        /// Print the classification as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Combine two rules of equal degree into one of higher degree.
    Combine {
        #[command(flatten)]
        pair: Pair,
        /// Recompute the coefficients by least squares and require agreement.
        #[arg(long)]
        least_squares_check: bool,
    },
    /// Mean rule of two rules of equal degree.
    Mean {
        #[command(flatten)]
        pair: Pair,
    },
    /// Combined rule of degree 2k+1 from k symmetric node pairs and a base rule.
    Build(BuildArgs),
    /// Composite error table for an integrand.
    #[command(after_help = EXPR_GRAMMAR)]
    Eval(EvalArgs),
    /// Rasterize the sign regions of a rule family.
    Regionmap(RegionArgs),
    /// Rationalized roots of the Legendre polynomial of degree n.
    LegendreNodes {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational_arg)]
        tol: Rational,
        #[arg(long, value_enum, default_value_t = Method::Simplest)]
        method: Method,
        /// Print every root instead of the positive ones.
        #[arg(long)]
        all: bool,
    },
    /// Recompute the worked examples and check their headline numbers.
    PiDemo,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Also write the combined rule to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Comma-separated positive nodes, e.g. 1/2,1/3,1/4.
    #[arg(long, value_delimiter = ',', value_parser = rational_arg, required_unless_present = "random", conflicts_with = "random")]
    nodes: Vec<Rational>,
    #[arg(long, value_enum, default_value_t = Base::Midpoint)]
    base: Base,
    #[arg(long, default_value = "")]
    label: String,
    /// Draw the nodes from a seeded generator.
    #[arg(long, requires_all = ["seed", "k"])]
    random: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_parser = rational_arg, default_value = "1/10000")]
    tol: Rational,
    /// Write the flattened rule to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    rule: PathBuf,
    #[arg(long)]
    expr: String,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    b: Rational,
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<u32>,
    /// Decimal digits.
    #[arg(long, default_value_t = 30)]
    prec: u32,
    /// `pi` or a rational or decimal reference value.
    #[arg(long = "ref")]
    reference: Option<String>,
    /// Evaluate in exact rational arithmetic.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Value of the fixed third node for the three-point slice.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    fix: Option<Rational>,
    #[arg(long)]
    grid: usize,
    #[arg(long, value_parser = rational_arg, default_value = "1/1000")]
    band: Rational,
    /// Output path; `.pgm` or `.csv`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Midpoint,
    Trapezoid,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    TwoPoint,
    ThreePointSlice,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Simplest,
    Convergent,
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(combquad_core::Error::from(e).to_string())
            }
        }
    )*};
}

domain_from!(
    combquad_core::RuleError,
    combquad_core::CombineError,
    combquad_core::FamilyError,
    combquad_core::BuildError,
    combquad_core::CompositeError,
    combquad_core::ExprError,
    combquad_core::FormatError
);

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| domain(format!("io: {}: {e}", path.display())))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| domain(format!("io: {}: {e}", path.display())))
}

fn load_rule(path: &Path) -> Result<QuadRule, Failure> {
    rule_from_str(&read(path)?).map_err(|e| domain(format!("format: {}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { rule, json } => {
            let c = classify(&load_rule(&rule)?)?;
            if json {
                print_json(&combquad_core::format::classification_json(&c));
            } else {
                println!("degree={} gamma={} sign={}", c.degree, c.defect, c.sign);
                println!(
                    "mu={} rule_moment={} gamma_decimal={}",
                    c.principal_moment,
                    c.rule_moment,
                    exact_json(&c.defect)["decimal"].as_str().unwrap_or("")
                );
                if c.not_exact_on_constants {
                    eprintln!("warning: rule is not exact for constants");
                }
            }
        }
        Command::Combine { pair, least_squares_check } => {
            let (a, b) = (load_rule(&pair.a)?, load_rule(&pair.b)?);
            let report = combine_pair(&a, &b)?;
            if least_squares_check {
                let (la, lb) = least_squares_coeffs(&a, &b)?;
                if (&la, &lb) != (report.alpha(), report.beta()) {
                    return Err(domain(format!(
                        "combine: least squares gave ({la}, {lb}), combination gave ({}, {})",
                        report.alpha(),
                        report.beta()
                    )));
                }
                eprintln!("least-squares check passed");
            }
            emit_report(&report, pair.out.as_deref())?;
        }
        Command::Mean { pair } => {
            let report = mean_rule(&load_rule(&pair.a)?, &load_rule(&pair.b)?)?;
            emit_report(&report, pair.out.as_deref())?;
        }
        Command::Build(args) => {
            let nodes = if args.random {
                random_rational_nodes(args.seed.unwrap_or_default(), args.k.unwrap_or_default(), &args.tol)?
            } else {
                args.nodes
            };
            let base = match args.base {
                Base::Midpoint => BaseRule::Midpoint,
                Base::Trapezoid => BaseRule::Trapezoid,
            };
            let built = build_combined(&BuilderInput::new(nodes, base, args.label)?)?;
            if let Some(w) = &built.warning {
                eprintln!("warning: {w}");
            }
            if let Some(out) = &args.out {
                write(out, rule_to_string(&built.flattened)?)?;
            }
            print_json(&built_rule_json(&built)?);
        }
        Command::Eval(args) => {
            let rule = load_rule(&args.rule)?;
            let integrand = Expr::parse(&args.expr)?;
            let context = NumericContext::try_new(args.prec)?;
            if args.n_list.contains(&0) {
                return Err(Failure::Usage("--n-list entries must be positive".into()));
            }
            let mut job = CompositeJob::new(rule, args.a, args.b, 1, integrand, context).exact(args.exact);
            if let Some(r) = &args.reference {
                job = job.with_reference(Reference::parse(r).map_err(|e| Failure::Usage(format!("--ref: {e}")))?);
            }
            let rows = error_table(&job, &args.n_list)?;
            print!("{}", error_table_csv(&rows, &context));
        }
        Command::Regionmap(args) => {
            let spec = match args.family {
                FamilyArg::TwoPoint => RasterSpec::two_point(args.grid, args.band),
                FamilyArg::ThreePointSlice => {
                    let fix = args.fix.ok_or_else(|| Failure::Usage("--fix is required for three-point-slice".into()))?;
                    RasterSpec::three_point_slice(args.grid, fix, args.band)
                }
            };
            let raster = region_raster(&spec)?;
            match args.out.extension().and_then(|e| e.to_str()) {
                Some("pgm") => write(&args.out, raster.to_pgm())?,
                Some("csv") => write(&args.out, raster.to_csv())?,
                _ => return Err(Failure::Usage("--out must end in .pgm or .csv".into())),
            }
            let positive = raster.count(|c| !c.boundary && c.label.is_positive());
            let negative = raster.count(|c| !c.boundary && c.label.is_negative());
            println!("cells={} positive={positive} negative={negative}", raster.cells.len());
        }
        Command::LegendreNodes { n, tol, method, all } => {
            if tol <= 0 {
                return Err(Failure::Usage("--tol must be positive".into()));
            }
            // enough digits to resolve the tolerance, plus slack
            let digits = 2 * tol.denom().to_string().len() as u32 + 30;
            let roots = legendre_roots(n, digits)?;
            let nodes: Vec<Rational> = roots
                .iter()
                .filter(|r| all || r.is_sign_positive() && !r.is_zero())
                .map(|r| match method {
                    Method::Simplest => rationalize(r, &tol),
                    Method::Convergent => rationalize_convergent(r, &tol),
                })
                .collect();
            let mut line = String::new();
            for (i, t) in nodes.iter().enumerate() {
                let _ = write!(line, "{}{t}", if i == 0 { "" } else { "," });
            }
            println!("{line}");
        }
        Command::PiDemo => {
            if !demo::run() {
                return Err(domain("pi-demo: at least one check failed"));
            }
        }
    }
    Ok(())
}

fn emit_report(report: &combquad_core::CombineReport, out: Option<&Path>) -> Result<(), Failure> {
    if let Some(out) = out {
        write(out, rule_to_string(&report.flattened)?)?;
    }
    print_json(&combine_report_json(report)?);
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(text) = std::env::var("COMBQUAD_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("COMBQUAD_THREADS must be a positive integer, got {text:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| domain(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
