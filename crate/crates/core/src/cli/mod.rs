//! The `wedge-spectra` command line: spectral curves, well-posedness
//! queries, finite-section experiments and the validation suite.
//!
//! Exit codes: 0 success (or well posed), 1 runtime or validation failure,
//! 2 invalid input, 3 ill posed.

pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::Value;

use crate::error::Error;
use crate::numerics::{eigenvalues_sorted, DIMENSION_CAP};
use crate::symbols::{norm_bound, sample_curve, MembershipTolerance, SpectrumRegion, WedgeParams};
use crate::transmission::{check as check_query, Problem, TransmissionQuery};
use crate::validation::{self, Suite};
use crate::wedge_operators::{containment, nystrom_t, toeplitz_section};
use output::{complex, emit, format_float, num, object, render_json, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ILLPOSED: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "WEDGE_SPECTRA_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "wedge-spectra",
    version,
    about = "Spectra of layer potentials on three-dimensional wedges"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the spectral curve and its reflection.
    Curve(CurveArgs),
    /// Decide well-posedness of a transmission problem.
    Check(CheckArgs),
    /// Eigenvalues of a finite section and their position relative to the spectrum.
    Discretize(DiscretizeArgs),
    /// Run the numerical cross-checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
#[group(id = "angle", required = true, multiple = false)]
pub struct Angle {
    /// Opening angle in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Opening angle in degrees.
    #[arg(long = "alpha-deg", allow_negative_numbers = true)]
    pub alpha_deg: Option<f64>,
}

impl Angle {
    fn radians(&self) -> f64 {
        match (self.alpha, self.alpha_deg) {
            (Some(a), _) => a,
            (None, Some(d)) => d.to_radians(),
            (None, None) => unreachable!("clap requires one of the angle flags"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub angle: Angle,
    /// Weight exponent in (-1, 3).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Maximum chord length of the sampled polyline.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "E", alias = "e")]
    E,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub angle: Angle,
    /// Real part of the permittivity ratio.
    #[arg(long = "eps-re", allow_negative_numbers = true)]
    pub eps_re: f64,
    /// Imaginary part of the permittivity ratio.
    #[arg(long = "eps-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub eps_im: f64,
    #[arg(long, value_enum, default_value_t = ProblemArg::L)]
    pub problem: ProblemArg,
    /// Weight exponent for problem L.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    /// On-curve tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub tau: f64,
    /// Chord length used to sample the curve.
    #[arg(long = "curve-tol", default_value_t = 1e-3)]
    pub curve_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    /// Nyström matrix of the Bessel-kernel operator.
    #[value(name = "T", alias = "t")]
    T,
    /// Toeplitz section of the Mellin convolution.
    #[value(name = "I", alias = "i")]
    I,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("grid").multiple(false)))]
pub struct DiscretizeArgs {
    #[command(flatten)]
    pub angle: Angle,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, value_enum)]
    pub operator: OperatorArg,
    /// Matrix size.
    #[arg(long)]
    pub n: usize,
    /// Half-width of the log grid (operator T, default 8).
    #[arg(long = "L", group = "grid", allow_negative_numbers = true)]
    pub half_width: Option<f64>,
    /// Log-grid step (operator I, default 0.05).
    #[arg(long, group = "grid", allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Distance to the spectrum that counts as inside.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub suite: Suite,
    /// JSON report file; written to stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Invalid(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Domain(_) | Error::DimensionCap { .. } => {
                Failure::Invalid(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(format!("i/o error: {e}"))
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn positive(name: &str, v: f64) -> std::result::Result<(), Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("--{name} must be a positive finite number, got {v}")))
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_INVALID;
    }
    let echo: Vec<Value> = argv
        .iter()
        .map(|a| Value::String(a.to_string_lossy().into_owned()))
        .collect();
    let result = match &cli.command {
        Command::Curve(a) => cmd_curve(a, &echo),
        Command::Check(a) => cmd_check(a, &echo),
        Command::Discretize(a) => cmd_discretize(a, &echo),
        Command::Validate(a) => cmd_validate(a, &echo),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // a second call in the same process finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn cmd_curve(args: &CurveArgs, echo: &[Value]) -> CmdResult {
    let p = WedgeParams::new(args.angle.radians(), args.a)?;
    positive("tol", args.tol)?;
    let curve = sample_curve(&p, args.tol)?;
    let branches: [(&str, f64); 2] = [("plus", 1.0), ("minus", -1.0)];
    let contents = match args.format {
        Format::Csv => {
            let mut s = String::from("xi,re,im,branch\n");
            for (name, sign) in branches {
                for sample in curve.samples() {
                    let v = sample.value * sign;
                    s.push_str(&format!(
                        "{},{},{},{name}\n",
                        format_float(sample.xi),
                        format_float(v.re),
                        format_float(v.im)
                    ));
                }
                s.push_str(&format!("inf,{},{},{name}\n", format_float(0.0), format_float(0.0)));
            }
            s
        }
        Format::Json => {
            let mut branch_values = serde_json::Map::new();
            for (name, sign) in branches {
                let mut rows: Vec<Value> = curve
                    .samples()
                    .iter()
                    .map(|s| {
                        let v = s.value * sign;
                        Value::Array(vec![num(s.xi), num(v.re), num(v.im)])
                    })
                    .collect();
                rows.push(Value::Array(vec![Value::Null, num(0.0), num(0.0)]));
                branch_values.insert(name.to_string(), Value::Array(rows));
            }
            render_json(&object([
                ("schema_version", Value::String(SCHEMA_VERSION.into())),
                ("command", Value::Array(echo.to_vec())),
                (
                    "params",
                    object([("alpha", num(p.alpha())), ("a", num(p.a())), ("tol", num(args.tol))]),
                ),
                ("columns", serde_json::json!(["xi", "re", "im"])),
                ("closure_xi", Value::String("inf".into())),
                ("branches", Value::Object(branch_values)),
            ]))
        }
    };
    emit(args.out.as_deref(), &contents)?;
    Ok(EXIT_OK)
}

fn cmd_check(args: &CheckArgs, echo: &[Value]) -> CmdResult {
    let problem = match args.problem {
        ProblemArg::L => Problem::L,
        ProblemArg::E => Problem::E,
    };
    positive("tau", args.tau)?;
    positive("curve-tol", args.curve_tol)?;
    let eps = Complex64::new(args.eps_re, args.eps_im);
    let q = TransmissionQuery::new(eps, args.angle.radians(), problem, args.a)?;
    let tol = MembershipTolerance {
        tau_on: args.tau,
        curve_tol: args.curve_tol,
    };
    let v = check_query(&q, tol)?;
    let doc = object([
        ("schema_version", Value::String(SCHEMA_VERSION.into())),
        ("command", Value::Array(echo.to_vec())),
        (
            "query",
            object([
                ("alpha", num(q.params().alpha())),
                ("epsilon", complex(eps)),
                ("problem", Value::String(problem.as_str().into())),
                (
                    "a",
                    if problem == Problem::L {
                        num(args.a)
                    } else {
                        Value::Null
                    },
                ),
            ]),
        ),
        ("lambda", complex(v.lambda)),
        ("wellposed", Value::Bool(v.wellposed)),
        ("classification", Value::String(v.classification.as_str().into())),
        ("certificate", Value::String(v.certificate.clone())),
    ]);
    emit(None, &render_json(&doc))?;
    Ok(if v.wellposed { EXIT_OK } else { EXIT_ILLPOSED })
}

fn cmd_discretize(args: &DiscretizeArgs, echo: &[Value]) -> CmdResult {
    let p = WedgeParams::new(args.angle.radians(), args.a)?;
    if args.n < 2 || args.n > DIMENSION_CAP {
        return Err(invalid(format!("--n must lie in [2, {DIMENSION_CAP}], got {}", args.n)));
    }
    if !(args.tolerance >= 0.0 && args.tolerance.is_finite()) {
        return Err(invalid(format!(
            "--tolerance must be non-negative, got {}",
            args.tolerance
        )));
    }
    let (matrix, grid) = match args.operator {
        OperatorArg::T => {
            if args.h.is_some() {
                return Err(invalid("operator T takes --L, not --h"));
            }
            let l = args.half_width.unwrap_or(8.0);
            positive("L", l)?;
            (nystrom_t(&p, args.n, l)?, ("L", l))
        }
        OperatorArg::I => {
            if args.half_width.is_some() {
                return Err(invalid("operator I takes --h, not --L"));
            }
            let h = args.h.unwrap_or(0.05);
            positive("h", h)?;
            (toeplitz_section(&p, args.n, h)?, ("h", h))
        }
    };
    let eigs = eigenvalues_sorted(&matrix)?;
    let region = SpectrumRegion::new(&p, MembershipTolerance::default())?;
    let c = containment(&eigs, &region, args.tolerance)?;
    let operator = match args.operator {
        OperatorArg::T => "T",
        OperatorArg::I => "I",
    };
    let doc = object([
        ("schema_version", Value::String(SCHEMA_VERSION.into())),
        ("command", Value::Array(echo.to_vec())),
        (
            "params",
            object([
                ("alpha", num(p.alpha())),
                ("a", num(p.a())),
                ("operator", Value::String(operator.into())),
                ("n", Value::from(args.n)),
                (grid.0, num(grid.1)),
            ]),
        ),
        ("eigenvalues", Value::Array(eigs.iter().map(|&z| complex(z)).collect())),
        (
            "containment",
            object([
                ("tolerance", num(c.tolerance)),
                ("fraction_inside", num(c.fraction_inside)),
                ("max_distance", num(c.max_distance)),
                ("spectral_radius", num(c.spectral_radius)),
            ]),
        ),
        ("norm_bound", num(norm_bound(&p))),
    ]);
    emit(args.out.as_deref(), &render_json(&doc))?;
    Ok(EXIT_OK)
}

fn cmd_validate(args: &ValidateArgs, echo: &[Value]) -> CmdResult {
    let report = validation::run(args.suite);
    for c in &report.checks {
        eprintln!(
            "{} {} residual={} tolerance={}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            format_float(c.residual),
            format_float(c.tolerance)
        );
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            object([
                ("name", Value::String(c.name.into())),
                ("suite", Value::String(c.suite.as_str().into())),
                ("tolerance", num(c.tolerance)),
                ("residual", num(c.residual)),
                ("passed", Value::Bool(c.passed)),
                ("detail", Value::String(c.detail.clone())),
            ])
        })
        .collect();
    let doc = object([
        ("schema_version", Value::String(SCHEMA_VERSION.into())),
        ("command", Value::Array(echo.to_vec())),
        ("suite", Value::String(args.suite.as_str().into())),
        ("passed", Value::Bool(report.all_passed())),
        ("checks", Value::Array(checks)),
    ]);
    emit(args.report.as_deref(), &render_json(&doc))?;
    let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Ok(EXIT_FAILURE)
    }
}
