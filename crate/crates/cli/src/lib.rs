//! Command-line front end: evaluation, zero tables, zero sums, single property
//! checks, figure data and the full verification suite.
//!
//! Exit codes: 0 on success (every check passed), 1 when a check fails,
//! 2 on usage or domain errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dini::figure::{figure_csv, figure_data};
use dini::monotonicity::{
    abs_monotone_report, bound_check, corput_check, log_concavity_check, logderiv_bound_check,
    nu_monotone_check, trig_case_check, ConcavityTarget, MonotoneTarget,
};
use dini::report::json_real;
use dini::suite::{eta_check, power_series_check, product_check, report_suite, SuiteConfig};
use dini::{
    bessel_j, dini as dini_value, dini_zero, g_pair, nu_zero_monotone_check, rayleigh_enclosure,
    zero_table, EvalPolicy, GridSpec, Order, PropertyReport, ZeroKind,
};

/// Header of the `eval` CSV.
pub const EVAL_HEADER: &str = "nu,x,j,d,g,g_prime";
/// Header of the `zeros` CSV.
pub const ZEROS_HEADER: &str = "n,zero";
/// Header of the `sums` CSV.
pub const SUMS_HEADER: &str = "m,lower,upper,n_used";
/// Header of the `verify` and `report` CSV summaries.
pub const SUMMARY_HEADER: &str = "id,name,verdict,min_margin,violations,notes";

#[derive(Debug, Parser)]
#[command(name = "dini", version, about = "Dini functions, their zeros and verified inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate J_ν, d_ν, g_ν and g_ν′ at one or more points.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        /// Comma-separated evaluation points, each >= 0.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        x: RealList,
    },
    /// Tabulate the first positive zeros of J_ν or d_ν.
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long, value_enum, default_value_t = KindArg::Dini)]
        kind: KindArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Enclose the zero sums η_2m = Σ α_n^{−2m}.
    Sums {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        /// A single order m.
        #[arg(long, conflicts_with = "m_max")]
        m: Option<u32>,
        /// All orders 1..=m_max.
        #[arg(long)]
        m_max: Option<u32>,
        /// Absolute enclosure width; defaults to 1e-9 α_1^{−2m}.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check one property and print its report.
    Verify(VerifyArgs),
    /// Emit the figure data table.
    Figure {
        #[arg(long, default_value_t = 1)]
        fig: u32,
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 500)]
        points: usize,
    },
    /// Run every check and print the combined report.
    Report {
        /// Comma-separated orders ν.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        nu_grid: Option<RealList>,
        /// Comma-separated offsets μ − ν.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        mu_offsets: Option<RealList>,
        #[arg(long)]
        grid_points: Option<usize>,
        /// Random (a, b) pairs per order for the van der Corput checks.
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Bessel,
    Dini,
}

impl From<KindArg> for ZeroKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Bessel => ZeroKind::Bessel,
            KindArg::Dini => ZeroKind::Dini,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Eta2,
    AbsMonotone,
    Bound,
    LogderivBound,
    LogConcavity,
    Corput,
    Trig,
    NuMonotone,
    ZeroMonotone,
    Product,
    PowerSeries,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    property: Property,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nu: f64,
    /// Second order; defaults to ν.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// f, g_ratio or q for abs-monotone; dini or g_prime for log-concavity.
    #[arg(long)]
    target: Option<String>,
    /// 0-based positivity component for log-concavity.
    #[arg(long, default_value_t = 0)]
    component: usize,
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    grid_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    grid_max: Option<f64>,
    #[arg(long)]
    grid_points: Option<usize>,
    /// Zero count, product factors or series orders, depending on the property.
    #[arg(long)]
    count: Option<usize>,
    /// Comma-separated orders for zero-monotone.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    nu_grid: Option<RealList>,
}

/// A comma-separated list of reals; the empty string is the empty list.
#[derive(Debug, Clone, PartialEq)]
struct RealList(Vec<f64>);

fn parse_list(s: &str) -> Result<RealList, String> {
    if s.trim().is_empty() {
        return Ok(RealList(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(RealList)
}

/// A usage or domain error, reported with exit code 2.
struct Failure(String);

impl From<dini::Error> for Failure {
    fn from(e: dini::Error) -> Self {
        Failure(e.to_string())
    }
}

/// Output text plus whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

/// Runs the command line against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line with explicit output and error streams and returns
/// the exit code. `args` includes the program name.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out
            .write_all(outcome.text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Eval { nu, x } => eval(*nu, &x.0, cli.format.unwrap_or(Format::Csv)),
        Command::Zeros { nu, kind, count } => {
            zeros(*nu, (*kind).into(), *count, cli.format.unwrap_or(Format::Csv))
        }
        Command::Sums { nu, m, m_max, tol } => {
            sums(*nu, *m, *m_max, *tol, cli.format.unwrap_or(Format::Csv))
        }
        Command::Verify(args) => verify(args, cli.format.unwrap_or(Format::Json)),
        Command::Figure { fig, x_max, points } => {
            figure(*fig, *x_max, *points, cli.format.unwrap_or(Format::Csv))
        }
        Command::Report {
            nu_grid,
            mu_offsets,
            grid_points,
            pairs,
            seed,
        } => {
            let mut cfg = SuiteConfig::default();
            if let Some(v) = nu_grid {
                cfg.nu_grid = v.0.clone();
            }
            if let Some(v) = mu_offsets {
                cfg.mu_offsets = v.0.clone();
            }
            if let Some(p) = grid_points {
                cfg.grid_points = *p;
            }
            if let Some(p) = pairs {
                cfg.corput_pairs = *p;
            }
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            let suite = report_suite(&cfg)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => suite.to_json() + "\n",
                Format::Csv => {
                    let mut s = format!("{SUMMARY_HEADER}\n");
                    for (id, r) in &suite.entries {
                        summary_row(&mut s, id, r);
                    }
                    s
                }
            };
            Ok(Outcome {
                text,
                passed: suite.passed(),
            })
        }
    }
}

fn sci(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n"
}

fn eval(nu: f64, xs: &[f64], format: Format) -> Result<Outcome, Failure> {
    if xs.is_empty() {
        return Err(Failure("--x needs at least one point".into()));
    }
    let order = Order::new(nu)?;
    let policy = EvalPolicy::default();
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let j = bessel_j(order, x, &policy)?;
        let d = dini_value(order, x, &policy)?;
        let g = g_pair(order, x, &policy)?;
        rows.push([nu, x, j, d, g.g, g.g_prime]);
    }
    let text = match format {
        Format::Csv => {
            let mut s = format!("{EVAL_HEADER}\n");
            for r in &rows {
                let cells: Vec<String> = r.iter().map(|&v| sci(v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let names: Vec<&str> = EVAL_HEADER.split(',').collect();
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = names
                        .iter()
                        .zip(r)
                        .map(|(k, &v)| (k.to_string(), json_real(v)))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            pretty(&Value::Array(arr))
        }
    };
    Ok(Outcome::ok(text))
}

fn zeros(nu: f64, kind: ZeroKind, count: usize, format: Format) -> Result<Outcome, Failure> {
    let table = zero_table(Order::new(nu)?, kind, count)?;
    let text = match format {
        Format::Csv => {
            let mut s = format!("{ZEROS_HEADER}\n");
            for (i, z) in table.values().iter().enumerate() {
                let _ = writeln!(s, "{},{z:.10}", i + 1);
            }
            s
        }
        Format::Json => pretty(&json!({
            "nu": json_real(nu),
            "kind": match kind { ZeroKind::Bessel => "bessel", ZeroKind::Dini => "dini" },
            "count": table.count(),
            "bracket_width": json_real(table.bracket_width()),
            "zeros": table.values().iter().map(|&z| json_real(z)).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(text))
}

fn sums(
    nu: f64,
    m: Option<u32>,
    m_max: Option<u32>,
    tol: Option<f64>,
    format: Format,
) -> Result<Outcome, Failure> {
    let order = Order::new(nu)?;
    let ms: Vec<u32> = match (m, m_max) {
        (Some(m), _) => vec![m],
        (None, Some(k)) => (1..=k).collect(),
        (None, None) => vec![1],
    };
    if ms.is_empty() || ms.contains(&0) {
        return Err(Failure("orders m must be >= 1".into()));
    }
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure(format!("--tol must be finite and > 0, got {t}")));
        }
    }
    let a1 = dini_zero(order, 1)?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in &ms {
        let width = tol.unwrap_or(1e-9 * a1.powi(-2 * m as i32));
        rows.push(rayleigh_enclosure(order, m, width)?);
    }
    let text = match format {
        Format::Csv => {
            let mut s = format!("{SUMS_HEADER}\n");
            for e in &rows {
                let _ = writeln!(s, "{},{},{},{}", e.m, sci(e.lower), sci(e.upper), e.n_used);
            }
            s
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|e| {
                    json!({
                        "m": e.m,
                        "lower": json_real(e.lower),
                        "upper": json_real(e.upper),
                        "n_used": e.n_used,
                    })
                })
                .collect();
            pretty(&json!({ "nu": json_real(nu), "sums": arr }))
        }
    };
    Ok(Outcome::ok(text))
}

fn figure(fig: u32, x_max: f64, points: usize, format: Format) -> Result<Outcome, Failure> {
    let rows = figure_data(fig, x_max, points)?;
    let text = match format {
        Format::Csv => figure_csv(&rows),
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "x": json_real(r.x),
                        "d1": json_real(r.d1),
                        "envelope": json_real(r.envelope),
                    })
                })
                .collect();
            pretty(&Value::Array(arr))
        }
    };
    Ok(Outcome::ok(text))
}

fn summary_row(s: &mut String, id: &str, r: &PropertyReport) {
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    let margin = r.min_margin.map(sci).unwrap_or_default();
    let _ = writeln!(
        s,
        "{id},\"{}\",{},{margin},{},{}",
        r.name.replace('"', "\"\""),
        verdict.as_str().unwrap_or_default(),
        r.violations.len(),
        r.notes.len()
    );
}

fn required(v: Option<f64>, flag: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure(format!("--{flag} is required for this property")))
}

/// Interior points of (0, α_1) unless the grid flags override them.
fn component_grid(args: &VerifyArgs, order: Order) -> Result<GridSpec, Failure> {
    let points = args.grid_points.unwrap_or(20);
    let a1 = dini_zero(order, 1)?;
    let lo = a1 / (points + 1) as f64;
    let hi = a1 * points as f64 / (points + 1) as f64;
    user_grid(args, "interior of (0, alpha_1)", lo, hi, points)
}

fn user_grid(
    args: &VerifyArgs,
    description: &str,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<GridSpec, Failure> {
    let min = args.grid_min.unwrap_or(lo);
    let max = args.grid_max.unwrap_or(hi);
    let points = args.grid_points.unwrap_or(points);
    if !(min.is_finite() && max.is_finite() && min <= max) {
        return Err(Failure(format!(
            "grid bounds must be finite with min <= max, got [{min}, {max}]"
        )));
    }
    if points < 2 {
        return Err(Failure(format!("--grid-points must be >= 2, got {points}")));
    }
    let description = if args.grid_min.is_some() || args.grid_max.is_some() {
        "command-line grid"
    } else {
        description
    };
    Ok(GridSpec::new(description, min, max, points))
}

fn verify(args: &VerifyArgs, format: Format) -> Result<Outcome, Failure> {
    let nu = Order::new(args.nu)?;
    let mu = Order::new(args.mu.unwrap_or(args.nu))?;
    let report = match args.property {
        Property::Eta2 => eta_check(nu, args.m_max.unwrap_or(6))?,
        Property::AbsMonotone => {
            let target: MonotoneTarget = args.target.as_deref().unwrap_or("q").parse()?;
            let default_m = if target == MonotoneTarget::F { 8 } else { 6 };
            let a1 = dini_zero(nu, 1)?;
            let grid = user_grid(args, "[0, 0.95 alpha_1^2]", 0.0, 0.95 * a1 * a1, 20)?;
            abs_monotone_report(target, mu, nu, &grid, args.m_max.unwrap_or(default_m))?
        }
        Property::Bound => bound_check(nu, &component_grid(args, nu)?)?,
        Property::LogderivBound => logderiv_bound_check(nu, &component_grid(args, nu)?)?,
        Property::LogConcavity => {
            let target: ConcavityTarget = args.target.as_deref().unwrap_or("dini").parse()?;
            log_concavity_check(target, nu, args.component, args.grid_points.unwrap_or(20))?
        }
        Property::Corput => corput_check(nu, required(args.a, "a")?, required(args.b, "b")?)?,
        Property::Trig => trig_case_check(required(args.a, "a")?, required(args.b, "b")?)?,
        Property::NuMonotone => nu_monotone_check(nu, mu, &component_grid(args, nu)?)?,
        Property::ZeroMonotone => {
            let grid = match &args.nu_grid {
                Some(g) => g.0.clone(),
                None => SuiteConfig::default().nu_grid,
            };
            let mut orders = grid.into_iter().map(Order::new).collect::<dini::Result<Vec<_>>>()?;
            orders.sort_by(|a, b| a.nu().total_cmp(&b.nu()));
            nu_zero_monotone_check(&orders, args.count.unwrap_or(10))?
        }
        Property::Product => {
            let a3 = dini_zero(nu, 3)?;
            let n = 50;
            let grid = user_grid(args, "", a3 / (n + 1) as f64, a3 * n as f64 / (n + 1) as f64, n)?;
            product_check(nu, args.count.unwrap_or(2000), &grid.linspace())?
        }
        Property::PowerSeries => {
            let r = 0.8 * dini_zero(nu, 1)?;
            let n = 10;
            let grid = user_grid(args, "", r / (n + 1) as f64, r * n as f64 / (n + 1) as f64, n)?;
            let orders = u32::try_from(args.count.unwrap_or(40))
                .map_err(|_| Failure("--count is too large".into()))?;
            power_series_check(nu, orders, &grid.linspace())?
        }
    };
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let mut s = format!("{SUMMARY_HEADER}\n");
            let id = Property::value_variants()
                .iter()
                .find(|p| **p == args.property)
                .and_then(|p| p.to_possible_value())
                .map(|v| v.get_name().to_string())
                .unwrap_or_default();
            summary_row(&mut s, &id, &report);
            s
        }
    };
    Ok(Outcome {
        text,
        passed: report.passed(),
    })
}
