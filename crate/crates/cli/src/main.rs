//! Command-line front end: evaluate α-derivatives, tabulate sweeps, run
//! limit-vs-closed-form equivalence checks, integrate, and solve α-ODEs,
//! emitting CSV or JSON.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error, 3 failed
//! equivalence check. Data goes to stdout (or `--out`), diagnostics to
//! stderr.

mod kernel_arg;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use localfrac::expr::{parse, ExprAst};
use localfrac::fraccalc::{
    alpha_integral_with_bound, solve_alpha_ode, IntegralConfig, OdeConfig,
};
use localfrac::kernel::{validate_kernel, KernelKind, KernelSpec};
use localfrac::localderiv::{
    alpha_deriv_at_start, alpha_deriv_closed, alpha_deriv_limit, alpha_sweep, check_equivalence,
    AlphaOrder, DerivResult, EstimatorConfig,
};

use output::{emit, render, Format, Record};

#[derive(Parser)]
#[command(
    name = "localfrac",
    version,
    about = "Kernel-parameterized local fractional derivatives, integrals, and ODEs",
    after_help = "Expression grammar: + -, * /, unary -, ^ (right-associative), \
                  functions sin cos tan exp ln sqrt abs, constants pi and e, variable t. \
                  Unary minus binds looser than ^, so -t^2 means -(t^2)."
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate the α-derivative of a function at one point
    Eval(EvalArgs),
    /// Tabulate the α-derivative over a uniform grid in t
    Table(TableArgs),
    /// Compare the limit and closed-form routes over a grid
    Check(CheckArgs),
    /// Compute the α-integral from the domain start to a point
    Integrate(IntegrateArgs),
    /// Solve the linear α-ODE y^(α) = λ·y from the domain start
    Solve(SolveArgs),
    /// Closed-form α-derivative across a list of orders at a fixed point
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Limit,
    Both,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write data to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Function of t to differentiate
    #[arg(long)]
    function: String,
    /// Kernel selector: conformable | shifted:<a> | gamma | expr:<expression>,a=<a>,b=<b>
    #[arg(long, default_value = "conformable")]
    kernel: String,
    /// Fractional order in (0, 1]
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Evaluation point; the domain start routes through the boundary limit
    #[arg(long, allow_negative_numbers = true)]
    at: f64,
    /// Derivative route (interior points only)
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    function: String,
    #[arg(long, default_value = "conformable")]
    kernel: String,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// First grid point (must be above the kernel domain start)
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    /// Last grid point
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    function: String,
    #[arg(long, default_value = "conformable")]
    kernel: String,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Largest acceptable relative discrepancy between the two routes
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct IntegrateArgs {
    /// Integrand f; the weighted integral runs from the domain start
    #[arg(long)]
    function: String,
    #[arg(long, default_value = "conformable")]
    kernel: String,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Upper limit of integration
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SolveArgs {
    /// Coefficient of the linear right-hand side y^(α) = λ·y
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value = "conformable")]
    kernel: String,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Initial value at the domain start
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    y0: f64,
    /// End of the integration interval
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Number of output grid points over [a, t_end]
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    function: String,
    #[arg(long, default_value = "conformable")]
    kernel: String,
    /// Evaluation point
    #[arg(long, allow_negative_numbers = true)]
    at: f64,
    /// Comma-separated list of orders, e.g. 0.25,0.5,0.75,1
    #[arg(long)]
    alphas: String,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Usage(String),
    Compute(String),
}

impl From<localfrac::Error> for CliError {
    fn from(e: localfrac::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.verb {
        Verb::Eval(args) => eval(args),
        Verb::Table(args) => table(args),
        Verb::Check(args) => check(args),
        Verb::Integrate(args) => integrate(args),
        Verb::Solve(args) => solve(args),
        Verb::Sweep(args) => sweep(args),
    }
}

fn parse_alpha(raw: f64) -> Result<AlphaOrder, CliError> {
    AlphaOrder::new(raw).map_err(|_| CliError::Usage("alpha must be in (0,1]".to_string()))
}

fn parse_function(raw: &str) -> Result<ExprAst, CliError> {
    parse(raw).map_err(|e| CliError::Usage(format!("--function: {e}")))
}

/// Build the kernel from its selector and sample-check a custom kernel's
/// nonnegativity before use.
fn kernel_for(selector: &str, alphas: &[f64]) -> Result<KernelSpec, CliError> {
    let spec = kernel_arg::parse_kernel(selector).map_err(CliError::Usage)?;
    if spec.kind() == KernelKind::Custom {
        let report = validate_kernel(&spec, 256, alphas)?;
        if !report.passed {
            let (t, _, k) = report.violations[0];
            return Err(CliError::Compute(format!(
                "invalid kernel: k({t}) = {k} violates nonnegativity/nonvanishing \
                 ({} of {} samples failed)",
                report.violations.len(),
                report.samples_checked
            )));
        }
    }
    Ok(spec)
}

fn linspace(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![from];
    }
    (0..points)
        .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
        .collect()
}

fn deriv_record(t: f64, alpha: AlphaOrder, r: &DerivResult) -> Record {
    Record {
        t,
        alpha: alpha.value(),
        value: r.value,
        method: r.method.as_str(),
        error_estimate: r.error_estimate,
    }
}

fn finish(records: &[Record], output: &OutputArgs) -> Result<(), CliError> {
    // Overflowed doubles would serialize as "inf"/"NaN" in CSV and null in
    // JSON; refuse to emit them.
    for r in records {
        if !r.value.is_finite() || !r.error_estimate.is_finite() {
            return Err(CliError::Compute(format!(
                "value at t = {} overflows double precision",
                r.t
            )));
        }
    }
    let rendered = render(records, output.format);
    emit(&rendered, output.out.as_deref())
        .map_err(|e| CliError::Compute(format!("write failed: {e}")))
}

fn eval(args: EvalArgs) -> Result<i32, CliError> {
    let alpha = parse_alpha(args.alpha)?;
    let f = parse_function(&args.function)?;
    let k = kernel_for(&args.kernel, &[alpha.value()])?;
    let cfg = EstimatorConfig::default();
    let a = k.domain_start();

    let mut records = Vec::new();
    if args.at == a {
        let r = alpha_deriv_at_start(&f, &k, alpha, &cfg)?;
        if r.diverged {
            return Err(CliError::Compute(format!(
                "the boundary limit diverges: the α-derivative has no finite value at t = {a}"
            )));
        }
        records.push(deriv_record(args.at, alpha, &r));
    } else {
        match args.method {
            Method::Closed => {
                records.push(deriv_record(args.at, alpha, &alpha_deriv_closed(&f, &k, alpha, args.at)?));
            }
            Method::Limit => {
                records.push(deriv_record(
                    args.at,
                    alpha,
                    &alpha_deriv_limit(&f, &k, alpha, args.at, &cfg)?,
                ));
            }
            Method::Both => {
                records.push(deriv_record(args.at, alpha, &alpha_deriv_closed(&f, &k, alpha, args.at)?));
                records.push(deriv_record(
                    args.at,
                    alpha,
                    &alpha_deriv_limit(&f, &k, alpha, args.at, &cfg)?,
                ));
            }
        }
    }
    finish(&records, &args.output)?;
    Ok(0)
}

fn table(args: TableArgs) -> Result<i32, CliError> {
    let alpha = parse_alpha(args.alpha)?;
    let f = parse_function(&args.function)?;
    let k = kernel_for(&args.kernel, &[alpha.value()])?;
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".to_string()));
    }
    if args.to < args.from {
        return Err(CliError::Usage("--to must not be below --from".to_string()));
    }
    let cfg = EstimatorConfig::default();
    let mut records = Vec::new();
    for t in linspace(args.from, args.to, args.points) {
        // A grid point on the domain start routes through the boundary
        // limit, exactly as `eval --at a` does.
        if t == k.domain_start() {
            let r = alpha_deriv_at_start(&f, &k, alpha, &cfg)?;
            if r.diverged {
                return Err(CliError::Compute(format!(
                    "the boundary limit diverges: no finite value at t = {t}"
                )));
            }
            records.push(deriv_record(t, alpha, &r));
            continue;
        }
        match args.method {
            Method::Closed => {
                records.push(deriv_record(t, alpha, &alpha_deriv_closed(&f, &k, alpha, t)?));
            }
            Method::Limit => {
                records.push(deriv_record(t, alpha, &alpha_deriv_limit(&f, &k, alpha, t, &cfg)?));
            }
            Method::Both => {
                records.push(deriv_record(t, alpha, &alpha_deriv_closed(&f, &k, alpha, t)?));
                records.push(deriv_record(t, alpha, &alpha_deriv_limit(&f, &k, alpha, t, &cfg)?));
            }
        }
    }
    finish(&records, &args.output)?;
    Ok(0)
}

fn check(args: CheckArgs) -> Result<i32, CliError> {
    let alpha = parse_alpha(args.alpha)?;
    let f = parse_function(&args.function)?;
    let k = kernel_for(&args.kernel, &[alpha.value()])?;
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".to_string()));
    }
    if args.tolerance <= 0.0 {
        return Err(CliError::Usage("--tolerance must be positive".to_string()));
    }
    let grid = linspace(args.from, args.to, args.points);
    let report = check_equivalence(&f, &k, alpha, &grid, &EstimatorConfig::default())?;
    for failure in &report.failures {
        eprintln!("note: t = {}: {}", failure.t, failure.message);
    }
    if report.checks.is_empty() {
        return Err(CliError::Compute(
            "no grid point could be evaluated by both routes".to_string(),
        ));
    }
    let record = Record {
        t: report.worst_t.expect("nonempty checks carry a worst point"),
        alpha: alpha.value(),
        value: report.max_discrepancy,
        method: "check",
        error_estimate: args.tolerance,
    };
    finish(std::slice::from_ref(&record), &args.output)?;
    if report.max_discrepancy < args.tolerance {
        Ok(0)
    } else {
        eprintln!(
            "check failed: max discrepancy {} at t = {} (tolerance {})",
            report.max_discrepancy, record.t, args.tolerance
        );
        Ok(3)
    }
}

fn integrate(args: IntegrateArgs) -> Result<i32, CliError> {
    let alpha = parse_alpha(args.alpha)?;
    let f = parse_function(&args.function)?;
    let k = kernel_for(&args.kernel, &[alpha.value()])?;
    let (value, bound) =
        alpha_integral_with_bound(&f, &k, alpha, args.to, &IntegralConfig::default())?;
    let record = Record {
        t: args.to,
        alpha: alpha.value(),
        value,
        method: "tanh_sinh",
        error_estimate: bound,
    };
    finish(std::slice::from_ref(&record), &args.output)?;
    Ok(0)
}

fn solve(args: SolveArgs) -> Result<i32, CliError> {
    let alpha = parse_alpha(args.alpha)?;
    let k = kernel_for(&args.kernel, &[alpha.value()])?;
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".to_string()));
    }
    let cfg = OdeConfig::default();
    let lambda = args.lambda;
    let sol = solve_alpha_ode(|_t, y| Ok(lambda * y), &k, alpha, args.y0, args.to, &cfg)?;
    let mut records = Vec::new();
    for t in linspace(k.domain_start(), args.to, args.points) {
        let value = sol.value_at(t)?;
        records.push(Record {
            t,
            alpha: alpha.value(),
            value,
            method: "dopri5",
            error_estimate: cfg.abs_tol + cfg.rel_tol * value.abs(),
        });
    }
    finish(&records, &args.output)?;
    Ok(0)
}

fn sweep(args: SweepArgs) -> Result<i32, CliError> {
    let mut alphas = Vec::new();
    for piece in args.alphas.split(',') {
        let trimmed = piece.trim();
        let raw: f64 = trimmed
            .parse()
            .map_err(|_| CliError::Usage(format!("--alphas: {trimmed:?} is not a number")))?;
        parse_alpha(raw)?;
        alphas.push(raw);
    }
    if alphas.is_empty() {
        return Err(CliError::Usage("--alphas must list at least one order".to_string()));
    }
    let f = parse_function(&args.function)?;
    let k = kernel_for(&args.kernel, &alphas)?;
    let rows = alpha_sweep(&f, &k, args.at, &alphas)?;
    let records: Vec<Record> = rows
        .into_iter()
        .map(|(alpha, value)| Record {
            t: args.at,
            alpha,
            value,
            method: "closed_form",
            error_estimate: 0.0,
        })
        .collect();
    finish(&records, &args.output)?;
    Ok(0)
}
