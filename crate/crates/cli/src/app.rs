//! Command dispatch: argument shapes, input loading, the five subcommands,
//! and the exit-code contract.
//!
//! Exit codes: 0 on success (including a found telescoper or a decided
//! summability question), 2 when no telescoper exists, 3 on input errors
//! or failed verification, 4 when the order cap cuts off the search.

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperct::algebra::field::{rat_int, Rat};
use hyperct::algebra::ratfun::RatFun;
use hyperct::algebra::xy::{PolyY, RatXY};
use hyperct::bounds::bounds_report;
use hyperct::reduction::{is_summable, shell_reduce, ResidualForm, Summability};
use hyperct::rng::XorShift;
use hyperct::rnf::{kernel_shell_of_term, KernelShell};
use hyperct::telescoping::{reduction_ct, verify_telescoper, Telescoper};
use hyperct::term::{eval_integer_point, shift_quotients, HyperTerm};
use hyperct::Error;
use num_traits::{One, Zero};

use crate::parse::{self, ParseError};
use crate::report::Report;

/// Summability, reduction, telescoping, and order bounds for bivariate
/// hypergeometric terms.
#[derive(Parser)]
#[command(name = "hyperct", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide whether the term is summable in y and output the certificate.
    Summable(InputArgs),
    /// Compute the additive decomposition with residual a/b + q/v.
    Reduce(InputArgs),
    /// Search for a minimal-order telescoper with certificate.
    Telescope(TelescopeArgs),
    /// Compute order bounds without running the telescoper search.
    Bounds(InputArgs),
    /// Check a supplied operator and certificate against the term.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct InputArgs {
    /// The term, e.g. "Binomial(x, y) / Factorial(y)".
    #[arg(long)]
    pub term: Option<String>,

    /// x-shift quotient of the term as a rational function (needs --gy).
    #[arg(long)]
    pub fx: Option<String>,

    /// y-shift quotient of the term as a rational function (needs --fx).
    #[arg(long)]
    pub gy: Option<String>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for the randomized numeric spot checks done under --verify.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,

    /// Re-check the emitted identity before printing.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args)]
pub struct TelescopeArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Highest telescoper order to try before giving up (exit code 4).
    #[arg(long, value_name = "N")]
    pub max_order: Option<usize>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Telescoper coefficients e_0,...,e_r as comma-separated x-polynomials.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub coefficients: Vec<String>,

    /// Certificate ratio g with G = g*H, as printed by telescope.
    #[arg(long, allow_hyphen_values = true)]
    pub certificate: String,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Errors surfaced to the user, each mapped to an exit code.
#[derive(Debug)]
pub enum AppError {
    Parse(ParseError),
    Core(Error),
    Usage(String),
    VerificationFailed(String),
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Parse(e) => write!(f, "{e}"),
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::VerificationFailed(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        AppError::Parse(e)
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        AppError::Core(e)
    }
}

impl AppError {
    fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(Error::NoTelescoper { .. }) => 2,
            AppError::Core(Error::OrderCapExceeded { .. }) => 4,
            _ => 3,
        }
    }
}

/// Run one parsed command line and return the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<i32, AppError> {
    match cli.command {
        Command::Summable(args) => summable(args),
        Command::Reduce(args) => reduce(args),
        Command::Telescope(args) => telescope(args),
        Command::Bounds(args) => bounds(args),
        Command::Verify(args) => verify(args),
    }
}

fn load_term(input: &InputArgs) -> Result<(HyperTerm, String), AppError> {
    match (&input.term, &input.fx, &input.gy) {
        (Some(text), None, None) => {
            let ast = parse::parse_term(text)?;
            let t = shift_quotients(&ast)?;
            Ok((t, text.clone()))
        }
        (None, Some(fx), Some(gy)) => {
            let f = parse::parse_rational(fx)?;
            let g = parse::parse_rational(gy)?;
            let t = HyperTerm::from_quotients(f, g)?;
            Ok((t, format!("fx = {fx}; gy = {gy}")))
        }
        _ => Err(AppError::Usage(
            "provide --term, or both --fx and --gy".into(),
        )),
    }
}

fn summable(args: InputArgs) -> Result<i32, AppError> {
    let (t, input_text) = load_term(&args)?;
    let (g, r, status) = match is_summable(&t)? {
        Summability::Summable { g, kernel } => (g, ResidualForm::zero(&kernel), "summable"),
        Summability::NotSummable { g, r } => (g, r, "none"),
    };
    if args.verify {
        check_decomposition(&r.kernel, &g, &r)?;
    }
    let mut report = Report::new(input_text, &r.kernel, &r);
    report.certificate = Some(format!("{g}"));
    report.status = status.into();
    println!("{}", report.render(args.format == Format::Json));
    Ok(0)
}

fn reduce(args: InputArgs) -> Result<i32, AppError> {
    let (t, input_text) = load_term(&args)?;
    let ks = kernel_shell_of_term(&t)?;
    let (g, r) = shell_reduce(&ks.s.clone(), &ks)?;
    if args.verify {
        check_decomposition(&ks, &g, &r)?;
    }
    let mut report = Report::new(input_text, &ks, &r);
    report.certificate = Some(format!("{g}"));
    report.status = if r.is_zero() { "summable" } else { "none" }.into();
    println!("{}", report.render(args.format == Format::Json));
    Ok(0)
}

fn telescope(args: TelescopeArgs) -> Result<i32, AppError> {
    let (t, input_text) = load_term(&args.input)?;
    let ks = kernel_shell_of_term(&t)?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    match reduction_ct(&t, args.max_order) {
        Ok(tel) => {
            if args.input.verify {
                verify_telescoper(&t, &tel).map_err(|e| {
                    AppError::VerificationFailed(format!(
                        "telescoper re-verification failed: {e}"
                    ))
                })?;
                numeric_spot_checks(&t, &tel, args.input.seed.unwrap_or(1))?;
            }
            let mut report = Report::new(input_text, &ks, &r);
            report.set_telescoper(&tel);
            if let Ok(b) = bounds_report(&t) {
                report.set_bounds(&b);
            }
            report.status = "found".into();
            println!("{}", report.render(args.input.format == Format::Json));
            Ok(0)
        }
        Err(Error::NoTelescoper { witness }) => {
            let mut report = Report::new(input_text, &ks, &r);
            report.status = "none".into();
            println!("{}", report.render(args.input.format == Format::Json));
            eprintln!("no telescoper exists: denominator factor {witness} is not integer-linear");
            Ok(2)
        }
        Err(e) => Err(e.into()),
    }
}

fn bounds(args: InputArgs) -> Result<i32, AppError> {
    let (t, input_text) = load_term(&args)?;
    let ks = kernel_shell_of_term(&t)?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    match bounds_report(&t) {
        Ok(b) => {
            let mut report = Report::new(input_text, &ks, &r);
            report.set_bounds(&b);
            report.status = if r.is_zero() { "summable" } else { "found" }.into();
            println!("{}", report.render(args.format == Format::Json));
            Ok(0)
        }
        Err(Error::NoTelescoper { witness }) => {
            let mut report = Report::new(input_text, &ks, &r);
            report.status = "none".into();
            println!("{}", report.render(args.format == Format::Json));
            eprintln!("no telescoper exists: denominator factor {witness} is not integer-linear");
            Ok(2)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(args: VerifyArgs) -> Result<i32, AppError> {
    let (t, input_text) = load_term(&args.input)?;
    let ks = kernel_shell_of_term(&t)?;
    let mut coefficients = Vec::new();
    for text in &args.coefficients {
        coefficients.push(parse::parse_x_polynomial(text)?);
    }
    while coefficients.len() > 1 && coefficients.last().map_or(false, |c| c.is_zero()) {
        coefficients.pop();
    }
    if coefficients.iter().all(|c| c.is_zero()) {
        return Err(AppError::Usage(
            "the operator needs at least one nonzero coefficient".into(),
        ));
    }
    let certificate = parse::parse_rational(&args.certificate)?;
    let tel = Telescoper {
        order: coefficients.len() - 1,
        coefficients,
        certificate,
        kernel: ks.clone(),
    };
    verify_telescoper(&t, &tel).map_err(|e| {
        AppError::VerificationFailed(format!("the identity L(T) = Δ_y(G) fails: {e}"))
    })?;
    numeric_spot_checks(&t, &tel, args.input.seed.unwrap_or(1))?;
    let (_, r) = shell_reduce(&ks.s.clone(), &ks)?;
    let mut report = Report::new(input_text, &ks, &r);
    report.set_telescoper(&tel);
    report.status = "found".into();
    println!("{}", report.render(args.input.format == Format::Json));
    Ok(0)
}

/// Exact re-check of `S = K·σ_y(g) − g + a/b + q/v` on the shell level.
fn check_decomposition(
    ks: &KernelShell,
    g: &RatXY,
    r: &ResidualForm,
) -> Result<(), AppError> {
    let fraction = RatFun::new(r.a.clone(), r.b.clone());
    let tail = RatFun::new(r.q.clone(), ks.v.clone());
    let lhs = ks
        .k
        .mul(&g.shift_y(1))
        .sub(g)
        .add(&fraction)
        .add(&tail);
    if lhs == ks.s {
        Ok(())
    } else {
        Err(AppError::VerificationFailed(
            "the additive decomposition does not reproduce the shell".into(),
        ))
    }
}

/// Evaluate a rational function at an integer point, `None` on poles.
fn eval_ratxy(q: &RatXY, x: i64, y: i64) -> Option<Rat> {
    let xr = rat_int(x);
    let yr = rat_int(y);
    let eval_poly = |p: &PolyY| -> Option<Rat> {
        let mut acc = Rat::zero();
        let mut ypow = Rat::one();
        for c in p.coeffs() {
            let den = c.den().eval(&xr);
            if den.is_zero() {
                return None;
            }
            acc = acc + c.num().eval(&xr) / den * ypow.clone();
            ypow = ypow * yr.clone();
        }
        Some(acc)
    };
    let n = eval_poly(q.num())?;
    let d = eval_poly(q.den())?;
    if d.is_zero() {
        None
    } else {
        Some(n / d)
    }
}

/// Seeded numeric samples of `L(T)(x,y) = G(x,y+1) − G(x,y)` at integer
/// points, available when the term came from an explicit expression.
/// Points where any value is undefined (poles, negative factorials) are
/// skipped; a mismatch at a defined point is a hard failure.
fn numeric_spot_checks(t: &HyperTerm, tel: &Telescoper, seed: u64) -> Result<(), AppError> {
    let Some(expr) = &t.provenance else {
        return Ok(());
    };
    let ratio = tel.certificate_to_term_ratio();
    let mut rng = XorShift::new(seed);
    let mut checked = 0;
    for _ in 0..200 {
        if checked == 8 {
            break;
        }
        let x = rng.range_i64(1, 20);
        let y = rng.range_i64(0, 20);
        let Some(points) = sample_values(expr, tel, x, y) else {
            continue;
        };
        let Some(gy0) = eval_ratxy(&ratio, x, y) else {
            continue;
        };
        let Some(gy1) = eval_ratxy(&ratio, x, y + 1) else {
            continue;
        };
        let Some(ty1) = eval_integer_point(expr, x, y + 1) else {
            continue;
        };
        let mut lhs = Rat::zero();
        for (i, e) in tel.coefficients.iter().enumerate() {
            lhs = lhs + e.eval(&rat_int(x)) * points[i].clone();
        }
        let rhs = gy1 * ty1 - gy0 * points[0].clone();
        if lhs != rhs {
            return Err(AppError::VerificationFailed(format!(
                "numeric check failed at x = {x}, y = {y}"
            )));
        }
        checked += 1;
    }
    Ok(())
}

fn sample_values(
    expr: &hyperct::term::TermExpr,
    tel: &Telescoper,
    x: i64,
    y: i64,
) -> Option<Vec<Rat>> {
    let mut points = Vec::with_capacity(tel.order + 1);
    for i in 0..=tel.order as i64 {
        points.push(eval_integer_point(expr, x + i, y)?);
    }
    Some(points)
}
