//! Command-line front end.
//!
//! Results go to stdout. Failures print a JSON object
//! `{"code", "message", "context"}` on stderr and exit with 1 (a check did
//! not come out as expected), 2 (usage, parse or input errors) or 3 (degree
//! or regime errors).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

use crate::axioms::{run_axiom_suite, run_reduction_suite, Axiom};
use crate::classical::{independence_equivalence, FiniteProbSpace, RandomVariable};
use crate::error::Error;
use crate::expr::parse_expression;
use crate::moments::MomentFunctional;
use crate::products::{clt_moment, eval_graded_tensor, JointFunctional, ProductKind};
use crate::rational::{format_decimal, format_rational, parse_rational, Rational};
use crate::reductions::ReductionKind;
use crate::word::FreeProduct;

#[derive(Debug, Parser)]
#[command(name = "ncprob", version, about = "Exact mixed moments under noncommutative independences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression under a product of states.
    Eval {
        /// tensor, free, boolean, monotone, antimonotone, degenerate,
        /// q:<base>:<q> or fermi
        #[arg(long)]
        product: String,
        /// State files, one per factor, in order.
        #[arg(long = "state", required = true)]
        states: Vec<PathBuf>,
        #[arg(long)]
        expr: String,
    },
    /// Run an axiom check, or `check reduction` for the reduction sweeps.
    #[command(args_conflicts_with_subcommands = true)]
    Check {
        #[command(subcommand)]
        sub: Option<CheckCommand>,
        #[command(flatten)]
        axiom: AxiomArgs,
    },
    /// Moments of a sum of N identically distributed independent variables.
    Clt {
        #[arg(long)]
        product: String,
        /// Comma-separated moments m1,...,mD.
        #[arg(long)]
        moments: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
    },
    /// Finite classical probability.
    Classical {
        #[command(subcommand)]
        sub: ClassicalCommand,
    },
    /// State file utilities.
    State {
        #[command(subcommand)]
        sub: StateCommand,
    },
}

#[derive(Debug, Args)]
struct AxiomArgs {
    #[arg(long)]
    axiom: Option<String>,
    #[arg(long)]
    product: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: u64,
    #[arg(long = "max-len", default_value_t = 6)]
    max_len: usize,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Verify a reduction on random state pairs and all short words.
    Reduction {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long = "max-len", default_value_t = 5)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ClassicalCommand {
    /// Compare the two characterizations of independence.
    Independence {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum StateCommand {
    /// Extend a non-unital state to the unitization.
    Unitize {
        #[arg(long)]
        state: PathBuf,
    },
}

/// A failed command: what to print on stderr and the exit code.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: &'static str,
    pub message: String,
    pub context: Value,
}

impl Failure {
    fn engine(err: Error, context: Value) -> Self {
        let (exit, code) = classify(&err);
        let mut context = context;
        if let Error::Parse { offset, .. } = &err {
            context["offset"] = json!(offset);
        }
        Self {
            exit,
            code,
            message: err.to_string(),
            context,
        }
    }

    fn usage(message: String) -> Self {
        Self {
            exit: 2,
            code: "usage",
            message,
            context: json!({}),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.context = json!({ "detail": detail.trim_end() });
        self
    }

    pub fn to_json(&self) -> String {
        json!({ "code": self.code, "message": self.message, "context": self.context }).to_string()
    }
}

fn classify(err: &Error) -> (i32, &'static str) {
    match err {
        Error::DegreeExceeded { .. } => (3, "degree_exceeded"),
        Error::RegimeMismatch(_) => (3, "regime_mismatch"),
        Error::NotEven(_) => (3, "not_even"),
        Error::EmptyMonomial => (3, "empty_monomial"),
        Error::ZeroScale => (3, "zero_scale"),
        Error::AlreadyUnital => (3, "already_unital"),
        Error::NotApplicable { .. } => (3, "not_applicable"),
        Error::Parse { .. } => (2, "parse_error"),
        Error::InvalidRational(_) => (2, "invalid_rational"),
        Error::UnknownAlgebra(_) => (2, "unknown_algebra"),
        Error::UnknownGenerator { .. } => (2, "unknown_generator"),
        Error::DuplicateGenerator { .. } => (2, "duplicate_generator"),
        Error::InvalidDegree(_) => (2, "invalid_degree"),
        Error::FactorOutOfRange { .. } => (2, "factor_out_of_range"),
        Error::SignatureMismatch(_) => (2, "signature_mismatch"),
        Error::InvalidState(_) => (2, "invalid_state"),
        Error::InvalidSpace(_) => (2, "invalid_space"),
        Error::DomainMismatch => (2, "domain_mismatch"),
        Error::Document(_) => (2, "invalid_document"),
    }
}

/// Output of a command that ran: stdout text and exit code.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub exit: i32,
}

type CmdResult = std::result::Result<Output, Failure>;

fn ok(stdout: String) -> CmdResult {
    Ok(Output { stdout, exit: 0 })
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        exit: 2,
        code: "io",
        message: e.to_string(),
        context: json!({ "file": path.display().to_string() }),
    })
}

fn in_file<T>(path: &Path, r: crate::error::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::engine(e, json!({ "file": path.display().to_string() })))
}

fn with_context<T>(r: crate::error::Result<T>, context: Value) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::engine(e, context))
}

fn exact_and_decimal(v: &Rational) -> String {
    format!("{}\ndecimal {}\n", format_rational(v), format_decimal(v))
}

fn eval(product: &str, states: &[PathBuf], expr: &str) -> CmdResult {
    let phis = states
        .iter()
        .map(|p| {
            let text = read(p)?;
            in_file(p, MomentFunctional::from_json(&text))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let ctx = json!({ "product": product });
    let space = with_context(
        FreeProduct::new(phis.iter().map(|s| s.algebra().clone()).collect()),
        ctx.clone(),
    )?;
    let poly = with_context(parse_expression(&space, expr), json!({ "expr": expr }))?;
    let value = if product.trim().eq_ignore_ascii_case("fermi") {
        let mut acc = Rational::zero();
        for (w, c) in poly.terms() {
            acc += c * with_context(eval_graded_tensor(&phis, w), ctx.clone())?;
        }
        acc
    } else {
        let kind: ProductKind = with_context(product.parse(), ctx.clone())?;
        let joint = with_context(JointFunctional::new(phis, kind), ctx.clone())?;
        with_context(joint.eval_polynomial(&poly), ctx)?
    };
    ok(exact_and_decimal(&value))
}

fn check_axiom(args: &AxiomArgs) -> CmdResult {
    let (Some(axiom), Some(product)) = (&args.axiom, &args.product) else {
        return Err(Failure::usage(
            "check needs --axiom and --product, or the `reduction` subcommand".into(),
        ));
    };
    let axiom: Axiom = with_context(axiom.parse(), json!({ "axiom": axiom }))?;
    let kind: ProductKind = with_context(product.parse(), json!({ "product": product }))?;
    let ctx = json!({ "axiom": axiom.to_string(), "product": kind.to_string() });
    let report = with_context(
        run_axiom_suite(axiom, &kind, args.seed, args.trials, args.max_len),
        ctx,
    )?;
    Ok(Output {
        stdout: report.to_json() + "\n",
        exit: if report.as_expected() { 0 } else { 1 },
    })
}

fn check_reduction(kind: &str, seed: u64, trials: u64, max_len: usize) -> CmdResult {
    let kind: ReductionKind = with_context(kind.parse(), json!({ "kind": kind }))?;
    let report = with_context(
        run_reduction_suite(kind, seed, trials, max_len),
        json!({ "kind": kind.to_string() }),
    )?;
    Ok(Output {
        stdout: report.to_json() + "\n",
        exit: if report.passed() { 0 } else { 1 },
    })
}

fn clt(product: &str, moments: &str, n: usize, order: usize) -> CmdResult {
    let kind: ProductKind = with_context(product.parse(), json!({ "product": product }))?;
    let moments = moments
        .split(',')
        .map(|m| with_context(parse_rational(m), json!({ "moments": moments })))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let value = with_context(
        clt_moment(&kind, &moments, n, order),
        json!({ "product": kind.to_string(), "n": n, "order": order }),
    )?;
    let mut out = exact_and_decimal(&value);
    if order.is_multiple_of(2) && n > 0 {
        let scale = Rational::from_integer(Pow::pow(BigInt::from(n), order / 2));
        let normalized = &value / scale;
        out.push_str(&format!(
            "normalized {}\nnormalized-decimal {}\n",
            format_rational(&normalized),
            format_decimal(&normalized)
        ));
    }
    ok(out)
}

fn independence(space: &Path, x: &Path, y: &Path) -> CmdResult {
    let omega = in_file(space, FiniteProbSpace::from_json(&read(space)?))?;
    let x1 = in_file(x, RandomVariable::from_json(&omega, &read(x)?))?;
    let x2 = in_file(y, RandomVariable::from_json(&omega, &read(y)?))?;
    let r = with_context(independence_equivalence(&x1, &x2), json!({}))?;
    ok(format!("atomwise {}\njointfactor {}\n", r.atomwise, r.jointfactor))
}

fn unitize(state: &Path) -> CmdResult {
    let phi = in_file(state, MomentFunctional::from_json(&read(state)?))?;
    let extended = in_file(state, phi.unitize())?;
    ok(extended.to_json() + "\n")
}

/// Parses `argv` (including the program name) and runs the command. Help and
/// version requests come back as successful output.
pub fn run<I, T>(argv: I) -> CmdResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ok(e.to_string()),
                _ => Err(Failure::usage(e.kind().to_string()).with_detail(e.render().to_string())),
            };
        }
    };
    match &cli.command {
        Command::Eval {
            product,
            states,
            expr,
        } => eval(product, states, expr),
        Command::Check { sub: Some(CheckCommand::Reduction { kind, seed, trials, max_len }), .. } => {
            check_reduction(kind, *seed, *trials, *max_len)
        }
        Command::Check { sub: None, axiom } => check_axiom(axiom),
        Command::Clt {
            product,
            moments,
            n,
            order,
        } => clt(product, moments, *n, *order),
        Command::Classical {
            sub: ClassicalCommand::Independence { space, x, y },
        } => independence(space, x, y),
        Command::State {
            sub: StateCommand::Unitize { state },
        } => unitize(state),
    }
}
