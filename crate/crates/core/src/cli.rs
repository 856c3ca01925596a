//! Command-line front end. `run` parses arguments and returns what should be
//! printed and the exit code, so it can be driven in-process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::rational::fmt_rational;
use crate::algebra::{parse_rational, ComplexApprox, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::lambinom::{lb_expand, lb_general, BasisSpec};
use crate::ops::{d_lambda_n, i_lambda_n, OperatorContext};
use crate::qsymbols::{
    big_e_q, e_q, residual_big_e, residual_small_e, solution_big_e, solution_small_e,
    TruncationConfig,
};
use crate::taylor::{
    connect_monomial, connect_pochhammer, connect_rogers_szego, connect_stieltjes_wigert,
    connect_two_point, taylor_via_connection, taylor_via_system, ConnectionReport,
};
use crate::verify::{parse_suites, VerificationReport};

#[derive(Parser, Debug)]
#[command(name = "lamcalc", version, about = "Exact λ-calculus on Laurent polynomials")]
struct Cli {
    /// Emit one JSON object instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Significant digits for numeric evaluation
    #[arg(long, global = true, env = "LAMCALC_PREC", default_value_t = 50)]
    prec: u32,
    /// Truncation tolerance for infinite products and series
    #[arg(long, global = true, default_value_t = 1e-30)]
    tol: f64,
    /// Master seed for randomized verification
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand (x − a)_λ^n in powers of x⁻¹
    Expand(ExpandArgs),
    /// Apply D_λ^order to a Laurent polynomial
    Dlam(OperatorArgs),
    /// Apply Î_λ^order to a Laurent polynomial
    Ilam(OperatorArgs),
    /// λ-Taylor coefficients of a polynomial in x⁻¹
    Taylor(TaylorArgs),
    /// Connection coefficients of a polynomial family
    Connect(ConnectArgs),
    /// Evaluate a numeric expression
    Eval(EvalArgs),
    /// Run the randomized identity suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "2")]
    lambda: String,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
struct OperatorArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value_t = 1)]
    order: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    System,
    Connection,
    Both,
}

#[derive(Args, Debug)]
struct TaylorArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Monomial,
    Twopoint,
    Pochhammer,
    Rs,
    Sw,
}

#[derive(Args, Debug)]
struct ConnectArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expr {
    Binomial,
    #[value(name = "solE")]
    SolBigE,
    #[value(name = "sole")]
    SolSmallE,
    #[value(name = "eq")]
    SmallEq,
    #[value(name = "Eq")]
    BigEq,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    expr: Expr,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "2")]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    alpha: String,
    /// Imaginary part of α
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    alpha_im: String,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub message: String,
}

/// What a single invocation prints and how it exits.
#[derive(Clone, Debug)]
pub struct Invocation {
    pub result: Option<CommandResult>,
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Success {
    payload: Value,
    text: String,
    /// Set by `verify` when an assertable suite fails.
    failed_verification: bool,
}

impl Success {
    fn new(payload: Value, text: String) -> Self {
        Self {
            payload,
            text,
            failed_verification: false,
        }
    }
}

pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Invocation {
                result: None,
                stdout,
                stderr,
                code,
            };
        }
    };

    let outcome = dispatch(&cli);
    let (result, text, code) = match outcome {
        Ok(s) if s.failed_verification => (
            CommandResult {
                status: Status::Error,
                payload: s.payload,
                message: "an assertable verification suite failed".into(),
            },
            s.text,
            2,
        ),
        Ok(s) => (
            CommandResult {
                status: Status::Ok,
                payload: s.payload,
                message: "ok".into(),
            },
            s.text,
            0,
        ),
        Err(e) => {
            let message = e.to_string();
            (
                CommandResult {
                    status: Status::Error,
                    payload: Value::Null,
                    message: message.clone(),
                },
                format!("error: {message}"),
                1,
            )
        }
    };

    let (stdout, stderr) = if cli.json {
        (
            serde_json::to_string(&result).expect("serializable") + "\n",
            String::new(),
        )
    } else if code == 1 {
        (String::new(), text + "\n")
    } else {
        (text + "\n", String::new())
    };
    Invocation {
        result: Some(result),
        stdout,
        stderr,
        code,
    }
}

fn dispatch(cli: &Cli) -> Result<Success> {
    match &cli.command {
        Command::Expand(args) => {
            let spec = BasisSpec::new(rational(&args.a)?, rational(&args.lambda)?)?;
            Ok(poly_success(&lb_expand(&spec, args.n)))
        }
        Command::Dlam(args) | Command::Ilam(args) => {
            let f: LaurentPoly = args.poly.parse()?;
            let ctx = OperatorContext::new(rational(&args.lambda)?)?;
            let out = if matches!(cli.command, Command::Dlam(_)) {
                d_lambda_n(&f, &ctx, args.order)
            } else {
                i_lambda_n(&f, &ctx, args.order)
            };
            Ok(poly_success(&out))
        }
        Command::Taylor(args) => taylor(args),
        Command::Connect(args) => connect(args),
        Command::Eval(args) => eval(args, &truncation(cli)?),
        Command::Verify(args) => verify(args, cli.seed),
    }
}

fn truncation(cli: &Cli) -> Result<TruncationConfig> {
    TruncationConfig::new(cli.prec, cli.tol, TruncationConfig::default().max_terms)
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim())
}

/// A rational `p/q` or a finite decimal such as `-0.25` or `1.5e-3`.
fn number(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Ok(r) = parse_rational(s) {
        return Ok(r);
    }
    let bad = || Error::MalformedRational(s.to_string());
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int_part}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - i32::try_from(frac.len()).map_err(|_| bad())?;
    let ten = Rational::from_integer(BigInt::from(10));
    value *= ten.pow(shift);
    Ok(if neg { -value } else { value })
}

fn poly_json(p: &LaurentPoly) -> Value {
    let mut map = Map::new();
    for (e, c) in p.terms() {
        map.insert(e.to_string(), Value::String(fmt_rational(c)));
    }
    Value::Object(map)
}

fn poly_success(p: &LaurentPoly) -> Success {
    Success::new(json!({ "poly": poly_json(p), "text": p.to_string() }), p.to_string())
}

fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(fmt_rational(c))).collect())
}

fn rationals_text(v: &[Rational]) -> String {
    let items: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", items.join(", "))
}

fn taylor(args: &TaylorArgs) -> Result<Success> {
    let f: LaurentPoly = args.poly.parse()?;
    let a = rational(&args.a)?;
    let lambda = rational(&args.lambda)?;
    let coeffs = match args.method {
        Method::System => taylor_via_system(&f, &a, &lambda)?.coeffs().to_vec(),
        Method::Connection => taylor_via_connection(&f, &a, &lambda)?.coeffs().to_vec(),
        Method::Both => {
            let sys = taylor_via_system(&f, &a, &lambda)?;
            let con = taylor_via_connection(&f, &a, &lambda)?;
            if sys != con {
                return Err(Error::Domain(format!(
                    "methods disagree: system {} vs connection {}",
                    rationals_text(sys.coeffs()),
                    rationals_text(con.coeffs())
                )));
            }
            let text = format!("{}\nmethods_agree: true", rationals_text(sys.coeffs()));
            return Ok(Success::new(
                json!({ "coeffs": rationals_json(sys.coeffs()), "methods_agree": true }),
                text,
            ));
        }
    };
    Ok(Success::new(
        json!({ "coeffs": rationals_json(&coeffs) }),
        rationals_text(&coeffs),
    ))
}

fn connect(args: &ConnectArgs) -> Result<Success> {
    let a = rational(&args.a)?;
    let lambda = rational(&args.lambda)?;
    let n = args.n;
    let report: ConnectionReport = match args.family {
        Family::Monomial => connect_monomial(n, &a, &lambda)?,
        Family::Twopoint => {
            let b = args
                .b
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--b is required for twopoint".into()))?;
            connect_two_point(n, &a, &rational(b)?, &lambda)?
        }
        Family::Pochhammer => connect_pochhammer(n, &a, &lambda)?,
        Family::Rs => connect_rogers_szego(n, &a, &lambda)?,
        Family::Sw => connect_stieltjes_wigert(n, &a, &lambda)?,
    };
    let agree = report.agreement();
    let mut payload = json!({
        "family": report.name,
        "truth": rationals_json(report.truth()),
        "closed_form": rationals_json(&report.closed_form),
        "agree": agree,
    });
    let flags: Vec<String> = agree.iter().map(bool::to_string).collect();
    let mut text = format!(
        "truth: {}\nclosed form: {}\nagree: [{}]",
        rationals_text(report.truth()),
        rationals_text(&report.closed_form),
        flags.join(", ")
    );
    if let Some(unsigned) = &report.unsigned_form {
        payload["closed_form_unsigned"] = rationals_json(unsigned);
        text.push_str(&format!("\nclosed form without (-1)^k: {}", rationals_text(unsigned)));
    }
    Ok(Success::new(payload, text))
}

fn eval(args: &EvalArgs, cfg: &TruncationConfig) -> Result<Success> {
    let digits = cfg.precision_digits;
    let cx = |q: &Rational| ComplexApprox::from_rational(q, digits);
    let required = |v: &Option<String>, name: &str| -> Result<Rational> {
        number(v.as_deref().ok_or_else(|| Error::InvalidParameter(format!("--{name} is required")))?)
    };
    let a = number(&args.a)?;
    let lambda = number(&args.lambda)?;
    let (value, residual) = match args.expr {
        Expr::Binomial => {
            let spec = BasisSpec::new(a, lambda)?;
            let alpha = ComplexApprox::from_rationals(&number(&args.alpha)?, &number(&args.alpha_im)?, digits)?;
            let x = cx(&required(&args.x, "x")?)?;
            (lb_general(&spec, &alpha, &x, cfg)?, None)
        }
        Expr::SolBigE => {
            let x = cx(&required(&args.x, "x")?)?;
            (
                solution_big_e(&a, &lambda, &x, cfg)?,
                Some(residual_big_e(&a, &lambda, &x, cfg)?),
            )
        }
        Expr::SolSmallE => {
            let x = cx(&required(&args.x, "x")?)?;
            (
                solution_small_e(&a, &lambda, &x, cfg)?,
                Some(residual_small_e(&a, &lambda, &x, cfg)?),
            )
        }
        Expr::SmallEq | Expr::BigEq => {
            let z = cx(&required(&args.z, "z")?)?;
            let q = cx(&required(&args.q, "q")?)?;
            let v = if matches!(args.expr, Expr::SmallEq) {
                e_q(&z, &q, cfg)?
            } else {
                big_e_q(&z, &q, cfg)?
            };
            (v, None)
        }
    };
    let sig = digits as usize;
    let value_text = value.to_decimal_string(sig);
    let mut payload = json!({ "value": value_text });
    let mut text = value_text;
    if let Some(r) = residual {
        let r_text = r.to_decimal_string(6);
        payload["residual"] = Value::String(r_text.clone());
        text.push_str(&format!("\nresidual: {r_text}"));
    }
    Ok(Success::new(payload, text))
}

fn verify(args: &VerifyArgs, seed: u64) -> Result<Success> {
    let suites = parse_suites(&args.suite)?;
    let report = crate::verify::run(&suites, args.trials, seed);
    let text = verify_text(&report);
    Ok(Success {
        payload: serde_json::to_value(&report).expect("serializable"),
        text,
        failed_verification: !report.all_assertable_pass(),
    })
}

fn verify_text(report: &VerificationReport) -> String {
    let mut lines = vec![format!("seed {}", report.seed)];
    for s in &report.suites {
        let mark = if s.passed() { "PASS" } else { "FAIL" };
        lines.push(format!("{mark} {}: {}/{} trials passed", s.name, s.passes, s.trials));
        for c in &s.counterexamples {
            lines.push(format!(
                "  trial {} (sub-seed {}): {} failed\n    inputs: {}\n    lhs: {}\n    rhs: {}",
                c.trial, c.sub_seed, c.check, c.inputs, c.lhs, c.rhs
            ));
        }
        for n in &s.discrepancy_notes {
            lines.push(format!(
                "  note [{}] {}: truth [{}] closed form [{}]; {}",
                n.family,
                n.inputs,
                n.truth.join(", "),
                n.closed_form.join(", "),
                n.summary
            ));
        }
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> Invocation {
        run(std::iter::once("lamcalc").chain(args.iter().copied()))
    }

    #[test]
    fn decimal_numbers() {
        use crate::algebra::rational::rat;
        assert_eq!(number("0.5").unwrap(), rat(1, 2));
        assert_eq!(number("-1.25e1").unwrap(), rat(-25, 2));
        assert_eq!(number("3/4").unwrap(), rat(3, 4));
        assert_eq!(number("2e-3").unwrap(), rat(1, 500));
        assert!(number("1.2.3").is_err());
        assert!(number("").is_err());
    }

    #[test]
    fn expand_examples() {
        assert_eq!(out(&["expand", "--a", "1", "--lambda", "2", "--n", "2"]).stdout, "0:1,-1:-3/2,-2:1/2\n");
        assert_eq!(out(&["expand", "--n", "0"]).stdout, "0:1\n");
        let r = out(&["expand", "--lambda", "0", "--n", "1"]);
        assert_eq!(r.code, 1);
        assert!(!r.result.unwrap().message.is_empty());
    }

    #[test]
    fn operator_examples() {
        assert_eq!(out(&["dlam", "--poly", "2:1,0:3", "--lambda", "2"]).stdout, "1:4,-1:3\n");
        assert_eq!(out(&["ilam", "--poly", "0:1", "--lambda", "2"]).stdout, "1:1/2\n");
        assert_eq!(out(&["dlam", "--order", "0", "--poly", "1:1", "--lambda", "5"]).stdout, "1:1\n");
        assert_eq!(out(&["dlam", "--poly", "1:x", "--lambda", "5"]).code, 1);
    }

    #[test]
    fn json_shape() {
        let r = out(&["--json", "expand", "--a", "1", "--lambda", "2", "--n", "2"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["payload"]["poly"]["-1"], "-3/2");
        assert_eq!(v["payload"]["poly"]["0"], "1");
        let r = out(&["--json", "expand", "--lambda", "0", "--n", "1"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["status"], "error");
        assert_eq!(r.code, 1);
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(out(&["taylor", "--poly", "-1:1", "--a", "2", "--lambda", "3"]).stdout, "[1/2, -1/2]\nmethods_agree: true\n");
        assert_eq!(out(&["taylor", "--poly", "0:7", "--a", "5", "--lambda", "2", "--method", "system"]).stdout, "[7]\n");
        assert_eq!(
            out(&["taylor", "--poly", "-2:1", "--a", "1", "--lambda", "2", "--method", "both"]).stdout,
            "[1, -3, 2]\nmethods_agree: true\n"
        );
        assert_eq!(out(&["taylor", "--poly", "1:1", "--a", "1", "--lambda", "2"]).code, 1);
        assert_eq!(out(&["taylor", "--poly", "-1:1", "--a", "0", "--lambda", "2"]).code, 1);
        assert_eq!(out(&["taylor", "--poly", "-1:1", "--a", "1", "--lambda", "-1"]).code, 1);
    }

    #[test]
    fn connect_examples() {
        let r = out(&["--json", "connect", "--family", "twopoint", "--n", "1", "--a", "2", "--b", "1", "--lambda", "3"]);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["payload"]["truth"], json!(["1/2", "1/2"]));
        assert_eq!(v["payload"]["closed_form"], json!(["1/2", "-1/2"]));
        assert_eq!(v["payload"]["agree"], json!([true, false]));
        assert_eq!(out(&["connect", "--family", "twopoint", "--n", "1", "--a", "2", "--lambda", "3"]).code, 1);
        let r = out(&["connect", "--family", "sw", "--n", "0", "--a", "1", "--lambda", "1/2"]);
        assert_eq!(r.stdout, "truth: [1]\nclosed form: [1]\nagree: [true]\n");
    }

    #[test]
    fn eval_examples() {
        let r = out(&["eval", "--expr", "eq", "--z", "0.5", "--q", "0", "--prec", "30"]);
        assert!(r.stdout.starts_with("2.0000000000"), "{}", r.stdout);
        let r = out(&["eval", "--expr", "binomial", "--alpha", "0", "--x", "3"]);
        assert!(r.stdout.starts_with("1.0000000000"), "{}", r.stdout);
        let r = out(&["--json", "eval", "--expr", "solE", "--a", "1", "--lambda", "2", "--x", "3", "--prec", "50"]);
        assert_eq!(r.code, 0);
        assert_eq!(out(&["eval", "--expr", "eq", "--z", "2", "--q", "1/2"]).code, 1);
        assert_eq!(out(&["eval", "--expr", "eq", "--z", "1/2", "--q", "1/2", "--prec", "10"]).code, 1);
    }

    #[test]
    fn verify_exit_codes() {
        let r = out(&["verify", "--suite", "all", "--trials", "0"]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "seed 42\n");
        assert_eq!(out(&["verify", "--suite", "bogus"]).code, 1);
        let a = out(&["--json", "verify", "--suite", "ops", "--trials", "5", "--seed", "1"]);
        let b = out(&["--json", "verify", "--suite", "ops", "--trials", "5", "--seed", "1"]);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
    }

    #[test]
    fn help_exits_zero() {
        let r = out(&["--help"]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.contains("verify"));
    }
}
