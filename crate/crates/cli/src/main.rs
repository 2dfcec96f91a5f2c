//! `qbessel` — evaluate, tabulate and verify q-Bessel and q-Macdonald
//! functions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain or usage error,
//! 3 convergence failure.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::{json, Value};

use qbessel::verify::{self, Grid, IdentityReport, Suite, VerifyConfig};
use qbessel::{
    classical, jackson_j, macdonald_k, modified_i,
    qbessel::i_eval_path,
    qintegral::q_const,
    qmacdonald::{k_eval_path, macdonald_k1_closed, macdonald_k2_closed},
    DoubleDouble, Kind, QBase, QError, Real, SeriesPolicy, SeriesResult,
};

const CSV_HEADER: &str = "func,kind,nu,q,z_re,z_im,value_re,value_im,converged";

#[derive(Parser)]
#[command(name = "qbessel", version, about = "q-Bessel and q-Bessel-Macdonald functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Relative truncation threshold for series.
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Maximum number of series terms.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Perturb the k = 1 coefficient of the I-series (harness self-test).
    #[arg(long, global = true, hide = true)]
    inject_fault: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function value.
    Eval(EvalArgs),
    /// Tabulate a function over a real z range (CSV unless --json).
    Table(TableArgs),
    /// Run identity-verification suites.
    Verify(VerifyArgs),
    /// Compare against the classical limit along increasing q.
    LimitScan(ScanArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Func {
    #[value(name = "I")]
    I,
    #[value(name = "K")]
    K,
    #[value(name = "J")]
    J,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::I => "I",
            Func::K => "K",
            Func::J => "J",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    Auto,
    /// The closed forms of K of kinds 1 and 2.
    Closed,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    func: Func,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    kind: u8,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    z_im: String,
    #[arg(long)]
    q: String,
    #[arg(long, value_enum, default_value = "auto")]
    path: PathChoice,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    func: Func,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    kind: u8,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    #[arg(long, allow_hyphen_values = true)]
    z_start: String,
    #[arg(long, allow_hyphen_values = true)]
    z_end: String,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    q: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Exit 1 unless value_re is strictly decreasing along the table.
    #[arg(long)]
    assert_monotone: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Orders of the identity grid (comma-separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nu: Option<Vec<f64>>,
    /// Arguments of the identity grid.
    #[arg(long, value_delimiter = ',')]
    z: Option<Vec<f64>>,
    /// Bases of the identity grid.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<f64>>,
    /// Tolerance for the residual suites (default 1e-9).
    #[arg(long)]
    tol: Option<f64>,
    /// Print every row, not only the per-identity summary.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFunc {
    #[value(name = "I")]
    I,
    #[value(name = "K")]
    K,
    /// The lattice constant, whose limit is π/2.
    #[value(name = "Q")]
    Q,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    func: ScanFunc,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), default_value = "1")]
    kind: u8,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, default_value = "1")]
    z: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.9,0.99,0.999")]
    q_list: Vec<f64>,
    #[arg(long)]
    assert_monotone: bool,
}

/// A failure carrying its exit status.
struct Fail {
    code: u8,
    msg: String,
}

impl From<QError> for Fail {
    fn from(e: QError) -> Self {
        let code = match e {
            QError::NotConverged { .. } => 3,
            _ => 2,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

type CliResult = Result<u8, Fail>;

/// Scalars the CLI can parse and print.
trait Scalar: Real + FromStr {
    fn text(self) -> String;
    fn json(self) -> Value;
}

impl Scalar for f64 {
    fn text(self) -> String {
        format!("{self}")
    }
    fn json(self) -> Value {
        serde_json::Number::from_f64(self).map_or(Value::Null, Value::Number)
    }
}

impl Scalar for DoubleDouble {
    fn text(self) -> String {
        if self.is_finite() {
            self.to_sci_string(32)
        } else {
            format!("{}", self.hi())
        }
    }
    fn json(self) -> Value {
        if self.is_finite() {
            Value::String(self.text())
        } else {
            Value::Null
        }
    }
}

fn parse<R: Scalar>(what: &str, s: &str) -> Result<R, Fail> {
    s.trim().parse::<R>().map_err(|_| usage(format!("invalid number for {what}: '{s}'")))
}

fn oracle_mode() -> bool {
    std::env::var("QBESSEL_ORACLE").is_ok_and(|v| v == "1")
}

fn policy(g: &Global, oracle: bool) -> Result<SeriesPolicy, Fail> {
    let mut p = if oracle { SeriesPolicy::oracle() } else { SeriesPolicy::default() };
    if let Some(e) = g.eps {
        p.eps_series = e;
    }
    if let Some(m) = g.max_terms {
        p.max_terms = m;
    }
    if let Some(f) = g.inject_fault {
        p.fault = f;
    }
    p.validate()?;
    Ok(p)
}

fn kind_of(j: u8) -> Kind {
    Kind::from_j(j).expect("clap restricts kind to 1..=3")
}

fn evaluate<R: Scalar>(
    func: Func,
    kind: Kind,
    nu: R,
    z: Complex<R>,
    qb: &QBase<R>,
    path: PathChoice,
    p: &SeriesPolicy,
) -> Result<(SeriesResult<R>, &'static str), QError> {
    let label = |e: qbessel::qbessel::EvalPath| match e {
        qbessel::qbessel::EvalPath::Series => "series",
        qbessel::qbessel::EvalPath::Continuation => "continuation",
        qbessel::qbessel::EvalPath::ClosedForm => "closed-form",
        qbessel::qbessel::EvalPath::Limit => "limit",
    };
    match (func, path) {
        (Func::I, _) => Ok((modified_i(kind, nu, z, qb, p)?, label(i_eval_path(kind, z, qb)))),
        (Func::J, _) => {
            let path = if kind == Kind::One
                && (qbessel::cx::abs(z) * qb.lambda()).to_f64() >= qbessel::qbessel::KIND1_SWITCH
            {
                "continuation"
            } else {
                "series"
            };
            Ok((jackson_j(kind, nu, z, qb, p)?, path))
        }
        (Func::K, PathChoice::Auto) => Ok((macdonald_k(kind, nu, z, qb, p)?, label(k_eval_path(kind, nu, z, qb)))),
        (Func::K, PathChoice::Closed) => {
            let v = match kind {
                Kind::One => macdonald_k1_closed(nu, z, qb, p)?,
                Kind::Two => macdonald_k2_closed(nu, z, qb, p)?,
                Kind::Three => return Err(QError::Domain("no closed form for K of kind 3".into())),
            };
            Ok((SeriesResult::exact(v, 0), "closed-form"))
        }
    }
}

fn cmd_eval<R: Scalar>(a: &EvalArgs, g: &Global, oracle: bool) -> CliResult {
    let p = policy(g, oracle)?;
    let nu: R = parse("--nu", &a.nu)?;
    let z = Complex::new(parse::<R>("--z", &a.z)?, parse::<R>("--z-im", &a.z_im)?);
    let qb = QBase::new(parse::<R>("--q", &a.q)?)?;
    let kind = kind_of(a.kind);
    if a.path == PathChoice::Closed && a.func != Func::K {
        return Err(usage("--path closed applies to K only"));
    }
    let (r, path) = evaluate(a.func, kind, nu, z, &qb, a.path, &p)?;
    let mode = if oracle { "oracle" } else { "standard" };
    if g.json {
        let doc = json!({
            "func": a.func.name(),
            "kind": a.kind,
            "nu": nu.json(),
            "q": qb.q().json(),
            "z_re": z.re.json(),
            "z_im": z.im.json(),
            "value_re": r.value.re.json(),
            "value_im": r.value.im.json(),
            "terms_used": r.terms_used,
            "tail_bound": r.tail_bound.json(),
            "converged": r.converged,
            "path": path,
            "mode": mode,
        });
        println!("{doc}");
    } else {
        println!(
            "{}^({}) nu={} z={}{:+}i q={}",
            a.func.name(),
            a.kind,
            nu.text(),
            z.re.text(),
            z.im.to_f64(),
            qb.q().text()
        );
        println!("value_re   = {}", r.value.re.text());
        println!("value_im   = {}", r.value.im.text());
        println!("terms_used = {}", r.terms_used);
        println!("tail_bound = {:e}", r.tail_bound);
        println!("converged  = {}", r.converged);
        println!("path       = {path}");
        println!("mode       = {mode}");
    }
    Ok(0)
}

fn cmd_table<R: Scalar>(a: &TableArgs, g: &Global, oracle: bool) -> CliResult {
    let p = policy(g, oracle)?;
    let nu: R = parse("--nu", &a.nu)?;
    let (z0, z1): (R, R) = (parse("--z-start", &a.z_start)?, parse("--z-end", &a.z_end)?);
    let qb = QBase::new(parse::<R>("--q", &a.q)?)?;
    if a.steps == 0 || !z0.is_finite() || !z1.is_finite() {
        return Err(usage("table needs steps >= 1 and a finite z range"));
    }
    let kind = kind_of(a.kind);
    let nan = R::from_f64(f64::NAN);
    let rows: Vec<(R, Complex<R>, bool)> = (0..a.steps)
        .map(|i| {
            let z = if a.steps == 1 {
                z0
            } else {
                z0 + (z1 - z0) * R::from_i64(i as i64) / R::from_i64(a.steps as i64 - 1)
            };
            match evaluate(a.func, kind, nu, Complex::new(z, R::zero()), &qb, PathChoice::Auto, &p) {
                Ok((r, _)) => (z, r.value, r.converged),
                Err(_) => (z, Complex::new(nan, nan), false),
            }
        })
        .collect();
    let as_json = g.json || a.format == Some(Format::Json);
    let mut out = String::new();
    if as_json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(z, v, c)| {
                json!({
                    "func": a.func.name(), "kind": a.kind, "nu": nu.json(), "q": qb.q().json(),
                    "z_re": z.json(), "z_im": R::zero().json(),
                    "value_re": v.re.json(), "value_im": v.im.json(), "converged": c,
                })
            })
            .collect();
        out = Value::Array(rows).to_string();
        out.push('\n');
    } else {
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (z, v, c) in &rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                a.func.name(),
                a.kind,
                nu.text(),
                qb.q().text(),
                z.text(),
                R::zero().text(),
                v.re.text(),
                v.im.text(),
                c
            );
        }
    }
    print!("{out}");
    if a.assert_monotone && !rows.windows(2).all(|w| w[1].1.re < w[0].1.re) {
        eprintln!("error: value_re is not strictly decreasing");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, g: &Global) -> CliResult {
    let defaults = Grid::default();
    let cfg = VerifyConfig {
        grid: Grid {
            nus: a.nu.clone().unwrap_or(defaults.nus),
            zs: a.z.clone().unwrap_or(defaults.zs),
            qs: a.q.clone().unwrap_or(defaults.qs),
        },
        tolerance: a.tol,
        policy: policy(g, false)?,
    };
    for &q in &cfg.grid.qs {
        QBase::new(q)?;
    }
    let reports = verify::run_suite(a.suite, &cfg);
    let pass = verify::all_pass(&reports);
    if g.json {
        println!("{}", json!({ "suite": a.suite, "pass": pass, "reports": reports }));
    } else {
        print_summary(&reports, a.verbose);
        println!("{}: {}", a.suite, if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 1 })
}

fn print_summary(reports: &[IdentityReport], verbose: bool) {
    let mut ids: Vec<&str> = Vec::new();
    for r in reports {
        if !ids.contains(&r.id.as_str()) {
            ids.push(&r.id);
        }
    }
    for id in ids {
        let rows: Vec<&IdentityReport> = reports.iter().filter(|r| r.id == id).collect();
        let failed = rows.iter().filter(|r| !r.pass).count();
        let gating_failed = rows.iter().any(|r| !r.pass && r.gating);
        let worst =
            rows.iter()
                .map(|r| r.relative)
                .fold(0.0, |m: f64, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) });
        let status = match (failed, gating_failed) {
            (0, _) => "PASS",
            (_, true) => "FAIL",
            (_, false) => "INFO",
        };
        println!("{status} {id:<28} rows={:<4} failed={:<4} worst_relative={worst:.3e}", rows.len(), failed);
        for r in rows.iter().filter(|r| verbose || (!r.pass && r.gating)) {
            let p = r.params;
            let f = |x: Option<f64>| x.map_or("-".to_string(), |v| v.to_string());
            let k = p.kind.map_or("-".to_string(), |v| v.to_string());
            let note = r.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
            println!(
                "    {} kind={k} nu={} z={} q={} relative={:.3e}{note}",
                if r.pass { "ok  " } else { "fail" },
                f(p.nu),
                f(p.z),
                f(p.q),
                r.relative
            );
        }
    }
}

fn cmd_limit_scan(a: &ScanArgs, g: &Global) -> CliResult {
    let p = policy(g, false)?;
    if a.q_list.is_empty() || a.q_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("--q-list must be non-empty and ascending"));
    }
    let kind = kind_of(a.kind);
    let z = Complex::new(a.z, 0.0);
    let rows = match a.func {
        ScanFunc::I => verify::limit_scan(&a.q_list, classical::bessel_i(a.nu, a.z), |qb| {
            Ok(modified_i(kind, a.nu, z, qb, &p)?.value.re)
        }),
        ScanFunc::K => verify::limit_scan(&a.q_list, classical::bessel_k(a.nu, a.z), |qb| {
            Ok(macdonald_k(kind, a.nu, z, qb, &p)?.value.re)
        }),
        ScanFunc::Q => verify::limit_scan(&a.q_list, std::f64::consts::FRAC_PI_2, |qb| Ok(q_const(a.nu, qb)?.value)),
    }?;
    let monotone = verify::strictly_decreasing(&rows);
    if g.json {
        let rows: Vec<Value> =
            rows.iter().map(|&(q, v, e)| json!({ "q": q.json(), "value": v.json(), "error": e.json() })).collect();
        println!("{}", json!({ "rows": rows, "monotone": monotone }));
    } else {
        println!("q,value,error");
        for (q, v, e) in &rows {
            println!("{q},{v},{e}");
        }
    }
    if a.assert_monotone && !monotone {
        eprintln!("error: error column is not strictly decreasing");
        return Ok(1);
    }
    Ok(0)
}

fn run(cli: &Cli) -> CliResult {
    let oracle = oracle_mode();
    match &cli.cmd {
        Command::Eval(a) if oracle => cmd_eval::<DoubleDouble>(a, &cli.global, true),
        Command::Eval(a) => cmd_eval::<f64>(a, &cli.global, false),
        Command::Table(a) if oracle => cmd_table::<DoubleDouble>(a, &cli.global, true),
        Command::Table(a) => cmd_table::<f64>(a, &cli.global, false),
        Command::Verify(a) => cmd_verify(a, &cli.global),
        Command::LimitScan(a) => cmd_limit_scan(a, &cli.global),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
