//! Command line front end. Every subcommand reads JSON or compact text
//! inputs and writes one JSON (or CSV) document to standard output.

pub mod input;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use wittcft::laurent::{unit_decompose, LaurentRing};
use wittcft::ramification::RamProfile;
use wittcft::reduction::{ReducedClass, Reducer, DEFAULT_PRECISION};
use wittcft::ring::Integers;
use wittcft::selftest::{run_all, SelftestConfig};
use wittcft::symbol::{oracle_classical, oracle_level1, required_unit_precision, symbol, symbol_via_residue_form, SymbolValue};
use wittcft::tower::global::{frobenius_at, reduce_global};
use wittcft::tower::ratfunc::{RatFunc, RatFuncJson};
use wittcft::tower::TowerSpec;
use wittcft::witt::galois::GaloisRing;
use wittcft::witt::{WittRing, WittVec};
use wittcft::{make_field, Error, FqCtx, FqElem};

/// Exit status for malformed input.
pub const EXIT_SCHEMA: i32 = 2;
/// Exit status for inputs violating a mathematical precondition.
pub const EXIT_MATH: i32 = 3;
/// Exit status when independent computations disagree or the selftest fails.
pub const EXIT_MISMATCH: i32 = 1;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn schema(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_SCHEMA, message: msg.into() }
    }
    pub fn mismatch(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_MISMATCH, message: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_mathematical() { EXIT_MATH } else { EXIT_SCHEMA };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "wittcft", version, about = "Witt vectors, local symbols, conductors and genus of Z_p-towers")]
pub struct Cli {
    /// Characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u64,
    /// Degree of the constant field over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: u32,
    /// Witt length.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Working precision in T.
    #[arg(long, global = true)]
    pub precision: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cross-check against every independent formula.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WittOp {
    Add,
    Mul,
    Neg,
    Inv,
    Teich,
    Ghost,
    Trace,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Arithmetic in W_n(F_q); `ghost` works over the integers.
    Witt {
        #[arg(long, value_enum)]
        op: WittOp,
        /// Coordinates as a JSON list of field elements.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Reduced representative of a vector over k((T)).
    Reduce {
        /// Monomials `[["T", exponent, coefficient, level?], ...]`.
        #[arg(long)]
        x: String,
    },
    /// Per-place ramification data of a vector over k(X).
    ReduceGlobal {
        /// JSON list of coordinates `{"num": [...], "den": [[[...], e], ...]}`.
        #[arg(long)]
        x: String,
    },
    /// The symbol [x, y) in Z/p^n.
    Symbol {
        #[arg(long)]
        x: String,
        /// A unit such as `1-T`, or a monomial list.
        #[arg(long)]
        y: String,
    },
    /// Conductor exponents u_0..u_n.
    Conductor(ClassArgs),
    /// Upper ramification breaks of the level-n extension.
    Breaks(ClassArgs),
    /// Discriminant exponents for levels 0..n.
    Discriminant(ClassArgs),
    /// Genus, conductor and discriminant degrees of a tower, level by level.
    GenusTable {
        /// Tower spec, inline JSON or a path.
        #[arg(long)]
        spec: String,
    },
    /// Quadratic genus law of a geometric tower.
    Stability {
        #[arg(long)]
        spec: String,
    },
    /// Frobenius at the place of a point not among the poles.
    Frobenius {
        #[arg(long)]
        x: String,
        /// The point, in F_{p^root_m}.
        #[arg(long)]
        z: String,
        #[arg(long)]
        root_m: Option<u32>,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Oracle comparisons per configuration.
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

#[derive(clap::Args, Debug)]
pub struct ClassArgs {
    /// Monomials of a vector over k((T)).
    #[arg(long, conflicts_with = "profile")]
    x: Option<String>,
    /// Valuations `[[i, v(c_i)], ...]`.
    #[arg(long)]
    profile: Option<String>,
    /// Valuation of c, used with `--profile` (defaults to n).
    #[arg(long)]
    vc: Option<usize>,
}

/// Parses `argv` and runs the command: exit status and standard output.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SCHEMA } else { 0 };
            return if code == 0 { (0, e.to_string(), String::new()) } else { (code, String::new(), e.to_string()) };
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.code, String::new(), format!("error: {}\n", e.message)),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value");
    s.push('\n');
    s
}

fn symbol_json(s: &SymbolValue) -> Value {
    json!({ "value": s.value, "mod": format!("{}^{}", s.p, s.n) })
}

fn field(cli: &Cli) -> Result<FqCtx, CliError> {
    Ok(make_field(cli.p, cli.m)?)
}

fn coords_json(k: &FqCtx, x: &WittVec<FqElem>) -> Value {
    json!(x.coords.iter().map(|&c| k.coeffs(c)).collect::<Vec<_>>())
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let prec = cli.precision.unwrap_or(DEFAULT_PRECISION);
    match &cli.command {
        Command::Witt { op, a, b } => witt(cli, *op, a, b.as_deref()),
        Command::Reduce { x } => {
            let k = field(cli)?;
            let red = Reducer::new(&k, cli.n)?;
            let xv = red.from_monomials(&input::monomials(&k, x)?)?;
            let res = red.reduce(&xv, prec)?;
            let inv = res.reduced.invariants(cli.p);
            Ok(pretty(&json!({
                "reduced": res.reduced.to_json(&k),
                "invariants": inv,
                "precision": res.precision,
            })))
        }
        Command::ReduceGlobal { x } => {
            let k = field(cli)?;
            let coords: Vec<RatFuncJson> = input::document(x, "rational function list")?;
            let coords = coords.iter().map(|c| RatFunc::from_json(&k, c)).collect::<Result<Vec<_>, _>>()?;
            let spec = reduce_global(&k, &coords, cli.precision)?;
            Ok(pretty(&serde_json::to_value(spec).expect("spec")))
        }
        Command::Symbol { x, y } => symbol_cmd(cli, x, y, prec),
        Command::Conductor(args) | Command::Breaks(args) | Command::Discriminant(args) => {
            let prof = class_profile(cli, args, prec)?;
            let table = prof.table(cli.n)?;
            match (&cli.command, cli.format) {
                (Command::Conductor(_) | Command::Discriminant(_), Format::Csv) => Ok(table.to_csv()),
                (Command::Conductor(_), Format::Json) => Ok(pretty(&json!({ "u": table.u }))),
                (Command::Discriminant(_), Format::Json) => Ok(pretty(&json!({ "disc": table.disc }))),
                (_, Format::Csv) => {
                    Ok(format!("break\n{}", table.breaks.iter().map(|b| format!("{b}\n")).collect::<String>()))
                }
                _ => Ok(pretty(&json!({ "breaks": table.breaks }))),
            }
        }
        Command::GenusTable { spec } => {
            let spec: TowerSpec = input::document(spec, "tower spec")?;
            let report = spec.report()?;
            match cli.format {
                Format::Csv => Ok(report.to_csv()),
                Format::Json => Ok(pretty(&serde_json::to_value(report).expect("report"))),
            }
        }
        Command::Stability { spec } => {
            let spec: TowerSpec = input::document(spec, "tower spec")?;
            spec.validate()?;
            Ok(pretty(&serde_json::to_value(spec.stability()?).expect("record")))
        }
        Command::Frobenius { x, z, root_m } => {
            let k = field(cli)?;
            let big = make_field(cli.p, root_m.unwrap_or(cli.m))?;
            let coords: Vec<RatFuncJson> = input::document(x, "rational function list")?;
            let coords = coords.iter().map(|c| RatFunc::from_json(&k, c)).collect::<Result<Vec<_>, _>>()?;
            let zv: Value = input::document(&format!("[{z}]"), "point")?;
            let z = input::element(&big, &zv[0])?;
            Ok(pretty(&symbol_json(&frobenius_at(&k, &coords, &big, z)?)))
        }
        Command::Selftest { cases } => {
            let cfg = SelftestConfig { seed: cli.seed.unwrap_or(SelftestConfig::default().seed), oracle_cases: *cases, ..Default::default() };
            let report = run_all(&cfg);
            let out = match cli.format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("report")),
                Format::Csv => report.summary(),
            };
            if report.passed() {
                Ok(out)
            } else {
                Err(CliError::mismatch(format!("selftest failed\n{}", report.summary())))
            }
        }
    }
}

fn witt(cli: &Cli, op: WittOp, a: &str, b: Option<&str>) -> Result<String, CliError> {
    if op == WittOp::Ghost {
        let coords: Vec<i64> = input::document(a, "integer coordinates")?;
        let zr = WittRing::new(Integers, cli.p, coords.len())?;
        let g = zr.ghost(&WittVec::new(coords.into_iter().map(BigInt::from).collect()));
        return Ok(pretty(&json!({ "ghost": g.iter().map(|x| x.to_string()).collect::<Vec<_>>() })));
    }
    let k = field(cli)?;
    if op == WittOp::Teich {
        let wr = WittRing::new(k.clone(), cli.p, cli.n)?;
        let a = input::elements(&k, a)?;
        if a.len() != 1 {
            return Err(CliError::schema("teich takes one field element"));
        }
        return Ok(pretty(&json!({ "coords": coords_json(&k, &wr.teichmuller(&a[0])) })));
    }
    let x = WittVec::new(input::elements(&k, a)?);
    let wr = WittRing::new(k.clone(), cli.p, x.len())?;
    let other = || -> Result<WittVec<FqElem>, CliError> {
        let b = b.ok_or_else(|| CliError::schema("this operation needs --b"))?;
        let y = WittVec::new(input::elements(&k, b)?);
        if y.len() != x.len() {
            return Err(CliError::schema("--a and --b have different lengths"));
        }
        Ok(y)
    };
    let out = match op {
        WittOp::Add => wr.add_w(&x, &other()?),
        WittOp::Mul => wr.mul_w(&x, &other()?),
        WittOp::Neg => wr.neg_w(&x),
        WittOp::Inv => wr.invert(&x)?,
        WittOp::Trace => {
            let t = wr.prime_coords_to_int(&wr.trace_wk(&x));
            return Ok(pretty(&symbol_json(&SymbolValue::new(cli.p, x.len(), t))));
        }
        WittOp::Ghost | WittOp::Teich => unreachable!("handled above"),
    };
    Ok(pretty(&json!({ "coords": coords_json(&k, &out) })))
}

fn symbol_cmd(cli: &Cli, x: &str, y: &str, prec: i64) -> Result<String, CliError> {
    let k = field(cli)?;
    let red = Reducer::new(&k, cli.n)?;
    let gr = GaloisRing::new(&k, cli.n)?;
    let xv = red.from_monomials(&input::monomials(&k, x)?)?;
    let ring = LaurentRing::new(k.clone());
    let yv = input::series(&ring, y)?;
    let r = red.reduce(&xv, prec)?.reduced;
    let u = unit_decompose(&ring, &yv, required_unit_precision(&r, cli.p))?;
    let s = symbol(&gr, &r, &u)?;
    let mut out = symbol_json(&s);
    if cli.oracle {
        let residue = symbol_via_residue_form(&gr, &r, &u)?;
        let classical = oracle_classical(&gr, &xv, &yv)?;
        let level1 = oracle_level1(&k, &xv.coords[0], &yv)?;
        out["oracles"] = json!({
            "residue_form": residue.value,
            "classical": classical.value,
            "level1": level1.value,
        });
        if residue != s || classical != s || level1 != s.project(1) {
            return Err(CliError::mismatch(format!("oracles disagree: {out}")));
        }
        out["agree"] = json!(true);
    }
    Ok(pretty(&out))
}

fn class_profile(cli: &Cli, args: &ClassArgs, prec: i64) -> Result<RamProfile, CliError> {
    match (&args.x, &args.profile) {
        (Some(x), None) => {
            let k = field(cli)?;
            let red = Reducer::new(&k, cli.n)?;
            let r: ReducedClass = red.reduce(&red.from_monomials(&input::monomials(&k, x)?)?, prec)?.reduced;
            Ok(RamProfile::from_class(&r, cli.p))
        }
        (None, Some(profile)) => {
            let entries: Vec<(u64, usize)> = input::document(profile, "profile")?;
            Ok(RamProfile::new(cli.p, cli.n, entries, args.vc.unwrap_or(cli.n))?)
        }
        _ => Err(CliError::schema("give exactly one of --x and --profile")),
    }
}
