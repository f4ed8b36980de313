use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use umemura::codec::{encode, pretty};
use umemura::exec::Exec;
use umemura::families::{FamilyKey, PolyCache};
use umemura::lab::{run_catalog, verify, write_jsonl, CaseId, IdentityCase, Mode, Status};
use umemura::painleve::{
    sweep, BetaSign, CheckId, CheckParams, EviForm, H0Form, NumericConfig, PviTuple, QIndexing, QParse,
};
use umemura::{Error, Poly, Rational};

#[derive(Parser)]
#[command(name = "umemura", version, about = "Generalized Umemura polynomials: build, verify, check")]
struct Cli {
    /// Output format for polynomials and reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one polynomial.
    Compute {
        #[command(subcommand)]
        family: Compute,
    },
    /// Check one identity case.
    Verify(VerifyArgs),
    /// Run the whole identity catalog.
    Catalog(CatalogArgs),
    /// High-precision residual sweep.
    Painleve(PainleveArgs),
    /// Inspect or empty the polynomial cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum Compute {
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Route::Sum)]
        route: Route,
        #[command(flatten)]
        out: OutArgs,
    },
    Toda {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    Noou {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cache directory; falls back to $UMEMURA_CACHE.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Sum,
    Det,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    /// Comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<i64>,
    #[arg(long, default_value = "symbolic")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, default_value_t = 6)]
    budget: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct PainleveArgs {
    /// evi_h0m | h1m | evi_hnm | reduction | pvi_qm | evi_hbar
    #[arg(long)]
    check: String,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_parser = parse_rational)]
    b1: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    b2: Option<Rational>,
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    t_grid: Vec<Rational>,
    #[arg(long, default_value_t = 50)]
    digits: u32,
    /// Residual tolerance exponent; default −(digits − 15).
    #[arg(long, allow_hyphen_values = true)]
    tolerance_exp: Option<i32>,
    #[arg(long, value_enum, default_value_t = TupleArg::Third)]
    tuple: TupleArg,
    #[arg(long, value_enum)]
    indexing: Option<IndexingArg>,
    /// Controls: printed variants of the σ-form, h_0, q_m and P_VI.
    #[arg(long)]
    unsquared: bool,
    #[arg(long)]
    h0_plus_one: bool,
    #[arg(long)]
    log_terms_only: bool,
    #[arg(long)]
    beta_minus: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TupleArg {
    Third,
    Fourth,
    NegatedThird,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexingArg {
    Generalized,
    Umemura,
}

#[derive(Subcommand)]
enum CacheAction {
    Clear {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    Stats {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("{s:?} is not a rational: {e}"))
}

enum Failure {
    /// The computation ran and the identity or check did not hold.
    Check,
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Domain(_) | Error::Decode { .. } | Error::Parity(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn echo(config: serde_json::Value) {
    eprintln!("config {config}");
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn render(p: &Poly, format: Format) -> String {
    match format {
        Format::Json => encode(p) + "\n",
        Format::Text => pretty(p) + "\n",
    }
}

fn compute(family: Compute, format: Format) -> Result<(), Failure> {
    let (key, out) = match family {
        Compute::Gen { n, m, k, route, out } => {
            let key = match route {
                Route::Sum => FamilyKey::gen(n, m, k),
                Route::Det => FamilyKey::new(umemura::families::Family::GenDet, &[n as i64, m as i64, k as i64])?,
            };
            (key, out)
        }
        Compute::Toda { n, out } => (FamilyKey::new(umemura::families::Family::TodaT, &[n as i64])?, out),
        Compute::Noou { n, out } => (FamilyKey::new(umemura::families::Family::NoouU, &[n as i64])?, out),
    };
    echo(json!({"verb": "compute", "key": key.canonical(), "cache_dir": out.cache_dir, "out": out.out}));
    let value = match &out.cache_dir {
        Some(dir) => PolyCache::new(dir).get_or_build(&key)?,
        None => key.build()?,
    };
    let poly = value.as_poly().ok_or_else(|| Failure::Runtime("not a polynomial family".into()))?;
    emit(out.out.as_ref(), &render(poly, format))
}

fn run_verify(a: VerifyArgs, format: Format) -> Result<(), Failure> {
    let id = CaseId::parse(&a.id)?;
    let mode = Mode::parse(&a.mode, a.trials)?;
    echo(json!({"verb": "verify", "id": id.name(), "params": a.params, "mode": mode.to_string(), "seed": a.seed}));
    let report = verify(&IdentityCase::new(id, &a.params, mode), a.seed)?;
    let line = match format {
        Format::Json => report.to_json_line(),
        Format::Text => format!("{} {:?} {} {}", report.id, report.params, report.mode, report.status),
    };
    println!("{line}");
    if report.status == Status::Fail {
        return Err(Failure::Check);
    }
    Ok(())
}

fn run_catalog_cmd(a: CatalogArgs) -> Result<(), Failure> {
    let exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
    echo(json!({"verb": "catalog", "budget": a.budget, "seed": a.seed, "exec": format!("{exec:?}"), "out": a.out}));
    let start = std::time::Instant::now();
    let reports = run_catalog(a.budget, a.seed, exec)?;
    let mut buf = Vec::new();
    write_jsonl(&mut buf, &reports)?;
    emit(a.out.as_ref(), std::str::from_utf8(&buf).expect("utf8"))?;
    let unexpected = reports.iter().filter(|r| !r.as_expected()).count();
    eprintln!("{} cases, {} unexpected, {:.1?}", reports.len(), unexpected, start.elapsed());
    if unexpected > 0 {
        return Err(Failure::Check);
    }
    Ok(())
}

fn run_painleve(a: PainleveArgs, format: Format) -> Result<(), Failure> {
    let check = CheckId::parse(&a.check)?;
    let mut cp = CheckParams::new(a.n, a.m);
    if let Some(b1) = a.b1 {
        cp.b1 = b1;
    }
    if let Some(b2) = a.b2 {
        cp.b2 = b2;
    }
    cp.tuple = match a.tuple {
        TupleArg::Third => PviTuple::ThirdParam,
        TupleArg::Fourth => PviTuple::FourthParam,
        TupleArg::NegatedThird => PviTuple::NegatedThird,
    };
    cp.indexing = a.indexing.map(|i| match i {
        IndexingArg::Generalized => QIndexing::Generalized,
        IndexingArg::Umemura => QIndexing::Umemura,
    });
    if a.unsquared {
        cp.evi_form = EviForm::Unsquared;
    }
    if a.h0_plus_one {
        cp.h0_form = H0Form::PlusOne;
    }
    if a.log_terms_only {
        cp.q_parse = QParse::LogTermsOnly;
    }
    if a.beta_minus {
        cp.beta_sign = BetaSign::Minus;
    }
    let mut cfg = if a.t_grid.is_empty() {
        NumericConfig::new(a.digits)?
    } else {
        NumericConfig::with_grid(a.digits, a.t_grid)?
    };
    if let Some(e) = a.tolerance_exp {
        cfg = cfg.tolerance(e);
    }
    echo(json!({"verb": "painleve", "check": check.name(), "params": cp, "digits": cfg.digits,
        "grid": cfg.grid.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "tolerance_exp": cfg.tolerance_exp}));
    let report = sweep(check, &cp, &cfg)?;
    let body = match format {
        Format::Json => serde_json::to_string(&report).map_err(|e| Failure::Runtime(e.to_string()))? + "\n",
        Format::Text => format!("{} max_residual={} status={:?}\n", report.check, report.max_residual, report.status),
    };
    emit(a.out.as_ref(), &body)?;
    if !report.passed() {
        return Err(Failure::Check);
    }
    Ok(())
}

fn run_cache(action: CacheAction) -> Result<(), Failure> {
    match action {
        CacheAction::Stats { dir } => {
            let cache = PolyCache::resolve(dir.as_deref());
            echo(json!({"verb": "cache stats", "dir": cache.dir()}));
            let s = cache.stats()?;
            println!("{}", json!({"entries": s.entries, "bytes": s.bytes}));
        }
        CacheAction::Clear { dir } => {
            let cache = PolyCache::resolve(dir.as_deref());
            echo(json!({"verb": "cache clear", "dir": cache.dir()}));
            println!("{}", json!({"removed": cache.clear()?}));
        }
    }
    Ok(())
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
    let result = match cli.cmd {
        Cmd::Compute { family } => compute(family, cli.format),
        Cmd::Verify(a) => run_verify(a, cli.format),
        Cmd::Catalog(a) => run_catalog_cmd(a),
        Cmd::Painleve(a) => run_painleve(a, cli.format),
        Cmd::Cache { action } => run_cache(action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
