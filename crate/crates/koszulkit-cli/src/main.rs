//! `koszulkit`: conditions, Koszulity verdicts, Hochschild tables and necklace counts for
//! (a,b)-homogeneous algebras given as JSON presentation files.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse or usage error, 3 failed precondition,
//! 4 not Koszul under `koszul --expect koszul`, 5 budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use koszulkit_core::hochschild::hh_table;
use koszulkit_core::koszulchecker::{
    check_ec, check_ecc, check_evc, check_exclusive, koszul_verdict, ConditionReport, Overall, Strategy, Verdict,
};
use koszulkit_core::necklace;
use koszulkit_core::presentation_file::{fixture_text, parse_path, parse_str, ParsedPresentation, PresentationFile};
use koszulkit_core::{Error, Field, FieldTag, GradedAlgebra, Limits, Presentation, PrimeField, Rationals};

const DEFAULT_PRIME: u64 = 32003;

#[derive(Parser, Debug)]
#[command(name = "koszulkit", version, about = "Koszulity and Hochschild homology of (a,b)-homogeneous algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Ground field, `QQ` or `GF:<p>`; overrides the file and the command default.
    #[arg(long, global = true)]
    field: Option<FieldTag>,
    /// Largest ambient dimension (dim V)^n that may be materialised.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    max_ambient_dim: usize,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    /// Worker threads for the parallel cells.
    #[arg(long, global = true, env = "KOSZULKIT_THREADS")]
    threads: Option<usize>,
    /// Report `elapsed_ms` as 0 so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exclusivity, e.c., e.v.c. and e.c.c. verdicts.
    Check {
        /// Presentation file or shipped fixture name.
        file: String,
    },
    /// Bounded Koszulity verdict.
    Koszul {
        /// Presentation file or shipped fixture name.
        file: String,
        /// Largest internal degree N (default 2b + 4).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Largest homological index (default 2b).
        #[arg(long)]
        max_i: Option<usize>,
        /// Decision strategy.
        #[arg(long, value_enum, default_value_t = StrategyArg::Exactness)]
        strategy: StrategyArg,
        /// Exit with code 4 unless the verdict is koszul-up-to-bound.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Table of dim HH_i(A)_n.
    Hh {
        /// Presentation file or shipped fixture name.
        file: String,
        /// Largest homological index.
        #[arg(long, default_value_t = 4)]
        max_i: usize,
        /// Largest internal degree.
        #[arg(long, default_value_t = 14)]
        max_degree: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Necklace counts: rho, phi, predim0, predim1, ppredim0, predim2, predim3, generators.
    Necklace {
        /// Function name.
        function: String,
        /// Word length.
        n: usize,
        /// Lower relation degree (predim0 only).
        a: Option<usize>,
        /// Higher relation degree (predim0 only).
        b: Option<usize>,
    },
    /// Writes the Koszul dual presentation.
    Dual {
        /// Presentation file or shipped fixture name.
        file: String,
        /// Output path; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Writes the opposite presentation.
    Opposite {
        /// Presentation file or shipped fixture name.
        file: String,
        /// Output path; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exactness,
    Conditions,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Exactness => Strategy::Exactness,
            StrategyArg::Conditions => Strategy::Conditions,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expect {
    Koszul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A command failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Presentation(_) | Error::Domain(_) | Error::DimensionMismatch { .. } => 2,
            Error::Precondition(_) => 3,
            Error::Budget(_) => 5,
            Error::Internal(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn load(file: &str) -> Result<ParsedPresentation, Error> {
    let path = Path::new(file);
    if !path.exists() {
        if let Some(text) = fixture_text(file) {
            return parse_str(text);
        }
    }
    parse_path(path)
}

fn limits(g: &Global) -> Limits {
    Limits {
        max_ambient_dim: g.max_ambient_dim,
        deadline: g.timeout.map(|s| Instant::now() + Duration::from_secs(s)),
    }
}

/// `--field`, then the file's field, then the command default.
fn choose_field(g: &Global, parsed: &ParsedPresentation, default: FieldTag) -> FieldTag {
    g.field.or(parsed.field).unwrap_or(default)
}

struct Context<'a> {
    global: &'a Global,
    command: Value,
    started: Instant,
}

impl Context<'_> {
    fn report(&self, fingerprint: &str, field: FieldTag, bounds: Value, result: Value) -> Value {
        let elapsed = if self.global.no_timing { 0 } else { self.started.elapsed().as_millis() as u64 };
        json!({
            "command": self.command,
            "fixture_hash": fingerprint,
            "field": field.to_string(),
            "bounds": bounds,
            "result": result,
            "elapsed_ms": elapsed,
        })
    }
}

/// Writes to standard output. A reader that closed the pipe early is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("JSON values serialise") + "\n"));
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialise")
}

/// Runs `body` over the field named by `tag`.
macro_rules! with_field {
    ($tag:expr, |$f:ident| $body:expr) => {
        match $tag {
            FieldTag::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldTag::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn cmd_check<F: Field>(ctx: &Context<'_>, p: Presentation<F>) -> CmdResult {
    let top = 2 * p.b() + 1;
    let alg = GradedAlgebra::new(p, top, limits(ctx.global))?;
    let exclusive = check_exclusive(&alg)?;
    let mut reports = vec![exclusive.clone()];
    let code = if exclusive.verdict.is_ok() {
        reports.push(check_ec(&alg)?);
        reports.push(check_evc(&alg)?);
        reports.push(check_ecc(&alg)?);
        0
    } else {
        reports.extend(["e.c.", "e.v.c.", "e.c.c."].iter().map(|n| ConditionReport::unmet(n)));
        3
    };
    let p = alg.presentation();
    let result = json!({ "a": p.a(), "b": p.b(), "conditions": to_value(&reports) });
    print_json(&ctx.report(&p.fingerprint(), p.field().tag(), json!({ "max_degree": top, "max_i": Value::Null }), result));
    Ok(code)
}

fn cmd_koszul<F: Field>(
    ctx: &Context<'_>,
    p: Presentation<F>,
    n_max: usize,
    imax: usize,
    strategy: Strategy,
    expect: Option<Expect>,
) -> CmdResult {
    let alg = GradedAlgebra::new(p, n_max, limits(ctx.global))?;
    let verdict = koszul_verdict(&alg, n_max, imax, strategy)?;
    let p = alg.presentation();
    let result = json!({ "a": p.a(), "b": p.b(), "verdict": to_value(&verdict) });
    print_json(&ctx.report(&p.fingerprint(), p.field().tag(), json!({ "max_degree": n_max, "max_i": imax }), result));
    Ok(match (&verdict.overall, expect) {
        (Overall::PreconditionFailed { .. }, _) => 3,
        (Overall::NotKoszul { .. }, Some(Expect::Koszul)) => 4,
        _ => 0,
    })
}

fn cmd_hh<F: Field>(ctx: &Context<'_>, p: Presentation<F>, imax: usize, n_max: usize, format: Format) -> CmdResult {
    let alg = GradedAlgebra::new(p, n_max, limits(ctx.global))?;
    let exclusive = check_exclusive(&alg)?;
    if exclusive.verdict == Verdict::Fails {
        eprintln!("warning: R_a and R_b are not exclusive; the table need not compute Hochschild homology");
    }
    let table = hh_table(&alg, imax, n_max)?;
    match format {
        Format::Csv => emit(&table.to_csv()),
        Format::Json => {
            let p = alg.presentation();
            let bounds = json!({ "max_degree": n_max, "max_i": imax });
            print_json(&ctx.report(&p.fingerprint(), p.field().tag(), bounds, to_value(&table)));
        }
    }
    Ok(0)
}

fn write_presentation<F: Field>(p: &Presentation<F>, output: Option<&Path>) -> CmdResult {
    let file = PresentationFile::from_presentation(p);
    let text = serde_json::to_string_pretty(&file).expect("presentation files serialise") + "\n";
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure { code: 1, message: format!("cannot write {}: {e}", path.display()) })?,
        None => emit(&text),
    }
    Ok(0)
}

fn cmd_necklace(function: &str, n: usize, a: Option<usize>, b: Option<usize>) -> CmdResult {
    let out = match function {
        "rho" => necklace::rho(n as u64)?.to_string(),
        "phi" => necklace::euler_phi(n as u64)?.to_string(),
        "predim1" => necklace::predim1(n)?.to_string(),
        "ppredim0" => necklace::ppredim0(n)?.to_string(),
        "predim2" => necklace::predim2(n)?.to_string(),
        "predim3" => necklace::predim3(n)?.to_string(),
        "predim0" => {
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Failure { code: 2, message: "predim0 needs the degrees a and b".into() });
            };
            necklace::predim0(n, a, b)?.to_string()
        }
        "generators" => necklace::generators(n)?.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n"),
        other => return Err(Failure { code: 2, message: format!("unknown necklace function '{other}'") }),
    };
    emit(&format!("{out}\n"));
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    if let Some(t) = cli.global.threads {
        // A second initialisation in the same process is harmless to ignore.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let g = &cli.global;
    let mut ctx = Context { global: g, command: Value::Null, started: Instant::now() };
    match &cli.command {
        Command::Check { file } => {
            let parsed = load(file)?;
            ctx.command = json!({ "name": "check", "file": file });
            let tag = choose_field(g, &parsed, FieldTag::Rationals);
            with_field!(tag, |f| cmd_check(&ctx, parsed.build(f)?))
        }
        Command::Koszul { file, max_degree, max_i, strategy, expect } => {
            let parsed = load(file)?;
            let b = parsed.relations.iter().map(|r| r[0].1.len()).max().unwrap_or(0);
            let n_max = max_degree.unwrap_or(2 * b + 4);
            let imax = max_i.unwrap_or(2 * b);
            let default = if n_max > 12 { FieldTag::Prime(DEFAULT_PRIME) } else { FieldTag::Rationals };
            let tag = choose_field(g, &parsed, default);
            let strategy = Strategy::from(*strategy);
            ctx.command = json!({ "name": "koszul", "file": file, "strategy": to_value(&strategy) });
            with_field!(tag, |f| cmd_koszul(&ctx, parsed.build(f)?, n_max, imax, strategy, *expect))
        }
        Command::Hh { file, max_i, max_degree, format } => {
            let parsed = load(file)?;
            ctx.command = json!({ "name": "hh", "file": file });
            let tag = choose_field(g, &parsed, FieldTag::Rationals);
            with_field!(tag, |f| cmd_hh(&ctx, parsed.build(f)?, *max_i, *max_degree, *format))
        }
        Command::Necklace { function, n, a, b } => cmd_necklace(function, *n, *a, *b),
        Command::Dual { file, output } => {
            let parsed = load(file)?;
            let tag = choose_field(g, &parsed, FieldTag::Rationals);
            with_field!(tag, |f| write_presentation(&parsed.build(f)?.dual()?, output.as_deref()))
        }
        Command::Opposite { file, output } => {
            let parsed = load(file)?;
            let tag = choose_field(g, &parsed, FieldTag::Rationals);
            with_field!(tag, |f| write_presentation(&parsed.build(f)?.reverse(), output.as_deref()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
