//! Command-line front end.
//!
//! [`run_from`] parses arguments and returns the exit code with the text that
//! would be printed, so the binary and the tests share one code path.

pub mod args;
pub mod render;

use std::path::PathBuf;
use std::sync::Arc;

use clap::Parser;
use syzygy_core::cache::BlockCache;
use syzygy_core::cocycles::{claim_witness_checks, cocycle_vertical, independence_and_count, verify_cocycle, Point};
use syzygy_core::koszul::{closed_form_a2, closed_form_first_row, BettiEngine, EngineConfig, EngineError};
use syzygy_core::linalg::FieldChoice;
use syzygy_core::report::Report;
use syzygy_core::resolutions::{
    verify_chain_map_squares, verify_en_exactness, verify_kernel_lemma, verify_relative_resolution,
};
use syzygy_core::rings::{MonomialAlgebra, ScrollInvariants};

use args::{AlgebraArgs, BettiArgs, BidegreeArgs, CacheAction, Cli, Command, Format, GlobalArgs, Suite, VerifyArgs};
use render::{BettiJson, GridOptions, TableJson, Window};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field: FieldChoice,
    pub threads: usize,
    pub cache: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Result<Self, String> {
        let field = FieldChoice::parse(&g.field).map_err(|e| e.to_string())?;
        if let FieldChoice::Prime(f) = field {
            if f.modulus() == 2 || f.modulus() >= 1 << 31 {
                return Err(format!("field modulus must be an odd prime below 2^31, got {}", f.modulus()));
            }
        }
        let threads = match g.threads {
            Some(0) => return Err("--threads must be at least 1".into()),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Self { field, threads, cache: g.cache.clone(), format: g.format })
    }

    fn engine(&self, full: bool) -> Result<BettiEngine, EngineError> {
        let engine = BettiEngine::new(EngineConfig {
            field: self.field,
            threads: self.threads,
            reduce: !full,
            ..Default::default()
        })?;
        Ok(match BlockCache::from_env_or(self.cache.as_deref()) {
            Some(cache) => engine.with_cache(Arc::new(cache)),
            None => engine,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let cfg = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let result = match &cli.command {
        Command::Betti(a) => cmd_betti(&cfg, a),
        Command::Bidegree(a) => cmd_bidegree(&cfg, a),
        Command::Verify { suite, args } => cmd_verify(&cfg, *suite, args),
        Command::Cache { action } => cmd_cache(&cfg, *action),
    };
    result.unwrap_or_else(|e| match e {
        EngineError::InvalidParameters(_)
        | EngineError::Ring(_)
        | EngineError::OutOfTheoremRange { .. }
        | EngineError::OutOfImplementedRange(_) => Outcome::usage(e.to_string()),
        other => Outcome { code: EXIT_FAILED, stdout: String::new(), stderr: format!("error: {other}\n") },
    })
}

fn invalid(msg: impl Into<String>) -> EngineError {
    EngineError::InvalidParameters(msg.into())
}

/// The algebra and its identifying JSON fields.
struct Target {
    alg: MonomialAlgebra,
    a: Option<u32>,
    b: Option<u32>,
    e: Option<Vec<u32>>,
}

fn target(args: &AlgebraArgs) -> Result<Target, EngineError> {
    match (&args.e, args.a, args.b) {
        (Some(e), None, None) => {
            let inv = ScrollInvariants::new(e.clone(), 0)?;
            Ok(Target { alg: MonomialAlgebra::scroll(inv), a: None, b: None, e: Some(e.clone()) })
        }
        (None, Some(a), Some(b)) => {
            if a < 1 || a > b {
                return Err(invalid(format!("need 1 <= a <= b, got a={a}, b={b}")));
            }
            Ok(Target { alg: MonomialAlgebra::segre(a, b)?, a: Some(a), b: Some(b), e: None })
        }
        _ => Err(invalid("give either --a and --b, or --e")),
    }
}

fn closed_form(t: &Target, p: u32, q: u32) -> Option<u128> {
    let (a, b) = (t.a?, t.b?);
    if a == 2 && (q == 1 || q == 2) && p >= 1 {
        return closed_form_a2(b, p, q).ok();
    }
    if (3..=b).contains(&a) && q == 1 {
        return closed_form_first_row(a, b, p).ok();
    }
    None
}

pub fn cmd_betti(cfg: &RunConfig, args: &BettiArgs) -> Result<Outcome, EngineError> {
    let t = target(&args.alg)?;
    let engine = cfg.engine(args.alg.full)?;
    let field = cfg.field.descriptor();
    match (args.p, args.q, args.max_p) {
        (Some(p), Some(q), None) => {
            let table = engine.bidegree_table(&t.alg, p, q)?;
            let k = table.total();
            let cf = closed_form(&t, p, q);
            let agree = cf.is_none_or(|c| c == k as u128);
            let code = if agree { EXIT_OK } else { EXIT_FAILED };
            let stdout = match cfg.format {
                Format::Ascii => {
                    let mut s = format!("kappa_{{{p},{q}}} = {k}  ({}, {field})\n", t.alg.descriptor());
                    if let Some(c) = cf {
                        s.push_str(&format!("closed form = {c}  {}\n", if agree { "AGREE" } else { "DISAGREE" }));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("algebra,p,q,field,betti,closed_form\n");
                    let cf = cf.map_or(String::new(), |c| c.to_string());
                    s.push_str(&format!("{},{p},{q},{field},{k},{cf}\n", t.alg.descriptor()));
                    s
                }
                Format::Json => {
                    let j = BettiJson {
                        algebra: t.alg.family().to_string(),
                        a: t.a,
                        b: t.b,
                        e: t.e.clone(),
                        p,
                        q,
                        field,
                        betti: k,
                        blocks: BettiJson::blocks_of(&table),
                    };
                    serde_json::to_string(&j).expect("serializable") + "\n"
                }
            };
            Ok(Outcome { code, stdout, stderr: String::new() })
        }
        (None, None, Some(max_p)) => {
            let table = engine.full_betti_table(&t.alg, max_p)?;
            let mut disagreements = Vec::new();
            let mut compared = 0;
            for q in 0..=table.max_q {
                for p in 0..=max_p {
                    if let Some(c) = closed_form(&t, p, q) {
                        compared += 1;
                        if c != table.get(p, q) as u128 {
                            disagreements.push(format!("kappa_{{{p},{q}}} = {} but closed form = {c}", table.get(p, q)));
                        }
                    }
                }
            }
            let code = if disagreements.is_empty() { EXIT_OK } else { EXIT_FAILED };
            let stdout = match cfg.format {
                Format::Ascii => {
                    let mut s = format!("{} over {field}\n", t.alg.descriptor());
                    s.push_str(&render::render_betti_table(&table));
                    if compared > 0 {
                        let verdict = if disagreements.is_empty() { "AGREE" } else { "DISAGREE" };
                        s.push_str(&format!("closed form: {compared} entries {verdict}\n"));
                    }
                    for d in &disagreements {
                        s.push_str(&format!("  {d}\n"));
                    }
                    s
                }
                Format::Csv => render::betti_table_csv(&table),
                Format::Json => {
                    let j = TableJson {
                        algebra: t.alg.family().to_string(),
                        a: t.a,
                        b: t.b,
                        e: t.e.clone(),
                        field,
                        max_p,
                        rows: render::table_rows(&table),
                    };
                    serde_json::to_string(&j).expect("serializable") + "\n"
                }
            };
            Ok(Outcome { code, stdout, stderr: String::new() })
        }
        _ => Err(invalid("give --p and --q, or --max-p")),
    }
}

pub fn cmd_bidegree(cfg: &RunConfig, args: &BidegreeArgs) -> Result<Outcome, EngineError> {
    let t = target(&args.alg)?;
    let window = args.window.as_deref().map(Window::parse).transpose().map_err(invalid)?;
    let table = cfg.engine(args.alg.full)?.bidegree_table(&t.alg, args.p, args.q)?;
    let stdout = match cfg.format {
        Format::Ascii => render::render_grid(&table, GridOptions { rotate: args.rotate, pad: args.pad, window }),
        Format::Csv => render::bidegree_csv(&table),
        Format::Json => {
            let j = BettiJson {
                algebra: t.alg.family().to_string(),
                a: t.a,
                b: t.b,
                e: t.e.clone(),
                p: args.p,
                q: args.q,
                field: cfg.field.descriptor(),
                betti: table.total(),
                blocks: BettiJson::blocks_of(&table),
            };
            serde_json::to_string(&j).expect("serializable") + "\n"
        }
    };
    Ok(Outcome::ok(stdout))
}

fn need(x: Option<u32>, name: &str) -> Result<u32, EngineError> {
    x.ok_or_else(|| invalid(format!("--{name} is required for this suite")))
}

/// Rank count, claim checks and a corrupted-expression control.
fn cocycle_suite(cfg: &RunConfig, a: u32, b: u32) -> Result<Report, EngineError> {
    let engine = cfg.engine(false)?;
    let mut rep = independence_and_count(a, b, &engine)?;
    let claims = claim_witness_checks(a, b)?;
    let failing: Vec<usize> = (0..claims.len()).filter(|&j| !claims[j]).collect();
    rep.check(
        failing.is_empty(),
        format!("claim witnesses hold for all {} values of j (failing: {failing:?})", claims.len()),
    );
    let p = a * b + a - 1;
    let points: Vec<Point> = (0..=a).flat_map(|x| (0..b).map(move |y| (x, y))).take(p as usize + 1).collect();
    let mut bad = cocycle_vertical(a, b, 0, &points)?;
    if let Some(c) = bad.terms.values_mut().next() {
        *c = -*c;
    }
    rep.check(!verify_cocycle(&bad), "an expression with one coefficient flipped is rejected");
    Ok(rep)
}

pub fn cmd_verify(cfg: &RunConfig, suite: Suite, args: &VerifyArgs) -> Result<Outcome, EngineError> {
    let field = cfg.field;
    let report = match suite {
        Suite::En => {
            let e = args.e.clone().ok_or_else(|| invalid("--e is required for this suite"))?;
            verify_en_exactness(&e, args.c.unwrap_or(0), args.max_deg.unwrap_or(3), field)?
        }
        Suite::Relres => {
            let max_deg = args.max_deg.unwrap_or(4);
            if max_deg < 0 {
                return Err(invalid("--max-deg must be non-negative"));
            }
            verify_relative_resolution(need(args.a, "a")?, need(args.b, "b")?, max_deg as u32, field)?
        }
        Suite::Chainmap => {
            let (a, b) = (need(args.a, "a")?, need(args.b, "b")?);
            let steps: Vec<u32> = match args.p {
                Some(p) => vec![p],
                None => (2..=a).collect(),
            };
            if steps.is_empty() {
                return Err(invalid("chain maps need a >= 2"));
            }
            let mut rep = Report::new(format!("horizontal chain maps for ({a},{b})"));
            for p in steps {
                rep.absorb(verify_chain_map_squares(a, b, p, args.max_deg.unwrap_or(3))?);
            }
            rep
        }
        Suite::Kernel => verify_kernel_lemma(need(args.a, "a")?, need(args.b, "b")?, field)?,
        Suite::Cocycles => cocycle_suite(cfg, need(args.a, "a")?, need(args.b, "b")?)?,
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_FAILED };
    let stdout = match cfg.format {
        Format::Json => {
            let checks: Vec<serde_json::Value> =
                report.lines.iter().map(|l| serde_json::json!({"ok": l.ok, "check": l.text})).collect();
            let v = serde_json::json!({"suite": report.title, "passed": report.passed(), "checks": checks});
            serde_json::to_string(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("status,check\n");
            for l in &report.lines {
                s.push_str(&format!("{},\"{}\"\n", if l.ok { "PASS" } else { "FAIL" }, l.text.replace('"', "\"\"")));
            }
            s
        }
        Format::Ascii => format!("{report}\n"),
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

pub fn cmd_cache(cfg: &RunConfig, action: CacheAction) -> Result<Outcome, EngineError> {
    let cache = BlockCache::from_env_or(cfg.cache.as_deref())
        .ok_or_else(|| invalid("no cache configured; pass --cache DIR or set BETTI_CACHE_DIR"))?;
    let text = match action {
        CacheAction::Clear => format!("removed {} strand files from {}\n", cache.clear()?, cache.dir().display()),
        CacheAction::Stats => {
            let s = cache.stats()?;
            match cfg.format {
                Format::Json => {
                    serde_json::json!({"dir": cache.dir(), "files": s.files, "records": s.records, "bytes": s.bytes})
                        .to_string()
                        + "\n"
                }
                _ => format!(
                    "{}: {} strand files, {} block records, {} bytes\n",
                    cache.dir().display(),
                    s.files,
                    s.records,
                    s.bytes
                ),
            }
        }
    };
    Ok(Outcome::ok(text))
}
