//! `repcurve`: build modules, query them, and run the verification suites.
//!
//! Exit codes: 0 when every checked case passes, 1 on a mathematical
//! failure, 2 on usage or validation errors.

pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use repcurve_core::curvefam::{dr_graded, holo_graded, CurveError, CurveParams};
use repcurve_core::ff::{default_modulus, FfError, FieldCtx, FieldElem};
use repcurve_core::kmod::{
    augmentation_ideal, is_indecomposable, is_isomorphic, profile, regular_module, trivial_module,
    v_d, v_dr, HModule, IndecCertificate, KmodError,
};
use serde_json::{json, Value};
use thiserror::Error;

use report::{CaseRecord, Format, SuiteReport};
use suites::{case_seed, registry, CaseEnv, Suite, DEFAULT_M_GRID};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Kmod(#[from] KmodError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl CliError {
    /// Name of the innermost error variant, e.g. `PrimeFieldElement`.
    pub fn kind(&self) -> String {
        const WRAPPERS: [&str; 5] = ["Kmod", "Field", "Linalg", "Curve", "Poly"];
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Io(_) => "Io".into(),
            CliError::Json(_) => "Json".into(),
            e => format!("{e:?}")
                .split(|c: char| !c.is_ascii_alphanumeric())
                .filter(|t| !t.is_empty())
                .skip(1)
                .find(|t| !WRAPPERS.contains(t))
                .unwrap_or("Unknown")
                .to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "repcurve", version, about = "Modular representations of Z/p × Z/p from Artin-Schreier curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    /// Extension degree.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Monic modulus, coefficients from the constant term up, e.g. "1,0,1"
    /// for t²+1. Defaults: t²+1 for p = 3, t²+2 for p = 5.
    #[arg(long)]
    pub modulus: Option<String>,
}

impl FieldArgs {
    fn ctx(&self) -> Result<FieldCtx, CliError> {
        let modulus = match &self.modulus {
            Some(s) => parse_list(s)?,
            None => default_modulus(self.p, self.n),
        };
        Ok(FieldCtx::new(self.p, self.n, &modulus)?)
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("cannot parse {s:?}: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    Vd,
    Vdr,
    Regular,
    Aug,
    Trivial,
    Holo,
    Dr,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a module or a graded family and print its JSON.
    Build {
        kind: BuildKind,
        #[command(flatten)]
        field: FieldArgs,
        /// Dimension parameter for vd and vdr.
        #[arg(long)]
        d: Option<usize>,
        /// β as "a0,a1"; defaults to t.
        #[arg(long, conflicts_with = "alpha")]
        beta: Option<String>,
        /// α as "a0,a1"; converted with β = (-α)^(-1/p).
        #[arg(long)]
        alpha: Option<String>,
        /// Exponent m of the curve, for holo and dr.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyse module JSON files ("-" reads stdin).
    Query {
        #[command(subcommand)]
        query: Query,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock milliseconds per case (reports are then not
        /// reproducible byte for byte).
        #[arg(long)]
        timings: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// List the cases of a suite and the statement each one checks.
    Cases {
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Global seed; per-case seeds are derived from it and the case id.
    #[arg(long, env = "REPCURVE_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random attempts before the deterministic fallbacks.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Values of m for the curve suites.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_M_GRID)]
    pub m_grid: Vec<usize>,
    /// β for the curve and Jordan suites; defaults to t.
    #[arg(long)]
    pub beta: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct QueryOpts {
    #[arg(long, env = "REPCURVE_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Query {
    /// Isomorphism test; prints a witness M → N on YES.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opts: QueryOpts,
    },
    /// Indecomposability with the certificate tier.
    Indec {
        module: PathBuf,
        #[command(flatten)]
        opts: QueryOpts,
    },
    /// Jordan types over the projective line of the base field.
    Jordan { module: PathBuf },
    /// Isomorphism invariants.
    Profile { module: PathBuf },
    /// Filtration degree of a vector given as "a0,a1;b0,b1;...".
    Ddeg {
        module: PathBuf,
        #[arg(long)]
        vector: String,
    },
}

fn parse_elem(ctx: &FieldCtx, s: Option<&str>) -> Result<Option<FieldElem>, CliError> {
    s.map(|s| ctx.parse(s)).transpose().map_err(Into::into)
}

fn beta_arg(ctx: &FieldCtx, beta: Option<&str>, alpha: Option<&str>) -> Result<FieldElem, CliError> {
    if let Some(a) = parse_elem(ctx, alpha)? {
        return Ok(ctx.beta_from_alpha(a)?);
    }
    Ok(parse_elem(ctx, beta)?.unwrap_or_else(|| ctx.generator()))
}

fn read_module(path: &PathBuf) -> Result<HModule, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(HModule::from_json(&serde_json::from_str(&text)?)?)
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn require<T>(v: Option<T>, flag: &str, kind: BuildKind) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {kind:?}")))
}

fn build(
    kind: BuildKind,
    field: &FieldArgs,
    d: Option<usize>,
    beta: Option<&str>,
    alpha: Option<&str>,
    m: Option<usize>,
) -> Result<Value, CliError> {
    let ctx = field.ctx()?;
    Ok(match kind {
        BuildKind::Regular => regular_module(&ctx).to_json(),
        BuildKind::Aug => augmentation_ideal(&ctx).to_json(),
        BuildKind::Trivial => trivial_module(&ctx).to_json(),
        BuildKind::Vd => v_d(&ctx, require(d, "d", kind)?, beta_arg(&ctx, beta, alpha)?)?.to_json(),
        BuildKind::Vdr => v_dr(&ctx, require(d, "d", kind)?, beta_arg(&ctx, beta, alpha)?)?.to_json(),
        BuildKind::Holo | BuildKind::Dr => {
            let m = require(m, "m", kind)?;
            let params = CurveParams::from_beta(&ctx, m, beta_arg(&ctx, beta, alpha)?)?;
            let graded = if kind == BuildKind::Holo {
                holo_graded(&params)?
            } else {
                dr_graded(&params)?
            };
            json!({
                "p": ctx.p(),
                "n": ctx.n(),
                "modulus": ctx.modulus(),
                "m": m,
                "alpha": ctx.format(params.alpha),
                "beta": ctx.format(params.beta),
                "pieces": graded.to_json(),
            })
        }
    })
}

fn certificate_json(ctx: &FieldCtx, cert: &IndecCertificate) -> Value {
    let basis = |s: &repcurve_core::linalg::Subspace| -> Vec<Vec<String>> {
        s.basis_vectors()
            .iter()
            .map(|v| v.iter().map(|x| ctx.format(*x)).collect())
            .collect()
    };
    match cert {
        IndecCertificate::FixedLine => json!({ "tier": "T1" }),
        IndecCertificate::FittingSplit { kernel, image } => json!({
            "tier": "T2",
            "kernel": basis(kernel),
            "image": basis(image),
        }),
        IndecCertificate::Radical {
            end_dim,
            radical_dim,
            simple_factors,
            method,
        } => json!({
            "tier": "T3",
            "end_dim": end_dim,
            "radical_dim": radical_dim,
            "simple_factors": simple_factors,
            "method": format!("{method:?}"),
        }),
    }
}

fn query(q: &Query) -> Result<Value, CliError> {
    let start = Instant::now();
    let with_elapsed = |mut v: Value, timings: bool| {
        if timings {
            v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        v
    };
    Ok(match q {
        Query::Iso { a, b, opts } => {
            let (ma, mb) = (read_module(a)?, read_module(b)?);
            let dec = is_isomorphic(&ma, &mb, opts.seed, opts.trials)?;
            with_elapsed(
                json!({
                    "check": "iso",
                    "params": { "seed": opts.seed, "trials": opts.trials },
                    "verdict": if dec.isomorphic { "YES" } else { "NO" },
                    "method": dec.method,
                    "proven": dec.proven,
                    "witness": dec.witness.map(|w| w.to_json_grid()),
                }),
                opts.timings,
            )
        }
        Query::Indec { module, opts } => {
            let m = read_module(module)?;
            let dec = is_indecomposable(&m, opts.seed, opts.trials)?;
            with_elapsed(
                json!({
                    "check": "indec",
                    "params": { "seed": opts.seed, "trials": opts.trials },
                    "verdict": if dec.indecomposable { "INDECOMPOSABLE" } else { "DECOMPOSABLE" },
                    "certificate": certificate_json(m.ctx(), &dec.certificate),
                }),
                opts.timings,
            )
        }
        Query::Jordan { module } => {
            let m = read_module(module)?;
            let ctx = m.ctx();
            let scan: Vec<Value> = m
                .jordan_scan()
                .iter()
                .map(|((a, b), t)| json!({ "point": [ctx.format(*a), ctx.format(*b)], "type": t.to_string() }))
                .collect();
            json!({
                "check": "jordan",
                "generic": m.generic_jordan_type().ok().map(|t| t.to_string()),
                "constant": m.constant_type_over_scan(),
                "scan": scan,
            })
        }
        Query::Profile { module } => {
            let m = read_module(module)?;
            json!({ "check": "profile", "profile": profile(&m) })
        }
        Query::Ddeg { module, vector } => {
            let m = read_module(module)?;
            let v = vector
                .split(';')
                .map(|s| m.ctx().parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            if v.len() != m.dim() {
                return Err(CliError::Usage(format!(
                    "vector has {} entries, module has dimension {}",
                    v.len(),
                    m.dim()
                )));
            }
            json!({
                "check": "ddeg",
                "ddeg": m.ddeg(&v),
                "ddeg_prime": m.ddeg_prime(&v).ok(),
            })
        }
    })
}

fn suite_setup(run: &RunArgs, suite: Suite) -> Result<(FieldCtx, suites::Registry), CliError> {
    let ctx = run.field.ctx()?;
    if ctx.n() < 2 {
        return Err(CliError::Usage("suites need a proper extension of F_p (--n ≥ 2)".into()));
    }
    let beta = beta_arg(&ctx, run.beta.as_deref(), None)?;
    if ctx.in_prime_field(beta) {
        return Err(KmodError::PrimeFieldElement.into());
    }
    let reg = registry(suite, &ctx, &run.m_grid, beta)?;
    Ok((ctx, reg))
}

pub fn run_suite(
    suite: Suite,
    run: &RunArgs,
    timings: bool,
    jobs: usize,
) -> Result<SuiteReport, CliError> {
    let (ctx, reg) = suite_setup(run, suite)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let cases: Vec<CaseRecord> = pool.install(|| {
        reg.cases
            .par_iter()
            .map(|case| {
                let env = CaseEnv {
                    ctx: ctx.clone(),
                    seed: case_seed(run.seed, &case.id),
                    trials: run.trials,
                };
                let start = Instant::now();
                let outcome = case.execute(&env);
                CaseRecord {
                    id: case.id.clone(),
                    verdict: outcome.verdict,
                    certificate: outcome.certificate,
                    ms: timings.then(|| start.elapsed().as_millis() as u64),
                }
            })
            .collect()
    });
    Ok(SuiteReport::new(suite, &ctx, run.seed, run.trials, reg.grid, cases))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Build {
            kind,
            field,
            d,
            beta,
            alpha,
            m,
            out: path,
        } => {
            let v = build(kind, &field, d, beta.as_deref(), alpha.as_deref(), m)?;
            emit(out, path.as_ref(), &serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Query { query: q } => {
            let v = query(&q)?;
            emit(out, None, &serde_json::to_string_pretty(&v)?)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            run,
            format,
            out: path,
            timings,
            jobs,
        } => {
            let report = run_suite(suite, &run, timings, jobs)?;
            emit(out, path.as_ref(), &report.render(format)?)?;
            Ok(report.exit_code())
        }
        Command::Cases { suite, run, format } => {
            let (_, reg) = suite_setup(&run, suite)?;
            emit(out, None, &report::render_cases(&reg, format)?)?;
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let record = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(err, "{record}");
            2
        }
    }
}
