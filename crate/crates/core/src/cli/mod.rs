//! Command-line front end.
//!
//! Every run prints one JSON report `{command, exit_status, inputs_digest,
//! results}` with sorted keys. Exit codes: 0 computed, 1 invalid input or a
//! failed check, 2 search exhausted or verdict unknown, 64 usage error.

mod record;

pub use record::{
    digest_value, BasicClassRecord, CupRecord, ManifoldRecord, Parity, Provenance,
};

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{
    abundance_decide, construct_lambda, four_odd_squares, is_legendre_exception,
    isotropic_vectors, search_hyperbolic_pair_with, three_squares, LatticeError, LatticeVector,
    SearchOptions,
};
use crate::ringcalc::{
    c_normal_closed_form, ch_normal_direct, ch_normal_pipeline, chern_from_character,
    BigradedClass, ChNormalInput, CohomologyModel, RingError,
};
use crate::series::{
    blowup_congruence_suite, congruence_check, sw_series, witten_rhs, SeriesContext,
    SeriesError, TruncatedSeries,
};
use crate::topology::{
    asd_indices, blow_up, level_shift, morgan_mrowka_flatness, ns_direct_expansion,
    reduction_indices, surface_catalog, sw_dimension, validate_spinu, SpinCStructure,
    SpinUStructure, SurfaceFamily, TopologyError,
};
use crate::{format_rational, parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable supplying the default `--bound`.
pub const BOUND_ENV: &str = "FOURMAN_SEARCH_BOUND";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn violations(&self) -> Vec<String> {
        match self {
            CliError::Validation(v) => v.clone(),
            other => vec![other.to_string()],
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fourman", version, about = "Exact invariants of smooth four-manifolds")]
pub struct Cli {
    /// Write the report to FILE instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the form contains a hyperbolic pair orthogonal to K.
    Abundance(SearchArgs),
    /// Characteristic numbers, moduli dimensions and constraint checks.
    Dims(StructureArgs),
    /// Indices n′, n″ of the normal operator along a reducible.
    Indices(IndicesArgs),
    /// Chern character of the normal bundle.
    ChernNormal(ChernArgs),
    /// Truncated Seiberg-Witten series.
    SeriesSw(SeriesArgs),
    /// Witten relation and blow-up congruences for a Donaldson series.
    WittenCheck(WittenArgs),
    /// Blow up a manifold record.
    Blowup(InputArgs),
    /// Search for a hyperbolic pair orthogonal to K.
    LatticeSearch(SearchArgs),
    /// Sum-of-squares constructions.
    #[command(subcommand)]
    Numtheory(NumCommand),
    /// Generate manifold records.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Manifold record (JSON).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Max-norm bound on the search; defaults to $FOURMAN_SEARCH_BOUND.
    #[arg(long)]
    pub bound: Option<u32>,
    /// Class K; defaults to the first recorded basic class.
    #[arg(long)]
    pub kappa: Option<String>,
    /// Disable the parallel search.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct StructureArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Spin^u data, e.g. `c1=[1,0],p1=-3,w2=[1,0]`.
    #[arg(long)]
    pub spinu: Option<String>,
    /// Spin^c data, e.g. `c1=[1,1]`.
    #[arg(long)]
    pub spinc: Option<String>,
}

#[derive(Debug, Args)]
pub struct IndicesArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub spinu: String,
    #[arg(long)]
    pub spinc: String,
    /// Also report the structure with p1 shifted by 4·LEVEL.
    #[arg(long)]
    pub level: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChernMode {
    Direct,
    Pipeline,
    Both,
}

#[derive(Debug, Args)]
pub struct ChernArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub spinu: String,
    #[arg(long)]
    pub spinc: String,
    /// Rank of the obstruction part.
    #[arg(long, default_value_t = 0)]
    pub rxi: i64,
    /// Truncation in powers of μ.
    #[arg(long, default_value_t = 2)]
    pub cap: u32,
    #[arg(long, value_enum, default_value_t = ChernMode::Both)]
    pub mode: ChernMode,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// The class w; zero when omitted.
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
}

#[derive(Debug, Args)]
pub struct WittenArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub w: Option<String>,
    /// Defaults to c(X).
    #[arg(long)]
    pub degree: Option<u32>,
    /// Donaldson series as `[[multi-index], "p/q"]` pairs; defaults to the Witten side.
    #[arg(long)]
    pub donaldson: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum NumCommand {
    /// Four odd squares summing to K.
    FourOddSquares { k: u64 },
    /// Three squares summing to N.
    ThreeSquares { n: u64 },
    /// Whether N has the form 4^a(8b+7).
    Legendre { n: u64 },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Elliptic surface E(n)_{p,q}.
    Elliptic {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        q: u32,
    },
    /// Minimal surface of general type.
    GeneralType {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[arg(long, allow_hyphen_values = true)]
        k2: i64,
        #[arg(long)]
        even: bool,
    },
    /// Blow-up of a record.
    Blowup(InputArgs),
}

/// Outcome of a command before it is wrapped into a report.
struct Outcome {
    results: Value,
    exit: i32,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome {
            results,
            exit: EXIT_OK,
        }
    }
}

/// Files read during a run, folded into the digest.
#[derive(Default)]
struct Inputs(Vec<Value>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.0.push(Value::String(text.clone()));
        Ok(text)
    }

    fn record(&mut self, path: &Path) -> Result<ManifoldRecord, CliError> {
        ManifoldRecord::from_json(&self.read(path)?)
    }
}

/// Runs the CLI on `argv` (program name first). Returns the exit code and the
/// text written to stdout.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let echo = command_echo(&argv);
    let mut inputs = Inputs::default();
    let outcome = match execute(&cli.command, &mut inputs) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => return (EXIT_USAGE, format!("usage: {msg}\n")),
        Err(e) => Outcome {
            results: json!({ "error": e.to_string(), "violations": e.violations() }),
            exit: EXIT_INVALID,
        },
    };
    let digest = digest_value(&json!({ "command": echo, "inputs": inputs.0 }));
    let report = json!({
        "command": echo,
        "inputs_digest": digest,
        "results": outcome.results,
        "exit_status": outcome.exit,
    });
    let text = serde_json::to_string_pretty(&report).expect("values serialize") + "\n";
    match &cli.output {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => (outcome.exit, String::new()),
            Err(e) => (EXIT_INVALID, format!("{}: {e}\n", path.display())),
        },
        None => (outcome.exit, text),
    }
}

/// Arguments after the program name, without `-o` and its value.
fn command_echo(argv: &[std::ffi::OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        let a = a.to_string_lossy().to_string();
        if skip {
            skip = false;
            continue;
        }
        if a == "-o" || a == "--output" {
            skip = true;
            continue;
        }
        if a.starts_with("--output=") || (a.starts_with("-o") && a.len() > 2) {
            continue;
        }
        out.push(a);
    }
    out
}

fn execute(cmd: &Command, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    match cmd {
        Command::Abundance(a) => abundance(a, inputs),
        Command::Dims(a) => dims(a, inputs),
        Command::Indices(a) => indices(a, inputs),
        Command::ChernNormal(a) => chern_normal(a, inputs),
        Command::SeriesSw(a) => series_sw(a, inputs),
        Command::WittenCheck(a) => witten_check(a, inputs),
        Command::Blowup(a) => blowup(a, inputs),
        Command::LatticeSearch(a) => lattice_search(a, inputs),
        Command::Numtheory(n) => numtheory(n),
        Command::Catalog(c) => catalog(c, inputs),
    }
}

fn search_bound(explicit: Option<u32>) -> Result<Option<u32>, CliError> {
    if explicit.is_some() {
        return Ok(explicit);
    }
    match std::env::var(BOUND_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{BOUND_ENV}={s} is not a bound"))),
        Err(_) => Ok(None),
    }
}

fn kappa_of(args: &SearchArgs, rec: &ManifoldRecord) -> Result<LatticeVector, CliError> {
    if let Some(k) = &args.kappa {
        return Ok(parse_vector(k)?.into());
    }
    rec.basic_classes
        .as_ref()
        .and_then(|b| b.first())
        .map(|b| b.k.clone().into())
        .ok_or_else(|| CliError::Validation(vec!["no --kappa and no basic class recorded".into()]))
}

fn abundance(a: &SearchArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let entry = rec.to_entry()?;
    let x = &entry.manifold;
    let k = kappa_of(a, &rec)?;
    let verdict = abundance_decide(x, &k, search_bound(a.bound)?)?;
    let mut results = json!({ "verdict": verdict, "abundant": verdict.is_abundant() });
    if let (Some(cert), Some(l)) = (&verdict.certificate, x.gram()) {
        let lambdas = (1..=3)
            .map(|j| {
                let v = construct_lambda(l, cert, j, x.chi(), x.sigma())?;
                Ok(json!({ "j": j, "lambda": v, "square": l.square(&v) }))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        results["lambdas"] = Value::Array(lambdas);
    }
    let exit = if verdict.is_abundant() {
        EXIT_OK
    } else {
        EXIT_UNRESOLVED
    };
    Ok(Outcome { results, exit })
}

fn lattice_search(a: &SearchArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let entry = rec.to_entry()?;
    let l = entry.manifold.require_gram()?;
    let k = kappa_of(a, &rec)?;
    let bound = search_bound(a.bound)?
        .ok_or_else(|| CliError::Usage(format!("lattice-search needs --bound or {BOUND_ENV}")))?;
    let opts = SearchOptions {
        parallel: !a.serial,
    };
    let cert = search_hyperbolic_pair_with(l, &k, bound, opts)?;
    let isotropic = isotropic_vectors(l, &k, bound, opts)?.len();
    let exit = if cert.is_some() {
        EXIT_OK
    } else {
        EXIT_UNRESOLVED
    };
    Ok(Outcome {
        results: json!({
            "bound": bound,
            "kappa": k,
            "certificate": cert,
            "isotropic_count": isotropic,
        }),
        exit,
    })
}

fn numbers_json(x: &crate::topology::FourManifold) -> Value {
    let n = x.numbers();
    json!({ "chi": n.chi, "sigma": n.sigma, "c": n.c, "b2": n.b2 })
}

fn dims(a: &StructureArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let x = rec.to_entry()?.manifold;
    let mut results = json!({ "numbers": numbers_json(&x) });
    let mut exit = EXIT_OK;
    if let Some(s) = &a.spinu {
        let t = parse_spinu(s)?;
        let violations: Vec<String> = validate_spinu(&t, &x)?
            .iter()
            .map(|v| v.to_string())
            .collect();
        if violations.is_empty() {
            results["asd"] = serde_json::to_value(asd_indices(&t, &x)?)?;
        } else {
            exit = EXIT_INVALID;
        }
        if x.spherical_pairings().is_some() {
            results["flat_excluded"] = json!(morgan_mrowka_flatness(&x, &t.w)?);
        }
        results["violations"] = json!(violations);
    }
    if let Some(s) = &a.spinc {
        let s = parse_spinc(s)?;
        s.validate(&x)?;
        results["sw_dimension"] = json!(sw_dimension(&s, &x)?);
    }
    Ok(Outcome { results, exit })
}

fn indices(a: &IndicesArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let x = rec.to_entry()?.manifold;
    let t = parse_spinu(&a.spinu)?;
    let s = parse_spinc(&a.spinc)?;
    s.validate(&x)?;
    let r = reduction_indices(&t, &s, &x)?;
    let q = x.require_gram()?;
    let expansion = ns_direct_expansion(
        q.square(&t.c1),
        q.pairing(&t.c1, &s.c1),
        q.square(&s.c1),
        x.chi(),
        x.sigma(),
    );
    let mut results = json!({
        "reduction": r,
        "ns_expansion": format_rational(&expansion),
        "consistent": expansion == Rational::from_integer(r.ns.into()),
    });
    if let Some(ell) = a.level {
        let shifted = level_shift(&t, ell);
        results["level_shift"] = json!({
            "level": ell,
            "p1": shifted.p1,
            "asd": asd_indices(&shifted, &x)?,
        });
    }
    Ok(Outcome::ok(results))
}

fn class_json(c: &BigradedClass) -> Value {
    Value::Array(
        c.listing()
            .into_iter()
            .map(|(name, v)| json!([name, format_rational(&v)]))
            .collect(),
    )
}

fn chern_normal(a: &ChernArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let x = rec.to_entry()?.manifold;
    let q = x.require_gram()?;
    let model = CohomologyModel::new(x.b1 as usize, q.gram().to_vec(), &rec.cup_table(), a.cap)?
        .with_characteristic_numbers(x.chi(), x.sigma());
    let t = parse_spinu(&a.spinu)?;
    let s = parse_spinc(&a.spinc)?;
    let input = ChNormalInput::new(model, t.c1.0.clone(), s.c1.0.clone(), a.rxi)?;
    let (np, npp) = input.indices()?;
    let mut results = json!({ "ns_prime": np, "ns_double_prime": npp, "cap": a.cap });
    let direct = matches!(a.mode, ChernMode::Direct | ChernMode::Both)
        .then(|| ch_normal_direct(&input))
        .transpose()?;
    let pipeline = matches!(a.mode, ChernMode::Pipeline | ChernMode::Both)
        .then(|| ch_normal_pipeline(&input))
        .transpose()?;
    if let Some(d) = &direct {
        results["direct"] = class_json(d);
    }
    if let Some(p) = &pipeline {
        results["pipeline"] = class_json(p);
    }
    let mut exit = EXIT_OK;
    if let (Some(d), Some(p)) = (&direct, &pipeline) {
        let equal = d == p;
        results["equal"] = json!(equal);
        if !equal {
            exit = EXIT_INVALID;
        }
    }
    let ch = direct.or(pipeline).expect("at least one route runs");
    let rank = Rational::from_integer((a.rxi + np + npp).into());
    if let Ok(c) = chern_from_character(&ch, &rank, a.cap) {
        results["chern"] = class_json(&c);
    }
    if let Ok(c) = c_normal_closed_form(&input) {
        results["closed_form"] = class_json(&c);
    }
    Ok(Outcome { results, exit })
}

fn series_json(s: &TruncatedSeries) -> Value {
    json!({
        "cap": s.cap(),
        "vars": s.vars(),
        "terms": s
            .sorted_terms()
            .into_iter()
            .map(|(idx, c)| json!([idx, format_rational(&c)]))
            .collect::<Vec<_>>(),
        "pretty": s.to_string(),
    })
}

fn parse_series(text: &str, vars: Vec<String>, cap: u32) -> Result<TruncatedSeries, CliError> {
    let pairs: Vec<(Vec<u32>, String)> = serde_json::from_str(text)?;
    let mut s = TruncatedSeries::zero(vars, cap);
    for (idx, c) in pairs {
        if idx.len() != s.nvars() {
            return Err(CliError::Validation(vec![format!(
                "multi-index {idx:?} has {} entries, expected {}",
                idx.len(),
                s.nvars()
            )]));
        }
        let c = parse_rational(&c)
            .ok_or_else(|| CliError::Validation(vec![format!("bad rational {c}")]))?;
        s.add_term(idx, c);
    }
    Ok(s)
}

fn series_context(
    rec: &ManifoldRecord,
    w: Option<&String>,
    cap: u32,
) -> Result<SeriesContext, CliError> {
    let x = rec.to_entry()?.manifold;
    let q = x.require_gram()?.clone();
    let w: LatticeVector = match w {
        Some(w) => parse_vector(w)?.into(),
        None => LatticeVector::zero(q.rank()),
    };
    Ok(SeriesContext::new(q, w, rec.sw_data(), cap, x.c())?)
}

fn series_sw(a: &SeriesArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let ctx = series_context(&rec, a.w.as_ref(), a.degree)?;
    let sw = sw_series(&ctx)?;
    let vanishing = (ctx.c_x - 2).max(0) as u32;
    let zero = TruncatedSeries::zero(sw.vars().to_vec(), sw.cap());
    Ok(Outcome::ok(json!({
        "c": ctx.c_x,
        "sw_series": series_json(&sw),
        "vanishing_order": sw.vanishing_order(),
        "vanishes_below_c_minus_2": congruence_check(&sw, &zero, vanishing)?.holds,
    })))
}

fn witten_check(a: &WittenArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let rec = inputs.record(&a.input)?;
    let probe = series_context(&rec, a.w.as_ref(), 0)?;
    let degree = a.degree.unwrap_or(probe.c_x.max(0) as u32);
    let ctx = SeriesContext {
        cap: degree,
        ..probe
    };
    let rhs = witten_rhs(&ctx)?;
    let d = match &a.donaldson {
        Some(p) => parse_series(&inputs.read(p)?, ctx.vars(), degree)?,
        None => rhs.clone(),
    };
    let suite = blowup_congruence_suite(&ctx, &d)?;
    let exit = if suite.passed {
        EXIT_OK
    } else {
        EXIT_INVALID
    };
    Ok(Outcome {
        results: json!({
            "c": ctx.c_x,
            "witten_rhs": series_json(&rhs),
            "suite": suite,
        }),
        exit,
    })
}

fn blowup(a: &InputArgs, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let parent = inputs.record(&a.input)?;
    let child = blow_up(&parent.to_entry()?)?;
    let provenance = Provenance {
        family: "blowup".into(),
        params: json!({ "parent": parent, "parent_digest": parent.digest() }),
    };
    let rec = ManifoldRecord::from_entry(&child, Some(provenance));
    Ok(Outcome::ok(json!({
        "record": rec,
        "numbers": numbers_json(&child.manifold),
    })))
}

fn numtheory(n: &NumCommand) -> Result<Outcome, CliError> {
    let results = match *n {
        NumCommand::FourOddSquares { k } => match four_odd_squares(k) {
            Ok((a, b, c, d)) => json!({ "k": k, "squares": [a, b, c, d] }),
            Err(e) => return Err(e.into()),
        },
        NumCommand::ThreeSquares { n } => match three_squares(n) {
            Some((a, b, c)) => json!({ "n": n, "squares": [a, b, c] }),
            None => {
                return Ok(Outcome {
                    results: json!({ "n": n, "squares": null, "legendre_exception": true }),
                    exit: EXIT_UNRESOLVED,
                })
            }
        },
        NumCommand::Legendre { n } => json!({ "n": n, "exception": is_legendre_exception(n) }),
    };
    Ok(Outcome::ok(results))
}

fn catalog(c: &CatalogCommand, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let family = match *c {
        CatalogCommand::Elliptic { n, p, q } => SurfaceFamily::Elliptic { n, p, q },
        CatalogCommand::GeneralType {
            chi,
            sigma,
            k2,
            even,
        } => SurfaceFamily::GeneralType {
            chi,
            sigma,
            k2,
            even,
        },
        CatalogCommand::Blowup(ref a) => return blowup(a, inputs),
    };
    let entry = surface_catalog(&family)?;
    let params = serde_json::to_value(&family)?;
    let name = params["family"].as_str().unwrap_or_default().to_string();
    let rec = ManifoldRecord::from_entry(
        &entry,
        Some(Provenance {
            family: name,
            params,
        }),
    );
    Ok(Outcome::ok(json!({
        "record": rec,
        "numbers": numbers_json(&entry.manifold),
    })))
}

/// Integer vector: `[1,-2,0]`, `1:-2:0` or `1,-2,0`.
pub fn parse_vector(s: &str) -> Result<Vec<i64>, CliError> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split([',', ':', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad integer {t:?} in {s:?}")))
        })
        .collect()
}

/// Splits `key=value` pairs on commas outside brackets.
fn parse_fields(s: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut fields = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars().chain(std::iter::once(',')) {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            if !cur.trim().is_empty() {
                let (k, v) = cur
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("expected key=value, got {cur:?}")))?;
                fields.push((k.trim().to_string(), v.trim().to_string()));
            }
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    Ok(fields)
}

fn field<'a>(fields: &'a [(String, String)], key: &str) -> Option<&'a str> {
    fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn check_keys(fields: &[(String, String)], allowed: &[&str]) -> Result<(), CliError> {
    match fields.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(CliError::Usage(format!("unknown key {k:?}"))),
        None => Ok(()),
    }
}

pub fn parse_spinu(s: &str) -> Result<SpinUStructure, CliError> {
    let f = parse_fields(s)?;
    check_keys(&f, &["c1", "p1", "w2", "w"])?;
    let c1 = parse_vector(field(&f, "c1").ok_or_else(|| CliError::Usage("spinu needs c1".into()))?)?;
    let p1 = match field(&f, "p1") {
        Some(p) => p
            .parse()
            .map_err(|_| CliError::Usage(format!("bad p1 {p:?}")))?,
        None => 0,
    };
    let w = match field(&f, "w2").or_else(|| field(&f, "w")) {
        Some(w) => parse_vector(w)?,
        None => vec![0; c1.len()],
    };
    Ok(SpinUStructure::new(c1, p1, w))
}

pub fn parse_spinc(s: &str) -> Result<SpinCStructure, CliError> {
    let f = parse_fields(s)?;
    check_keys(&f, &["c1"])?;
    let c1 = parse_vector(field(&f, "c1").ok_or_else(|| CliError::Usage("spinc needs c1".into()))?)?;
    Ok(SpinCStructure::new(c1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parsing() {
        let t = parse_spinu("c1=[1,0,-1],p1=-6,w2=1:0:1").unwrap();
        assert_eq!(t.c1.0, vec![1, 0, -1]);
        assert_eq!(t.p1, -6);
        assert_eq!(t.w.0, vec![1, 0, 1]);
        assert!(parse_spinu("c1=[1],q=2").is_err());
        assert_eq!(parse_spinc("c1=[]").unwrap().c1.0, Vec::<i64>::new());
    }

    #[test]
    fn echo_drops_output_path() {
        let argv: Vec<std::ffi::OsString> = ["fourman", "numtheory", "-o", "x.json", "legendre", "7"]
            .iter()
            .map(Into::into)
            .collect();
        assert_eq!(command_echo(&argv), vec!["numtheory", "legendre", "7"]);
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run(["fourman", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(["fourman", "numtheory", "legendre", "7", "--nope"]).0, EXIT_USAGE);
        assert_eq!(run(["fourman", "--help"]).0, EXIT_OK);
    }

    #[test]
    fn four_odd_squares_report() {
        let (code, out) = run(["fourman", "numtheory", "four-odd-squares", "4"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["squares"], json!([1, 1, 1, 1]));
        let (code, _) = run(["fourman", "numtheory", "four-odd-squares", "5"]);
        assert_eq!(code, EXIT_INVALID);
    }
}
