//! Command-line front end: `gen`, `sumset`, `compress`, `reduce`, `project`,
//! `verify`, `suite` and `probe`.
//!
//! Exit codes: 0 when every certificate holds, 1 when any is violated, 2 on
//! usage or input errors, 3 when some certificate is indeterminate and none
//! is violated.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::bounds;
use crate::certificate::{Certificate, StatementId, Verdict};
use crate::compression::{self, CompressionSpec};
use crate::error::{Error, Result};
use crate::generators;
use crate::geometry;
use crate::interval::START_PRECISION;
use crate::io::{self as fmt_io, encode_row};
use crate::linalg::{Basis, LinearSystem, Subspace};
use crate::point::{Point, PointSet};
use crate::rational::parse_rational;
use crate::rng::SplitMix64;
use crate::suite::{self, SuiteKind, DEFAULT_SEED};
use crate::sumset;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

pub const DEFAULT_MAX_POINTS: u128 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "sumsetlab", version, about = "Exact sumsets, compressions and certified sumset inequalities")]
pub struct Cli {
    /// Refuse computations whose estimated output exceeds this many points.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POINTS)]
    pub max_points: u128,
    /// Worker threads for sweeps (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Interval precision cap in bits; overrides SUMSETLAB_PRECISION_CAP.
    #[arg(long, global = true)]
    pub precision_cap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate point sets and matrix systems.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Minkowski, iterated or weighted sumsets.
    Sumset(SumsetArgs),
    /// Apply a compression, or normalise to a down set.
    Compress(CompressArgs),
    /// Reduce a full-dimensional set to the long simplex by compressions.
    Reduce(ReduceArgs),
    /// Project a set onto coordinates of a basis.
    Project(ProjectArgs),
    /// Evaluate a statement over a parameter sweep.
    Verify(Box<VerifyArgs>),
    /// Run the acceptance suite.
    Suite(SuiteArgs),
    /// Informational probes.
    #[command(subcommand)]
    Probe(ProbeCommand),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Long simplex `{0, e_2, …, e_d} ∪ {e_1, …, (N−d)e_1}`.
    Simplex {
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: usize,
        /// Use `{0, e_1, …, e_d} + {0, e_1, …, (N−d−1)e_1}` instead.
        #[arg(long)]
        sumset_form: bool,
    },
    /// The cube `{−N, …, N}^d`.
    Cube {
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: u32,
    },
    /// The rotation system of dimension d.
    Rotation {
        #[arg(long)]
        d: usize,
    },
    /// The shear pair, or its set with `--emit set`.
    Shear {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = ShearPart::System)]
        emit: ShearPart,
    },
    /// Grid `{1..n} × {1..m}`.
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Seeded random set in `{0, …, box−1}^d`.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        size: usize,
        #[arg(long = "box")]
        side: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        full_dimensional: bool,
    },
    /// Seeded random system of invertible integer matrices.
    RandomSystem {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShearPart {
    System,
    Set,
}

#[derive(Args, Debug)]
pub struct SumsetArgs {
    /// Summands `A_1 + … + A_m`.
    #[arg(long, num_args = 1..)]
    pub sets: Vec<String>,
    /// Single set for `kA` or the weighted sumset.
    #[arg(long)]
    pub set: Option<String>,
    /// Matrix system for `L_1(A) + … + L_k(A)`.
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    #[arg(long)]
    pub set: String,
    /// Coordinate compression along `e_i` (1-based).
    #[arg(long, conflicts_with = "spec")]
    pub axis: Option<usize>,
    /// Compression spec file or inline JSON.
    #[arg(long)]
    pub spec: Option<String>,
    /// Sweep coordinate compressions until the set is a down set.
    #[arg(long, conflicts_with_all = ["axis", "spec"])]
    pub down: bool,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub set: String,
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    #[arg(long)]
    pub set: String,
    /// Kept basis coordinates, 1-based, e.g. `1,3`.
    #[arg(long)]
    pub indices: String,
    /// Basis file; the standard basis when absent.
    #[arg(long)]
    pub basis: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    pub statement: String,
    /// Sweep ranges: `a..b` (inclusive), `a,b,c` or a single value.
    #[arg(long, default_value = "2")]
    pub d: String,
    #[arg(long = "N", default_value = "4")]
    pub n_range: String,
    #[arg(long, default_value = "2")]
    pub k: String,
    #[arg(long, visible_alias = "seed", default_value = "1")]
    pub seeds: String,
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, num_args = 1..)]
    pub sets: Vec<String>,
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long)]
    pub subspace: Option<String>,
    #[arg(long)]
    pub basis: Option<String>,
    /// Comma-separated `n x m` grids, e.g. `2x2,2x3`.
    #[arg(long)]
    pub grids: Option<String>,
    /// Covering direction for `gs_kfold`.
    #[arg(long, default_value = "1,0")]
    pub direction: String,
    #[arg(long)]
    pub axis: Option<usize>,
    #[arg(long)]
    pub spec: Option<String>,
    /// 1-based projection indices.
    #[arg(long, default_value = "1")]
    pub indices: String,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Size of generated random sets.
    #[arg(long, default_value_t = 8)]
    pub size: usize,
    #[arg(long = "box", default_value_t = 4)]
    pub side: u64,
    #[arg(long, default_value_t = 8)]
    pub k_max: usize,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(value_parser = parse_suite_kind)]
    pub kind: SuiteKind,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Run a single criterion (1-based).
    #[arg(long)]
    pub criterion: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ProbeCommand {
    /// Deficit `k^d|A| − |ΣL_i(A)|` and its growth exponent.
    MainTerm {
        #[arg(long)]
        system: String,
        #[arg(long)]
        set: String,
    },
    /// Comparison with `(Σ|det L_i|^{1/d})^d |A|`.
    Determinant {
        #[arg(long)]
        system: String,
        #[arg(long)]
        set: String,
    },
    /// Eventual polynomial of `|kA|` against the k-fold Freiman bound.
    Khovanskii {
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
    },
}

fn parse_suite_kind(s: &str) -> std::result::Result<SuiteKind, String> {
    s.parse::<SuiteKind>().map_err(|e| e.to_string())
}

/// Validated configuration of one invocation; equal configurations produce
/// byte-identical reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub statement: Option<StatementId>,
    pub sweep: Sweep,
    pub precision_cap: u32,
    pub format: Format,
    pub seed: u64,
    pub max_points: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub d: Vec<usize>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub seeds: Vec<u64>,
}

impl Sweep {
    pub fn single() -> Self {
        Self { d: vec![2], n: vec![4], k: vec![2], seeds: vec![1] }
    }

    /// Cases in lexicographic `(d, N, k, seed)` order.
    pub fn cases(&self) -> Vec<Case> {
        let mut out = Vec::new();
        for &d in &self.d {
            for &n in &self.n {
                for &k in &self.k {
                    for &seed in &self.seeds {
                        out.push(Case { d, n, k, seed });
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Case {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let s = &self.sweep;
        if s.d.is_empty() || s.n.is_empty() || s.k.is_empty() || s.seeds.is_empty() {
            return Err(Error::InvalidArgument("sweep ranges must be non-empty".into()));
        }
        if self.precision_cap < START_PRECISION {
            return Err(Error::InvalidArgument(format!(
                "precision cap must be at least {START_PRECISION} bits"
            )));
        }
        Ok(())
    }
}

/// Parses `a..b` (inclusive), `a,b,c` or a single integer.
pub fn parse_range<T: TryFrom<u64>>(text: &str) -> Result<Vec<T>> {
    let bad = || Error::InvalidArgument(format!("bad range {text:?}"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let values: Vec<u64> = if let Some((lo, hi)) = text.split_once("..") {
        (num(lo)?..=num(hi)?).collect()
    } else {
        text.split(',').filter(|s| !s.trim().is_empty()).map(num).collect::<Result<_>>()?
    };
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("empty range {text:?}")));
    }
    values.into_iter().map(|v| T::try_from(v).map_err(|_| bad())).collect()
}

fn parse_indices(text: &str) -> Result<Vec<usize>> {
    let one_based: Vec<usize> = parse_range(text)?;
    one_based
        .into_iter()
        .map(|i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::InvalidArgument("indices are 1-based".into()))
        })
        .collect()
}

fn parse_vector(text: &str) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Point::new(coords))
}

fn parse_grids(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(|g| {
            let (n, m) = g
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::InvalidArgument(format!("bad grid {g:?}, expected NxM")))?;
            let p = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad grid {g:?}")))
            };
            Ok((p(n)?, p(m)?))
        })
        .collect()
}

fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn substitute(source: &str, case: &Case) -> String {
    source
        .replace("{d}", &case.d.to_string())
        .replace("{N}", &case.n.to_string())
        .replace("{k}", &case.k.to_string())
        .replace("{seed}", &case.seed.to_string())
}

fn field<T: std::str::FromStr>(parts: &[&str], i: usize, source: &str) -> Result<T> {
    parts
        .get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("bad source {source:?}")))
}

/// Derives the seed of the `index`-th generated input of a case.
fn input_seed(seed: u64, index: usize) -> u64 {
    SplitMix64::fork(seed, index as u64).next_u64()
}

/// Resolves a set source: a file, `-`, or a generator
/// `simplex:d:N`, `simplex-sumset:d:N`, `cube:d:N`, `grid:n:m`,
/// `random:d:size:box:seed`, `shear:N`. Bare `random` draws a full-dimensional
/// set from the case parameters.
pub fn load_set(source: &str) -> Result<PointSet> {
    let parts: Vec<&str> = source.split(':').collect();
    let f = |i| field::<usize>(&parts, i, source);
    match parts[0] {
        "simplex" if parts.len() == 3 => generators::long_simplex(f(1)?, f(2)?),
        "simplex-sumset" if parts.len() == 3 => generators::long_simplex_sumset_form(f(1)?, f(2)?),
        "cube" if parts.len() == 3 => generators::cube(f(1)?, field(&parts, 2, source)?),
        "grid" if parts.len() == 3 => Ok(generators::grid(&[(f(1)?, f(2)?)])?.remove(0)),
        "random" if parts.len() == 5 => {
            generators::random_set(f(1)?, f(2)?, field(&parts, 3, source)?, field(&parts, 4, source)?)
        }
        "shear" if parts.len() == 2 => Ok(generators::shear_counterexample(f(1)?)?.1),
        _ => fmt_io::parse_point_set(&read_text(source)?),
    }
}

/// Resolves a system source: a file, `-`, or `rotation:d`, `shear:N`,
/// `identity:d:k`, `random:d:k:bound:seed`.
pub fn load_system(source: &str) -> Result<LinearSystem> {
    let parts: Vec<&str> = source.split(':').collect();
    let f = |i| field::<usize>(&parts, i, source);
    match parts[0] {
        "rotation" if parts.len() == 2 => generators::rotation_system(f(1)?),
        "shear" if parts.len() == 2 => Ok(generators::shear_counterexample(f(1)?)?.0),
        "identity" if parts.len() == 3 => {
            let d = f(1)?;
            LinearSystem::new(vec![crate::linalg::RationalMatrix::identity(d); f(2)?])
        }
        "random" if parts.len() == 5 => generators::random_system(
            f(1)?,
            f(2)?,
            field(&parts, 3, source)?,
            field(&parts, 4, source)?,
        ),
        _ => fmt_io::parse_system(&read_text(source)?),
    }
}

/// Requested random-set size, capped by the number of points in the box.
fn random_size(args: &VerifyArgs, d: usize) -> usize {
    let volume = u32::try_from(d).ok().and_then(|d| args.side.checked_pow(d));
    volume.map_or(args.size, |v| args.size.min(usize::try_from(v).unwrap_or(usize::MAX)))
}

fn load_case_set(source: &str, case: &Case, args: &VerifyArgs, index: usize) -> Result<PointSet> {
    if source == "random" {
        let size = random_size(args, case.d).max(case.d + 1);
        return generators::random_full_dimensional_set(case.d, size, args.side, input_seed(case.seed, index));
    }
    load_set(&substitute(source, case))
}

fn load_spec(source: &str, dim: usize) -> Result<CompressionSpec> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        read_text(source)?
    };
    let value: Json = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    CompressionSpec::from_json(&value, dim)
}

fn axis_spec(dim: usize, axis: usize) -> Result<CompressionSpec> {
    if axis == 0 || axis > dim {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range 1..={dim}")));
    }
    Ok(CompressionSpec::axis(dim, axis - 1))
}

fn guard(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

fn guard_sum(sets: &[&PointSet], budget: u128) -> Result<()> {
    guard(sumset::sumset_size_bound(sets), budget)
}

fn guard_weighted(system: &LinearSystem, a: &PointSet, budget: u128) -> Result<()> {
    let images = system
        .maps()
        .iter()
        .map(|m| sumset::linear_image(m, a))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&PointSet> = images.iter().collect();
    guard_sum(&refs, budget)
}

/// Output of a command: the rendered report and its exit code.
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_HOLDS }
    }
}

fn exit_code<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> i32 {
    let mut code = EXIT_HOLDS;
    for v in verdicts {
        match v {
            Verdict::Violated => return EXIT_VIOLATED,
            Verdict::Indeterminate => code = EXIT_INDETERMINATE,
            Verdict::Holds => {}
        }
    }
    code
}

fn line(value: &Json) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => match emit(&cli, &report.text) {
            Ok(()) => report.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(Error::ReductionStalled { steps }) => {
            eprintln!("error: reduction stalled after {steps} steps");
            EXIT_INDETERMINATE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn configure(cli: &Cli) -> Result<u32> {
    let cap = match cli.precision_cap {
        Some(cap) => {
            if cap < START_PRECISION {
                return Err(Error::InvalidArgument(format!(
                    "precision cap must be at least {START_PRECISION} bits"
                )));
            }
            std::env::set_var("SUMSETLAB_PRECISION_CAP", cap.to_string());
            cap
        }
        None => crate::interval::precision_cap(),
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::InvalidArgument("--jobs must be positive".into()));
        }
        // A pool may already exist when `run` is called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    Ok(cap)
}

fn execute(cli: &Cli) -> Result<Report> {
    let cap = configure(cli)?;
    let budget = cli.max_points;
    match &cli.command {
        Command::Gen(g) => cmd_gen(g),
        Command::Sumset(a) => cmd_sumset(a, budget, cli.format),
        Command::Compress(a) => cmd_compress(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Project(a) => cmd_project(a),
        Command::Verify(a) => {
            let config = RunConfig {
                command: "verify".into(),
                inputs: a.sets.iter().chain(&a.set).chain(&a.system).cloned().collect(),
                statement: Some(a.statement.parse()?),
                sweep: Sweep {
                    d: parse_range(&a.d)?,
                    n: parse_range(&a.n_range)?,
                    k: parse_range(&a.k)?,
                    seeds: parse_range(&a.seeds)?,
                },
                precision_cap: cap,
                format: cli.format,
                seed: DEFAULT_SEED,
                max_points: budget,
            };
            config.validate()?;
            cmd_verify(&config, a)
        }
        Command::Suite(a) => cmd_suite(a, cli.format),
        Command::Probe(p) => cmd_probe(p, budget, cli.format),
    }
}

fn cmd_gen(g: &GenCommand) -> Result<Report> {
    let text = match g {
        GenCommand::Simplex { d, n, sumset_form } => {
            let a = if *sumset_form {
                generators::long_simplex_sumset_form(*d, *n)?
            } else {
                generators::long_simplex(*d, *n)?
            };
            fmt_io::point_set_to_json(&a)
        }
        GenCommand::Cube { d, n } => fmt_io::point_set_to_json(&generators::cube(*d, *n)?),
        GenCommand::Rotation { d } => fmt_io::system_to_json(&generators::rotation_system(*d)?),
        GenCommand::Shear { n, emit } => {
            let (system, a) = generators::shear_counterexample(*n)?;
            match emit {
                ShearPart::System => fmt_io::system_to_json(&system),
                ShearPart::Set => fmt_io::point_set_to_json(&a),
            }
        }
        GenCommand::Grid { n, m } => fmt_io::point_set_to_json(&generators::grid(&[(*n, *m)])?[0]),
        GenCommand::Random { d, size, side, seed, full_dimensional } => {
            let a = if *full_dimensional {
                generators::random_full_dimensional_set(*d, *size, *side, *seed)?
            } else {
                generators::random_set(*d, *size, *side, *seed)?
            };
            fmt_io::point_set_to_json(&a)
        }
        GenCommand::RandomSystem { d, k, bound, seed } => {
            fmt_io::system_to_json(&generators::random_system(*d, *k, *bound, *seed)?)
        }
    };
    Ok(Report::ok(text + "\n"))
}

fn cmd_sumset(a: &SumsetArgs, budget: u128, format: Format) -> Result<Report> {
    let result = match (&a.set, &a.system, a.sets.is_empty()) {
        (Some(set), Some(system), true) => {
            let (set, system) = (load_set(set)?, load_system(system)?);
            guard_weighted(&system, &set, budget)?;
            sumset::weighted_sumset(&system, &set)?
        }
        (Some(set), None, true) => {
            let set = load_set(set)?;
            guard_sum(&vec![&set; a.k.max(1)], budget)?;
            sumset::iterated_sumset(&set, a.k)?
        }
        (None, None, false) => {
            let sets = a.sets.iter().map(|s| load_set(s)).collect::<Result<Vec<_>>>()?;
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            sumset::minkowski_sum(&sets)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "use --sets A B …, --set A [--k k], or --set A --system S".into(),
            ))
        }
    };
    let text = match format {
        Format::Csv => format!("size\n{}\n", result.len()),
        Format::Json if a.count_only => line(&json!({ "size": result.len() })),
        Format::Json => line(&json!({
            "size": result.len(),
            "set": serde_json::to_value(fmt_io::PointSetFile::encode(&result)).expect("serializable"),
        })),
    };
    Ok(Report::ok(text))
}

fn set_value(a: &PointSet) -> Json {
    serde_json::to_value(fmt_io::PointSetFile::encode(a)).expect("serializable")
}

fn cmd_compress(a: &CompressArgs) -> Result<Report> {
    let set = load_set(&a.set)?;
    let value = if a.down {
        let (down, trace) = compression::normalize_down(&set)?;
        json!({ "set": set_value(&down), "trace": trace.to_json(), "down_set": compression::is_down_set(&down) })
    } else {
        let spec = match (&a.axis, &a.spec) {
            (Some(axis), None) => axis_spec(set.dim(), *axis)?,
            (None, Some(spec)) => load_spec(spec, set.dim())?,
            _ => return Err(Error::InvalidArgument("give exactly one of --axis, --spec, --down".into())),
        };
        let out = compression::compress(&set, &spec)?;
        json!({ "spec": spec.to_json(), "set": set_value(&out) })
    };
    Ok(Report::ok(line(&value)))
}

fn cmd_reduce(a: &ReduceArgs) -> Result<Report> {
    let set = load_set(&a.set)?;
    let reduction = compression::reduce_to_simplex(&set)?;
    let emb = &reduction.embedding;
    let value = json!({
        "embedding": {
            "identity": emb.is_identity(),
            "origin": encode_row(emb.origin.coords()),
            "linear": serde_json::to_value(fmt_io::MatrixFile::encode(&emb.linear)).expect("serializable"),
        },
        "steps": reduction.trace.steps.len(),
        "trace": reduction.trace.to_json(),
        "simplex": set_value(reduction.simplex()),
        "input_digest": fmt_io::digest_point_set(&set),
    });
    Ok(Report::ok(line(&value)))
}

fn cmd_project(a: &ProjectArgs) -> Result<Report> {
    let set = load_set(&a.set)?;
    let basis = match &a.basis {
        Some(path) => fmt_io::parse_basis(&read_text(path)?)?,
        None => Basis::standard(set.dim()),
    };
    let indices = parse_indices(&a.indices)?;
    let image = geometry::project(&set, &basis, &indices)?;
    Ok(Report::ok(line(&json!({ "size": image.len(), "set": set_value(&image) }))))
}

fn load_sets(args: &VerifyArgs, case: &Case, default_count: usize) -> Result<Vec<PointSet>> {
    if !args.sets.is_empty() {
        return args
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| load_case_set(s, case, args, i))
            .collect();
    }
    (0..default_count)
        .map(|i| generators::random_set(case.d, random_size(args, case.d), args.side, input_seed(case.seed, i)))
        .collect()
}

fn load_single(args: &VerifyArgs, case: &Case, default: &str) -> Result<PointSet> {
    load_case_set(args.set.as_deref().unwrap_or(default), case, args, 0)
}

fn load_case_system(args: &VerifyArgs, case: &Case) -> Result<LinearSystem> {
    load_system(&substitute(args.system.as_deref().unwrap_or("rotation:{d}"), case))
}

fn compression_spec(args: &VerifyArgs, dim: usize) -> Result<CompressionSpec> {
    match (&args.axis, &args.spec) {
        (_, Some(spec)) => load_spec(spec, dim),
        (Some(axis), None) => axis_spec(dim, *axis),
        (None, None) => axis_spec(dim, 1),
    }
}

/// Evaluates one sweep case.
fn verify_case(statement: StatementId, args: &VerifyArgs, case: &Case, budget: u128) -> Result<Vec<Certificate>> {
    use StatementId as S;
    let cert = match statement {
        S::Elementary => {
            let sets = load_sets(args, case, case.k)?;
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            bounds::check_elementary(&sets)?
        }
        S::GsKfold => {
            let sets = match &args.grids {
                Some(g) => generators::grid(&parse_grids(g)?)?,
                None => load_sets(args, &Case { d: 2, ..*case }, case.k)?,
            };
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            bounds::check_gs_kfold(&sets, &parse_vector(&args.direction)?)?
        }
        S::FreimanKfold => {
            let a = load_single(args, case, "simplex:{d}:{N}")?;
            guard_sum(&vec![&a; case.k], budget)?;
            bounds::check_freiman_kfold(&a, case.k)?
        }
        S::FreimanLemma => {
            let a = load_single(args, case, "simplex:{d}:{N}")?;
            bounds::check_freiman_lemma(&a)?
        }
        S::SimplexFormula => {
            let a = generators::long_simplex(case.d, case.n)?;
            guard_sum(&vec![&a; case.k], budget)?;
            bounds::check_simplex_formula(case.d, case.n, case.k)?
        }
        S::DiscreteBm => {
            let sets = load_sets(args, case, case.k)?;
            let dim = bounds::common_dim(&sets)?;
            let basis = match &args.basis {
                Some(path) => fmt_io::parse_basis(&read_text(path)?)?,
                None => Basis::standard(dim),
            };
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            bounds::check_discrete_bm(&sets, &basis)?
        }
        S::RuzsaTriangle => {
            let sets = load_sets(args, case, 3)?;
            let [u, v, w] = sets.as_slice() else {
                return Err(Error::InvalidArgument("ruzsa_triangle takes exactly three sets".into()));
            };
            guard_sum(&[u, v], budget)?;
            guard_sum(&[u, w], budget)?;
            guard_sum(&[v, w], budget)?;
            bounds::check_ruzsa_triangle(u, v, w)?
        }
        S::PlunneckeRuzsa => {
            let sets = load_sets(args, case, 2)?;
            let [a, b] = sets.as_slice() else {
                return Err(Error::InvalidArgument("plunnecke_ruzsa takes exactly two sets".into()));
            };
            guard_sum(&vec![a; args.m + args.n], budget)?;
            bounds::check_plunnecke_ruzsa(a, b, args.m, args.n)?
        }
        S::IteratedPr => {
            let sets = load_sets(args, case, case.k.max(2))?;
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            bounds::check_iterated_pr(&sets)?
        }
        S::LinearPr => {
            let system = load_case_system(args, case)?;
            let a = load_single(args, case, "random")?;
            guard_weighted(&system, &a, budget)?;
            bounds::check_linear_pr(&system, &a)?
        }
        S::FiberBound => {
            let system = load_case_system(args, case)?;
            let a = load_single(args, case, "random")?;
            let u = match &args.subspace {
                Some(path) => fmt_io::parse_subspace(&read_text(path)?)?,
                None => Subspace::span(a.dim(), &[Point::unit(a.dim(), 0)])?,
            };
            guard_weighted(&system, &a, budget)?;
            bounds::check_fiber_bound(&system, &a, &u)?
        }
        S::MainTerm => {
            let system = load_case_system(args, case)?;
            let a = load_single(args, case, "random")?;
            guard_weighted(&system, &a, budget)?;
            bounds::main_term_probe(&system, &a)?
        }
        S::DeterminantMainTerm => {
            let system = load_case_system(args, case)?;
            let a = load_single(args, case, "random")?;
            guard_weighted(&system, &a, budget)?;
            bounds::determinant_probe(&system, &a)?
        }
        S::Khovanskii => {
            let a = load_single(args, case, "random")?;
            guard_sum(&vec![&a; args.k_max], budget)?;
            bounds::khovanskii_probe(&a, args.k_max)?.certificate
        }
        S::SumMonotone | S::SumContainment => {
            let sets = load_sets(args, case, case.k)?;
            let dim = bounds::common_dim(&sets)?;
            let spec = compression_spec(args, dim)?;
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            if statement == S::SumMonotone {
                compression::check_sum_monotone(&sets, &spec)?
            } else {
                compression::check_sum_containment(&sets, &spec)?
            }
        }
        S::ProjectionMonotone => {
            let sets = load_sets(args, case, case.k)?;
            let dim = bounds::common_dim(&sets)?;
            let axis = args.axis.unwrap_or(1);
            if axis == 0 || axis > dim {
                return Err(Error::InvalidArgument(format!("axis {axis} out of range 1..={dim}")));
            }
            guard_sum(&sets.iter().collect::<Vec<_>>(), budget)?;
            compression::check_projection_monotone(&sets, axis - 1, &Basis::standard(dim), &parse_indices(&args.indices)?)?
        }
        S::ShearCounterexample => {
            let (system, a) = match (&args.system, &args.set) {
                (None, None) => generators::shear_counterexample(case.n)?,
                _ => (load_case_system(args, case)?, load_single(args, case, "shear:{N}")?),
            };
            guard_weighted(&system, &a, budget)?;
            bounds::check_shear_counterexample(&system, &a)?
        }
    };
    Ok(vec![cert])
}

const CSV_HEADER: [&str; 9] = ["statement_id", "d", "N", "k", "seed", "lhs", "rhs", "slack", "verdict"];

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::Indeterminate => "indeterminate",
    }
}

/// Runs every case of the sweep (concurrently) and renders the certificates
/// in case order.
pub fn cmd_verify(config: &RunConfig, args: &VerifyArgs) -> Result<Report> {
    let statement = config.statement.ok_or_else(|| Error::InvalidArgument("no statement".into()))?;
    let cases = config.sweep.cases();
    let results: Vec<Result<Vec<Certificate>>> = cases
        .par_iter()
        .map(|case| verify_case(statement, args, case, config.max_points))
        .collect();
    let mut rows = Vec::new();
    for (case, result) in cases.iter().zip(results) {
        for cert in result? {
            rows.push((*case, cert));
        }
    }
    let code = exit_code(rows.iter().map(|(_, c)| &c.verdict));
    let text = match config.format {
        Format::Json => {
            let mut s = String::new();
            for (case, cert) in &rows {
                let mut value = cert.to_json();
                value["params"] = json!({ "d": case.d, "N": case.n, "k": case.k, "seed": case.seed });
                s.push_str(&line(&value));
            }
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for (case, cert) in &rows {
                w.write_record([
                    cert.statement.as_str().to_string(),
                    case.d.to_string(),
                    case.n.to_string(),
                    case.k.to_string(),
                    case.seed.to_string(),
                    cert.lhs.render(),
                    cert.rhs.render(),
                    cert.slack().render(),
                    verdict_str(cert.verdict).to_string(),
                ])
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).expect("csv output is UTF-8")
        }
    };
    Ok(Report { text, code })
}

fn cmd_suite(a: &SuiteArgs, format: Format) -> Result<Report> {
    let report = match a.criterion {
        Some(id) => suite::SuiteReport {
            kind: a.kind,
            seed: a.seed,
            outcomes: vec![suite::run_criterion(id, a.kind, a.seed)?],
        },
        None => suite::run_suite(a.kind, a.seed)?,
    };
    let code = if report.passed() { EXIT_HOLDS } else { EXIT_VIOLATED };
    let text = match format {
        Format::Json => line(&report.to_json()),
        Format::Csv => {
            let mut s = String::from("id,name,passed,cases,holds,violated,indeterminate\n");
            for o in &report.outcomes {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    o.id, o.name, o.passed, o.cases, o.holds, o.violated, o.indeterminate
                );
            }
            s
        }
    };
    Ok(Report { text, code })
}

fn cmd_probe(p: &ProbeCommand, budget: u128, format: Format) -> Result<Report> {
    let (value, verdict) = match p {
        ProbeCommand::MainTerm { system, set } | ProbeCommand::Determinant { system, set } => {
            let (system, a) = (load_system(system)?, load_set(set)?);
            guard_weighted(&system, &a, budget)?;
            let cert = if matches!(p, ProbeCommand::MainTerm { .. }) {
                bounds::main_term_probe(&system, &a)?
            } else {
                bounds::determinant_probe(&system, &a)?
            };
            (cert.to_json(), cert.verdict)
        }
        ProbeCommand::Khovanskii { set, k_max } => {
            let a = load_set(set)?;
            guard_sum(&vec![&a; *k_max], budget)?;
            let report = bounds::khovanskii_probe(&a, *k_max)?;
            (report.to_json(), report.certificate.verdict)
        }
    };
    if format == Format::Csv {
        return Err(Error::InvalidArgument("probes emit JSON only".into()));
    }
    Ok(Report { text: line(&value), code: exit_code([&verdict]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::DEFAULT_PRECISION_CAP;

    #[test]
    fn ranges() {
        assert_eq!(parse_range::<usize>("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_range::<usize>("1,5").unwrap(), vec![1, 5]);
        assert_eq!(parse_range::<u64>("7").unwrap(), vec![7]);
        assert!(parse_range::<usize>("4..2").is_err());
        assert!(parse_range::<usize>("").is_err());
        assert!(parse_range::<usize>("a").is_err());
    }

    #[test]
    fn grids_and_vectors() {
        assert_eq!(parse_grids("2x2, 3x1").unwrap(), vec![(2, 2), (3, 1)]);
        assert!(parse_grids("22").is_err());
        assert_eq!(parse_vector("1,-1/2").unwrap().coords().len(), 2);
        assert_eq!(parse_indices("1,3").unwrap(), vec![0, 2]);
        assert!(parse_indices("0").is_err());
    }

    #[test]
    fn generator_sources() {
        assert_eq!(load_set("simplex:2:4").unwrap().len(), 4);
        assert_eq!(load_set("cube:2:1").unwrap().len(), 9);
        assert_eq!(load_set("grid:2:3").unwrap().len(), 6);
        assert_eq!(load_system("rotation:3").unwrap().len(), 3);
        assert_eq!(load_system("identity:2:3").unwrap().len(), 3);
        assert!(load_set("/nonexistent/file.json").is_err());
    }

    #[test]
    fn config_validation() {
        let mut config = RunConfig {
            command: "verify".into(),
            inputs: vec![],
            statement: Some(StatementId::SimplexFormula),
            sweep: Sweep::single(),
            precision_cap: DEFAULT_PRECISION_CAP,
            format: Format::Json,
            seed: DEFAULT_SEED,
            max_points: DEFAULT_MAX_POINTS,
        };
        assert!(config.validate().is_ok());
        config.precision_cap = 64;
        assert!(config.validate().is_err());
        config.precision_cap = 128;
        config.sweep.k.clear();
        assert!(config.validate().is_err());
    }

    #[test]
    fn sweep_order_is_lexicographic() {
        let s = Sweep { d: vec![1, 2], n: vec![3], k: vec![1, 2], seeds: vec![0] };
        let ks: Vec<(usize, usize)> = s.cases().iter().map(|c| (c.d, c.k)).collect();
        assert_eq!(ks, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn exit_codes_follow_worst_verdict() {
        use Verdict::*;
        assert_eq!(exit_code(&[Holds, Holds]), 0);
        assert_eq!(exit_code(&[Holds, Indeterminate]), 3);
        assert_eq!(exit_code(&[Indeterminate, Violated]), 1);
    }
}
