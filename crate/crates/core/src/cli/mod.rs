//! The `slowcolor` command line.
//!
//! Everything goes through [`run`], which takes the arguments and the three
//! streams explicitly so the commands can be driven from tests; the binary
//! only adds the Ctrl-C handler.
//!
//! Exit codes: 0 success, 1 failed assertion, 2 usage error, 3 size or
//! memory cap, 130 interrupted (Ctrl-C, or end of input during `play`).

mod config;
mod play;

pub use config::{Config, Format, TableConfig, VerifyConfig};
pub use play::{play, Role};

use crate::family_dp::{bipartite_dp, join_dp, FamilyError};
use crate::game::GameRecord;
use crate::graph::{non_isomorphic_graphs, parse_graph, Graph, VertexSet};
use crate::harness::{self, ClosedFormLimits, StrategyLimits, SuiteReport};
use crate::invariants::{bound_report, BoundReport, InvariantError};
use crate::paintability::PaintError;
use crate::solver::{
    score_lower_certificate_with, solve_with, CacheError, SolveError, SolverCache, SolverConfig,
};
use crate::strategies::StrategyError;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERRUPTED: i32 = 130;

/// Version of the JSON-lines output of `solve` and `bound`.
pub const JSONL_SCHEMA: u32 = 1;

/// Seed for the random part of the `bounds` corpus.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Failure(String),
    #[error("interrupted")]
    Interrupted,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Failure(_) | CliError::Io(_) => EXIT_FAILURE,
            CliError::Interrupted => EXIT_INTERRUPTED,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::TooLarge { .. } => CliError::Cap(e.to_string()),
            SolveError::Cancelled => CliError::Interrupted,
            SolveError::InvalidMark(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Solve(s) => s.into(),
            StrategyError::TooLarge { .. } => CliError::Cap(e.to_string()),
            StrategyError::WrongClass { .. } => CliError::Usage(e.to_string()),
            StrategyError::Move(_) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Solve(s) => s.into(),
            FamilyError::Budget { .. } => CliError::Cap(e.to_string()),
            FamilyError::InvalidParameters(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::TooLarge { .. } => CliError::Cap(e.to_string()),
            InvariantError::EmptyGraph => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PaintError> for CliError {
    fn from(e: PaintError) -> Self {
        match e {
            PaintError::Solve(s) => s.into(),
            PaintError::TooLarge { .. } => CliError::Cap(e.to_string()),
            PaintError::LengthMismatch { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Usage(format!("cache: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "slowcolor", version, about = "Exact solver and verification harness for the slow-coloring game")]
pub struct Cli {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Persistent solver cache, loaded before and saved after the command.
    #[arg(long, global = true, env = "SLOWCOLOR_CACHE", value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Never changes any printed value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest graph the exact solver accepts.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for random corpora.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact value of a graph, with its optimal first marks.
    Solve {
        /// Edge list (`n=4; 0-1,1-2`) or family (`P7`, `K3,3`, `J(5,2)`, ...).
        graph: String,
        /// Print a full game reaching the value.
        #[arg(long)]
        transcript: bool,
        /// Print the classical bounds next to the value.
        #[arg(long)]
        bounds: bool,
        /// Print search statistics (node and cache-hit counts). Unlike
        /// everything else these depend on thread scheduling.
        #[arg(long)]
        stats: bool,
    },
    /// Classical lower and upper bounds of a graph.
    Bound { graph: String },
    /// Play one side of the game against a strategy.
    Play {
        graph: String,
        /// The side you play.
        #[arg(long, value_enum, default_value_t = Role::Painter)]
        role: Role,
        /// Opposing strategy: `optimal` or a named strategy (see `play --help`).
        ///
        /// Lister strategies: optimal, mark-all, join, tree, bipartite,
        /// multipartite. Painter strategies: optimal, greedy, tree, alpha2,
        /// bipartite.
        #[arg(long, default_value = "optimal")]
        opponent: String,
    },
    /// Run a verification suite or experiment.
    ///
    /// Suites: closed-forms, tree-extremality, bounds, equality, strategies,
    /// krr-fit, all. Experiments (never fail): pnk, join-gap, two-trees.
    Verify {
        /// Suite or experiment name; see the list above.
        suite: String,
        /// Largest graph or tree order in the corpus.
        #[arg(long)]
        n: Option<usize>,
        /// Largest part size or side length.
        #[arg(long)]
        r: Option<usize>,
        /// Largest number of parts.
        #[arg(long)]
        t: Option<usize>,
        /// Largest power of the path (`pnk`).
        #[arg(long)]
        k: Option<usize>,
        /// Random graphs added to the `bounds` corpus.
        #[arg(long)]
        samples: Option<usize>,
        /// Largest order of those random graphs.
        #[arg(long)]
        sample_n: Option<usize>,
        /// Also write the data table (experiments) or case list as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Dynamic-programming tables as CSV (`r,s,value`).
    Table {
        #[arg(value_enum)]
        family: TableFamily,
        /// Largest first parameter (default 10).
        #[arg(long)]
        r: Option<usize>,
        /// Largest second parameter (default 10).
        #[arg(long)]
        s: Option<usize>,
    },
    /// Inspect or fill the persistent cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        /// For `warm`: solve every graph up to this order.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    /// `K_{r,s}`.
    Bipartite,
    /// `E_r ∨ K_s`.
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Info,
    Clear,
    Warm,
}

/// Settings after merging flags over the config file over defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub solver: SolverConfig,
    pub threads: usize,
    pub cache_path: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub verify: VerifyConfig,
    pub table: TableConfig,
}

impl Settings {
    pub fn resolve(cli: &Cli, cancel: Option<Arc<AtomicBool>>) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        let limit = cli.limit.or(file.limit).unwrap_or(crate::solver::DEFAULT_LIMIT);
        if limit == 0 {
            return Err(CliError::Usage("limit must be positive".into()));
        }
        let threads = cli.threads.or(file.threads).unwrap_or(0);
        Ok(Settings {
            solver: SolverConfig { limit, threads: 1, prune_with_bounds: false, cancel },
            threads,
            cache_path: cli.cache.clone().or(file.cache),
            format: cli.format.or(file.format).unwrap_or(Format::Text),
            seed: cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            verify: file.verify,
            table: file.table,
        })
    }
}

fn parse(text: &str) -> Result<Graph, CliError> {
    parse_graph(text).map_err(|e| CliError::Usage(format!("cannot parse graph {text:?}: {e}")))
}

fn set_list(s: VertexSet) -> Vec<usize> {
    s.iter().collect()
}

/// Runs one command; returns the exit code. Errors are reported on `err`.
pub fn run<I, T>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    cancel: Option<Arc<AtomicBool>>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, input, out, cancel) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(
    cli: &Cli,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    cancel: Option<Arc<AtomicBool>>,
) -> Result<i32, CliError> {
    let settings = Settings::resolve(cli, cancel)?;
    let cache = match &settings.cache_path {
        Some(path) => SolverCache::load_or_new(path)?,
        None => SolverCache::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", settings.threads)))?;
    let result = dispatch(cli, &settings, &cache, &pool, input, out);
    // Whatever was solved is kept, including after an interruption.
    if let Some(path) = &settings.cache_path {
        if !matches!(cli.command, Command::Cache { action: CacheAction::Info, .. }) {
            cache.save(path)?;
        }
    }
    result
}

fn dispatch(
    cli: &Cli,
    settings: &Settings,
    cache: &SolverCache,
    pool: &rayon::ThreadPool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match &cli.command {
        Command::Solve { graph, transcript, bounds, stats } => {
            cmd_solve(graph, SolveOutput { transcript: *transcript, bounds: *bounds, stats: *stats }, settings, cache, out)
        }
        Command::Bound { graph } => cmd_bound(graph, settings, out),
        Command::Play { graph, role, opponent } => {
            let g = parse(graph)?;
            play(&g, *role, opponent, cache, &settings.solver, input, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, n, r, t, k, samples, sample_n, csv } => {
            let v = &settings.verify;
            let opts = VerifyConfig {
                n: n.or(v.n),
                r: r.or(v.r),
                t: t.or(v.t),
                k: k.or(v.k),
                samples: samples.or(v.samples),
                sample_n: sample_n.or(v.sample_n),
            };
            cmd_verify(suite, &opts, csv.as_ref(), settings, cache, pool, out)
        }
        Command::Table { family, r, s } => {
            let r = r.or(settings.table.r).unwrap_or(10);
            let s = s.or(settings.table.s).unwrap_or(10);
            let table = match family {
                TableFamily::Bipartite => bipartite_dp(r, s)?,
                TableFamily::Join => join_dp(r, s)?,
            };
            write!(out, "{}", table.to_csv())?;
            Ok(EXIT_OK)
        }
        Command::Cache { action, n } => cmd_cache(*action, *n, settings, cache, pool, out),
    }
}

#[derive(Debug, Clone, Copy)]
struct SolveOutput {
    transcript: bool,
    bounds: bool,
    stats: bool,
}

fn cmd_solve(
    text: &str,
    show: SolveOutput,
    settings: &Settings,
    cache: &SolverCache,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = parse(text)?;
    let mut config = settings.solver.clone();
    config.threads = settings.threads;
    let result = solve_with(&g, cache, &config)?;
    let record = if show.transcript { Some(score_lower_certificate_with(&g, cache, &config)?) } else { None };
    let report = if show.bounds && g.n() > 0 { Some(bound_report(&g)?) } else { None };
    match settings.format {
        Format::Text => {
            writeln!(out, "graph   {}", g.to_edge_list())?;
            writeln!(out, "value   {}", result.value)?;
            let marks: Vec<String> = result.optimal_marks.iter().map(|m| m.to_string()).collect();
            writeln!(out, "optimal first marks: {}", marks.join(" "))?;
            if show.stats {
                writeln!(out, "nodes {}, cache hits {}", result.node_count, result.cache_hits)?;
            }
            if let Some(record) = &record {
                writeln!(out, "{record}")?;
            }
            if let Some(report) = &report {
                writeln!(out, "{report}")?;
                writeln!(out, "within bounds: {}", report.admits(result.value))?;
            }
        }
        Format::Csv => {
            let marks: Vec<String> = result.optimal_marks.iter().map(|m| format!("{:x}", m.bits())).collect();
            let row = format!(
                "\"{}\",{},{},{},{}",
                g.to_edge_list(),
                g.n(),
                g.edge_count(),
                result.value,
                marks.join(" ")
            );
            if show.stats {
                writeln!(out, "graph,n,edges,value,optimal_marks,nodes,cache_hits")?;
                writeln!(out, "{row},{},{}", result.node_count, result.cache_hits)?;
            } else {
                writeln!(out, "graph,n,edges,value,optimal_marks\n{row}")?;
            }
            if let Some(record) = &record {
                write!(out, "round,marked,colored\n{}", record.to_lines().replace(' ', ","))?;
            }
            if let Some(report) = &report {
                writeln!(out, "{}\n{}", BoundReport::CSV_HEADER, report.to_csv_row())?;
            }
        }
        Format::Jsonl => {
            let mut line = json!({
                "schema": JSONL_SCHEMA,
                "command": "solve",
                "graph": g.to_edge_list(),
                "n": g.n(),
                "edges": g.edge_count(),
                "value": result.value,
                "optimal_marks": result.optimal_marks.iter().map(|&m| set_list(m)).collect::<Vec<_>>(),
            });
            if show.stats {
                line["nodes"] = json!(result.node_count);
                line["cache_hits"] = json!(result.cache_hits);
            }
            if let Some(record) = &record {
                line["transcript"] = transcript_json(record);
            }
            if let Some(report) = &report {
                line["bounds"] = bounds_json(report);
            }
            writeln!(out, "{line}")?;
        }
    }
    Ok(EXIT_OK)
}

fn transcript_json(record: &GameRecord) -> serde_json::Value {
    record
        .rounds
        .iter()
        .map(|r| json!({ "marked": set_list(r.marked), "colored": set_list(r.colored) }))
        .collect()
}

fn bounds_json(r: &BoundReport) -> serde_json::Value {
    json!({
        "n": r.n,
        "edges": r.edges,
        "alpha": r.alpha,
        "q": r.q,
        "chromatic_sum": r.chromatic_sum,
        "hall_ratio": r.hall_ratio.to_string(),
        "lower_2n_minus_alpha": r.lower_2n_minus_alpha,
        "lower_quadratic": r.lower_quadratic.to_string(),
        "upper_n_rho": r.upper_n_rho.to_string(),
        "upper_v_plus_e": r.upper_v_plus_e,
        "best_lower": r.best_lower(),
        "best_upper": r.best_upper(),
    })
}

fn cmd_bound(text: &str, settings: &Settings, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = parse(text)?;
    let report = bound_report(&g)?;
    match settings.format {
        Format::Text => {
            writeln!(out, "{report}")?;
            writeln!(out, "lower {}  upper {}", report.best_lower(), report.best_upper())?;
        }
        Format::Csv => writeln!(out, "{}\n{}", BoundReport::CSV_HEADER, report.to_csv_row())?,
        Format::Jsonl => {
            let mut line = bounds_json(&report);
            line["schema"] = json!(JSONL_SCHEMA);
            line["command"] = json!("bound");
            line["graph"] = json!(g.to_edge_list());
            writeln!(out, "{line}")?;
        }
    }
    Ok(EXIT_OK)
}

/// Names accepted by `verify`.
pub const SUITES: [&str; 10] = [
    "closed-forms",
    "tree-extremality",
    "bounds",
    "equality",
    "strategies",
    "krr-fit",
    "pnk",
    "join-gap",
    "two-trees",
    "all",
];

fn run_suite(
    name: &str,
    o: &VerifyConfig,
    seed: u64,
    cache: &SolverCache,
    config: &SolverConfig,
) -> Result<(SuiteReport, Option<String>), CliError> {
    Ok(match name {
        "closed-forms" => {
            let mut limits = ClosedFormLimits::default();
            if let Some(n) = o.n {
                limits = ClosedFormLimits { simple_n: n, join_order: n, alpha_two_n: n, bipartite_order: n };
            }
            (harness::suite_closed_forms(limits, cache, config), None)
        }
        "tree-extremality" => (harness::suite_tree_extremality(o.n.unwrap_or(9), cache, config), None),
        "bounds" => {
            let corpus = harness::default_bounds_corpus(
                o.n.unwrap_or(6).min(7),
                o.samples.unwrap_or(100),
                o.sample_n.unwrap_or(9),
                seed,
            );
            (harness::suite_bounds(&corpus, cache, config), None)
        }
        "equality" => {
            let report = harness::suite_equality_characterizations(
                o.n.unwrap_or(6).min(7),
                o.t.unwrap_or(4) as u64,
                o.r.unwrap_or(6) as u64,
                cache,
                config,
            );
            (report, None)
        }
        "strategies" => {
            let mut limits = StrategyLimits::default();
            if let Some(n) = o.n {
                limits.tree_n = n;
            }
            if let Some(r) = o.r {
                limits.bipartite_side = r;
            }
            (harness::suite_strategy_guarantees(limits, cache, config), None)
        }
        "krr-fit" => {
            let (report, csv) = harness::experiment_krr_fit(o.r.unwrap_or(100));
            (report, Some(csv))
        }
        "pnk" => {
            let (report, csv) = harness::experiment_pnk_conjecture(o.n.unwrap_or(10), o.k.unwrap_or(3), cache, config);
            (report, Some(csv))
        }
        "join-gap" => {
            let (report, csv) = harness::experiment_join_sqrt_gap(o.r.unwrap_or(60), o.t.unwrap_or(10));
            (report, Some(csv))
        }
        "two-trees" => (harness::experiment_two_trees(o.n.unwrap_or(7), cache, config), None),
        _ => return Err(CliError::Usage(format!("unknown suite {name:?}"))),
    })
}

fn cmd_verify(
    suite: &str,
    o: &VerifyConfig,
    csv_path: Option<&PathBuf>,
    settings: &Settings,
    cache: &SolverCache,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let names: Vec<&str> = if suite == "all" {
        SUITES[..6].to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Usage(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    };
    let defaults = VerifyConfig::default();
    let mut ok = true;
    let mut csv_out = String::new();
    for name in names {
        let opts = if suite == "all" { &defaults } else { o };
        let (report, data) = pool.install(|| run_suite(name, opts, settings.seed, cache, &settings.solver))?;
        if report.cases.iter().any(|c| c.actual == format!("error: {}", SolveError::Cancelled)) {
            return Err(CliError::Interrupted);
        }
        ok &= report.is_ok();
        match settings.format {
            Format::Text => writeln!(out, "{report}")?,
            Format::Csv => write!(out, "{}", report.to_csv())?,
            Format::Jsonl => write!(out, "{}", report.to_jsonl())?,
        }
        csv_out.push_str(&data.unwrap_or_else(|| report.to_csv()));
    }
    if let Some(path) = csv_path {
        std::fs::write(path, csv_out)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_cache(
    action: CacheAction,
    n: usize,
    settings: &Settings,
    cache: &SolverCache,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let Some(path) = &settings.cache_path else {
        return Err(CliError::Usage("no cache path: pass --cache or set SLOWCOLOR_CACHE".into()));
    };
    match action {
        CacheAction::Info => {
            writeln!(out, "path     {}", path.display())?;
            writeln!(out, "entries  {}", cache.len())?;
            writeln!(out, "created  {}", cache.created_unix())?;
        }
        CacheAction::Clear => {
            cache.clear();
            writeln!(out, "cleared {}", path.display())?;
        }
        CacheAction::Warm => {
            if n > 7 {
                return Err(CliError::Cap(format!("warm enumerates all graphs, so n must be at most 7 (got {n})")));
            }
            let before = cache.len();
            pool.install(|| {
                let graphs: Vec<Graph> = (1..=n).flat_map(non_isomorphic_graphs).collect();
                graphs.par_iter().try_for_each(|g| solve_with(g, cache, &settings.solver).map(|_| ()))
            })?;
            writeln!(out, "entries {} -> {}", before, cache.len())?;
        }
    }
    Ok(EXIT_OK)
}

/// Entry point of the binary: real streams plus a Ctrl-C handler that
/// cancels the search cooperatively.
pub fn main() -> i32 {
    let cancel = Arc::new(AtomicBool::new(false));
    let flag = Arc::clone(&cancel);
    // Without a handler Ctrl-C still ends the process, just without the
    // cache flush.
    let _ = ctrlc::set_handler(move || flag.store(true, std::sync::atomic::Ordering::Relaxed));
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run(std::env::args_os(), &mut input, &mut out, &mut err, Some(cancel))
}
