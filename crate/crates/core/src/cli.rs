//! Implementations behind the `seqseed` subcommands.
//!
//! Each command validates its inputs before doing any work, writes data to
//! files (or stdout) and returns a small report for the caller to print.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiment::{run_grid, summarize, GridOutput};
use crate::graph::{generate_ba, generate_er, write_edge_list, Graph};
use crate::io;
use crate::ranking::{rank, RankingMethod};
use crate::rng::{derive_seed, name_key, rng_from_seed};
use crate::strategies::{run_strategy, seed_count, StrategySpec};
use crate::experiment::estimate_tsn;

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Config { path: dir.into(), message: e.to_string() })?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Config { path: path.into(), message: e.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    Ba { n: usize, m: usize },
    Er { n: usize, p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphCounts {
    pub nodes: usize,
    pub edges: usize,
}

/// Generates a graph and writes it as an edge list to `out` (stdout if `None`).
pub fn cmd_gen(kind: GeneratorKind, seed: u64, out: Option<&Path>) -> Result<GraphCounts> {
    let mut rng = rng_from_seed(seed);
    let graph = match kind {
        GeneratorKind::Ba { n, m } => generate_ba(n, m, &mut rng)?,
        GeneratorKind::Er { n, p } => generate_er(n, p, &mut rng)?,
    };
    match out {
        Some(path) => {
            let mut w = create(path)?;
            write_edge_list(&graph, &mut w)?;
            w.flush()?;
        }
        None => write_edge_list(&graph, std::io::stdout().lock())?,
    }
    Ok(GraphCounts { nodes: graph.node_count(), edges: graph.edge_count() })
}

/// Ranks the nodes of an edge-list file; CSV to `out` (stdout if `None`).
pub fn cmd_rank(graph_path: &Path, method: RankingMethod, seed: u64, out: Option<&Path>) -> Result<()> {
    let (graph, _) = io::read_graph(graph_path)?;
    let ranking = rank(&graph, method, &mut rng_from_seed(derive_seed(&[seed, name_key("ranking")])));
    match out {
        Some(path) => {
            let mut w = create(path)?;
            io::write_ranking(&graph, &ranking, &mut w)?;
            w.flush()?;
        }
        None => io::write_ranking(&graph, &ranking, std::io::stdout().lock())?,
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SimulateArgs {
    pub graph: PathBuf,
    pub strategy: StrategySpec,
    pub ranking: RankingMethod,
    pub sp: f64,
    pub pp: f64,
    pub runs: usize,
    pub seed: u64,
    /// Directory for `trace_NNNN.csv` files and `mean_curve.csv`.
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateReport {
    pub nodes: usize,
    pub seeds: usize,
    /// Reference duration derived from an SN block when the strategy needed one.
    pub derived_t_sn: Option<usize>,
    pub mean_coverage: f64,
    pub mean_duration: f64,
    /// Mean cumulative coverage per step over all runs.
    pub mean_curve: Vec<f64>,
}

/// Runs one configuration `runs` times.
///
/// A TSN strategy without `t_sn` first runs an SN block of the same size to
/// derive it.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<SimulateReport> {
    if args.runs == 0 {
        return Err(Error::param("--runs must be at least 1"));
    }
    if !(0.0..=1.0).contains(&args.pp) {
        return Err(Error::param(format!("--pp must lie in [0, 1], got {}", args.pp)));
    }
    args.strategy.validate()?;
    let (graph, _) = io::read_graph(&args.graph)?;
    let n = seed_count(&graph, args.sp)?;
    let ranking = rank(&graph, args.ranking, &mut rng_from_seed(derive_seed(&[args.seed, name_key("ranking")])));

    let mut strategy = args.strategy;
    let mut derived_t_sn = None;
    if strategy.needs_t_sn() {
        let mut rng = rng_from_seed(derive_seed(&[args.seed, name_key("t_sn")]));
        let t_sn = estimate_tsn(&graph, &ranking, n, args.pp, args.runs, &mut rng)?;
        strategy = strategy.with_t_sn(t_sn);
        derived_t_sn = Some(t_sn);
    }

    let label = strategy.label();
    let mut traces = Vec::with_capacity(args.runs);
    for run in 0..args.runs {
        let mut rng = rng_from_seed(derive_seed(&[args.seed, name_key(&label), run as u64]));
        traces.push(run_strategy(strategy, &graph, &ranking, n, args.pp, &mut rng)?);
    }

    let len = traces.iter().map(|t| t.duration() + 1).max().unwrap_or(1);
    let mut mean_curve = vec![0.0; len];
    for t in &traces {
        for (acc, c) in mean_curve.iter_mut().zip(t.curve(len)) {
            *acc += c as f64;
        }
    }
    mean_curve.iter_mut().for_each(|c| *c /= args.runs as f64);

    if let Some(dir) = &args.out_dir {
        for (run, t) in traces.iter().enumerate() {
            let mut w = create(&dir.join(format!("trace_{run:04}.csv")))?;
            io::write_trace(t, &mut w)?;
            w.flush()?;
        }
        let mut w = create(&dir.join("mean_curve.csv"))?;
        io::write_mean_curve(&mean_curve, &mut w)?;
        w.flush()?;
    }

    let runs = args.runs as f64;
    Ok(SimulateReport {
        nodes: graph.node_count(),
        seeds: n,
        derived_t_sn,
        mean_coverage: traces.iter().map(|t| t.coverage()).sum::<usize>() as f64 / runs,
        mean_duration: traces.iter().map(|t| t.duration()).sum::<usize>() as f64 / runs,
        mean_curve,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub configs: usize,
    pub records: usize,
    pub failures: Vec<(usize, String)>,
}

/// Runs a grid config and writes `records.csv` into `out_dir`.
///
/// `jobs` bounds the worker threads; `master_seed` overrides the config's.
pub fn cmd_grid(
    config_path: &Path,
    out_dir: &Path,
    jobs: Option<usize>,
    master_seed: Option<u64>,
) -> Result<GridReport> {
    let mut spec = io::read_grid_config(config_path)?;
    if let Some(seed) = master_seed {
        spec.master_seed = seed;
    }
    let output: GridOutput = match jobs {
        Some(0) => return Err(Error::param("--jobs must be at least 1")),
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::param(e.to_string()))?
            .install(|| run_grid(&spec))?,
        None => run_grid(&spec)?,
    };
    let mut w = create(&out_dir.join(io::RECORDS_FILE))?;
    io::write_records(&output.records, &mut w)?;
    w.flush()?;
    Ok(GridReport { configs: spec.config_count(), records: output.records.len(), failures: output.failures })
}

/// Reads a records CSV and writes the summary files into `out_dir`.
pub fn cmd_summarize(records_path: &Path, out_dir: &Path) -> Result<usize> {
    let file = File::open(records_path)
        .map_err(|e| Error::Config { path: records_path.into(), message: e.to_string() })?;
    let records = io::read_records(std::io::BufReader::new(file))?;
    let summary = summarize(&records)?;
    let mut w = create(&out_dir.join(io::CONFIG_SUMMARY_FILE))?;
    io::write_config_summary(&summary, &mut w)?;
    w.flush()?;
    let mut w = create(&out_dir.join(io::RATIOS_FILE))?;
    io::write_ratios(&summary, &mut w)?;
    w.flush()?;
    let mut w = create(&out_dir.join(io::TABLE_FILE))?;
    io::write_comparison_table(&summary, &mut w)?;
    w.flush()?;
    Ok(summary.configs.len())
}

/// Reads an edge list; exposed for the binary's diagnostics.
pub fn load_graph(path: &Path) -> Result<Graph> {
    Ok(io::read_graph(path)?.0)
}
