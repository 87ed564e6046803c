//! File formats: grid config JSON, record/summary/trace/ranking CSVs.
//!
//! Computed floats in summary files use [`fmt_sig6`] (six significant
//! digits, fixed width) so output is byte-stable. Grid parameters (`pp`,
//! `sp`) are written in shortest round-trip form.

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::diffusion::DiffusionTrace;
use crate::error::{Error, Result};
use crate::experiment::{ComparisonSummary, GridSpec, NamedGraph, RunRecord, StrategyComparison};
use crate::graph::{generate_ba, generate_er, load_edge_list, Graph, LoadReport};
use crate::ranking::{Ranking, RankingMethod};
use crate::rng::{rng_from_seed, DEFAULT_MASTER_SEED};
use crate::strategies::StrategySpec;

pub const RECORDS_FILE: &str = "records.csv";
pub const CONFIG_SUMMARY_FILE: &str = "config_summary.csv";
pub const RATIOS_FILE: &str = "ratios.csv";
pub const TABLE_FILE: &str = "strategy_comparison.csv";

/// Six significant digits with trailing zeros kept.
///
/// Plain decimal notation for magnitudes in `[1e-5, 1e6)`, scientific
/// otherwise. Rounding is that of Rust's formatter on the exact binary value.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..6).contains(&exp) {
        format!("{:.*}", (5 - exp) as usize, x)
    } else {
        sci
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig6).unwrap_or_default()
}

pub fn read_graph(path: &Path) -> Result<(Graph, LoadReport)> {
    let file = File::open(path).map_err(|e| Error::Config { path: path.into(), message: e.to_string() })?;
    load_edge_list(BufReader::new(file)).map_err(|e| match e {
        Error::Io(_) | Error::Parse { .. } | Error::EmptyInput => {
            Error::Config { path: path.into(), message: e.to_string() }
        }
        other => other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Ba { n: usize, m: usize, seed: u64 },
    Er { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GeneratorSpec::Ba { n, m, seed } => generate_ba(n, m, &mut rng_from_seed(seed)),
            GeneratorSpec::Er { n, p, seed } => generate_er(n, p, &mut rng_from_seed(seed)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphEntry {
    name: String,
    #[serde(default)]
    path: Option<PathBuf>,
    #[serde(default)]
    generator: Option<GeneratorSpec>,
}

/// On-disk grid configuration.
///
/// ```json
/// {
///   "graphs": [
///     {"name": "ba1000", "generator": {"kind": "ba", "n": 1000, "m": 3, "seed": 1}},
///     {"name": "mine", "path": "edges.txt"}
///   ],
///   "pp_values": [0.05, 0.1],
///   "sp_values": [0.01, 0.05],
///   "rankings": ["R", "D", "D2", "PR", "EV"],
///   "strategies": ["SN", "SQ_1PS_R", {"kind": "SQ_kPS", "k": 4}, "SQ_TSN"],
///   "replications": 100,
///   "master_seed": 7
/// }
/// ```
///
/// Relative graph paths resolve against the config file's directory.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridConfigFile {
    graphs: Vec<GraphEntry>,
    pp_values: Vec<f64>,
    sp_values: Vec<f64>,
    rankings: Vec<RankingMethod>,
    strategies: Vec<StrategySpec>,
    replications: usize,
    #[serde(default)]
    master_seed: Option<u64>,
}

/// Parses and validates a grid config, loading or generating every graph.
pub fn parse_grid_config(text: &str, path: &Path) -> Result<GridSpec> {
    let cfg_err = |message: String| Error::Config { path: path.into(), message };
    let file: GridConfigFile = serde_json::from_str(text).map_err(|e| cfg_err(e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut graphs = Vec::with_capacity(file.graphs.len());
    for (i, entry) in file.graphs.into_iter().enumerate() {
        let graph = match (&entry.path, &entry.generator) {
            (Some(p), None) => read_graph(&base.join(p))?.0,
            (None, Some(g)) => g.generate().map_err(|e| cfg_err(format!("graphs[{i}].generator: {e}")))?,
            _ => {
                return Err(cfg_err(format!(
                    "graphs[{i}]: exactly one of `path` and `generator` is required"
                )))
            }
        };
        graphs.push(NamedGraph { name: entry.name, graph });
    }
    let spec = GridSpec {
        graphs,
        pp_values: file.pp_values,
        sp_values: file.sp_values,
        rankings: file.rankings,
        strategies: file.strategies,
        replications: file.replications,
        master_seed: file.master_seed.unwrap_or(DEFAULT_MASTER_SEED),
    };
    spec.validate().map_err(|e| cfg_err(e.to_string()))?;
    Ok(spec)
}

pub fn read_grid_config(path: &Path) -> Result<GridSpec> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::Config { path: path.into(), message: e.to_string() })?;
    parse_grid_config(&text, path)
}

/// `config_id,graph,pp,sp,ranking,strategy,run_id,coverage,duration,t_reach_csn,coverage_at_tsn`
pub fn write_records<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record([
            "config_id", "graph", "pp", "sp", "ranking", "strategy", "run_id", "coverage", "duration",
            "t_reach_csn", "coverage_at_tsn",
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// `step,seeds_injected,activated,cumulative_coverage`
pub fn write_trace<W: Write>(trace: &DiffusionTrace, mut out: W) -> Result<()> {
    writeln!(out, "step,seeds_injected,activated,cumulative_coverage")?;
    for e in &trace.entries {
        writeln!(out, "{},{},{},{}", e.step, e.seeds_injected, e.activated, e.cumulative_coverage)?;
    }
    Ok(())
}

/// `node_label,method,score,rank_position` (positions start at 1).
pub fn write_ranking<W: Write>(graph: &Graph, ranking: &Ranking, mut out: W) -> Result<()> {
    writeln!(out, "node_label,method,score,rank_position")?;
    for (pos, &v) in ranking.order.iter().enumerate() {
        writeln!(out, "{},{},{},{}", graph.label(v), ranking.method, fmt_sig6(ranking.scores[v]), pos + 1)?;
    }
    Ok(())
}

/// `step,mean_cumulative_coverage`
pub fn write_mean_curve<W: Write>(curve: &[f64], mut out: W) -> Result<()> {
    writeln!(out, "step,mean_cumulative_coverage")?;
    for (step, c) in curve.iter().enumerate() {
        writeln!(out, "{step},{}", fmt_sig6(*c))?;
    }
    Ok(())
}

/// Quotes a free-text field when it holds a delimiter, quote or newline.
fn csv_field(text: &str) -> std::borrow::Cow<'_, str> {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\"")).into()
    } else {
        text.into()
    }
}

/// One row per configuration with its SN reference values.
pub fn write_config_summary<W: Write>(summary: &ComparisonSummary, mut out: W) -> Result<()> {
    writeln!(out, "config_id,graph,pp,sp,ranking,runs,mean_coverage_sn,mean_duration_sn,t_sn")?;
    for c in &summary.configs {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            c.config_id,
            csv_field(&c.graph),
            c.pp,
            c.sp,
            c.ranking,
            c.runs,
            fmt_sig6(c.mean_coverage_sn),
            fmt_sig6(c.mean_duration_sn),
            c.t_sn
        )?;
    }
    Ok(())
}

/// Coverage and duration ratios per configuration and sequential strategy.
pub fn write_ratios<W: Write>(summary: &ComparisonSummary, mut out: W) -> Result<()> {
    writeln!(
        out,
        "config_id,graph,pp,sp,ranking,strategy,runs,mean_coverage,mean_duration,coverage_ratio,duration_ratio"
    )?;
    let configs: std::collections::BTreeMap<usize, _> =
        summary.configs.iter().map(|c| (c.config_id, c)).collect();
    for s in &summary.per_config {
        let c = configs[&s.config_id];
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            s.config_id,
            csv_field(&c.graph),
            c.pp,
            c.sp,
            c.ranking,
            s.strategy,
            s.runs,
            fmt_sig6(s.mean_coverage),
            fmt_sig6(s.mean_duration),
            fmt_sig6(s.coverage_ratio),
            fmt_opt(s.duration_ratio)
        )?;
    }
    Ok(())
}

fn write_comparison_row<W: Write>(c: &StrategyComparison, out: &mut W) -> Result<()> {
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        c.baseline,
        c.strategy,
        c.configs,
        fmt_sig6(c.win_fraction),
        fmt_sig6(c.run_win_fraction),
        fmt_sig6(c.coverage_increase_pct),
        fmt_opt(c.duration_ratio),
        fmt_sig6(c.hl_delta),
        fmt_sig6(c.wilcoxon_p),
        fmt_sig6(c.hl_delta_duration),
        fmt_sig6(c.wilcoxon_p_duration)
    )?;
    Ok(())
}

/// Strategy comparison table: every sequential strategy against SN, then
/// `SQ_1PS_R` against every other sequential strategy.
pub fn write_comparison_table<W: Write>(summary: &ComparisonSummary, mut out: W) -> Result<()> {
    writeln!(
        out,
        "baseline,strategy,configs,win_fraction,run_win_fraction,coverage_increase_pct,duration_ratio,hl_delta,wilcoxon_p,hl_delta_duration,wilcoxon_p_duration"
    )?;
    for c in summary.versus_sn.iter().chain(&summary.versus_best) {
        write_comparison_row(c, &mut out)?;
    }
    Ok(())
}
