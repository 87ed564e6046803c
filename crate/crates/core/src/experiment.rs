//! Replicated experiment grids and strategy comparison.
//!
//! A configuration is one (graph, pp, sp, ranking) tuple. For each
//! configuration the single-stage baseline is replicated first; its mean
//! coverage and rounded mean duration are the references that sequential
//! runs are measured against, and that mean duration is the `t_sn` of the
//! TSN strategies.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffusion::{Coin, DiffusionTrace};
use crate::error::{Error, Result};
use crate::graph::{generate_ba, generate_er, Graph};
use crate::ranking::{rank, Ranking, RankingMethod};
use crate::rng::{derive_seed, name_key, rng_from_seed};
use crate::stats::{hodges_lehmann, wilcoxon_signed_rank};
use crate::strategies::{run_sn, run_strategy, seed_count, StrategySpec};

pub const BASELINE: &str = "SN";
/// Strategy that the right half of the comparison table measures others against.
pub const BEST_SEQUENTIAL: &str = "SQ_1PS_R";

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub graphs: Vec<NamedGraph>,
    pub pp_values: Vec<f64>,
    pub sp_values: Vec<f64>,
    pub rankings: Vec<RankingMethod>,
    pub strategies: Vec<StrategySpec>,
    pub replications: usize,
    pub master_seed: u64,
}

/// Coordinates of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigKey {
    pub config_id: usize,
    pub graph_index: usize,
    pub graph: String,
    pub pp: f64,
    pub sp: f64,
    pub ranking: RankingMethod,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Parameter(m));
        if self.graphs.is_empty() {
            return fail("graphs: must not be empty".into());
        }
        if self.pp_values.is_empty() || self.sp_values.is_empty() || self.rankings.is_empty() {
            return fail("pp_values, sp_values and rankings must not be empty".into());
        }
        if self.strategies.is_empty() {
            return fail("strategies: must not be empty".into());
        }
        if self.replications == 0 {
            return fail("replications: must be at least 1".into());
        }
        if let Some(pp) = self.pp_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return fail(format!("pp_values: {pp} outside [0, 1]"));
        }
        if let Some(sp) = self.sp_values.iter().find(|s| !(**s > 0.0 && **s <= 1.0)) {
            return fail(format!("sp_values: {sp} outside (0, 1]"));
        }
        let mut labels = BTreeSet::new();
        for s in &self.strategies {
            s.validate()?;
            if !labels.insert(s.label()) {
                return fail(format!("strategies: `{s}` listed twice"));
            }
        }
        let mut names = BTreeSet::new();
        for g in &self.graphs {
            if !names.insert(g.name.as_str()) {
                return fail(format!("graphs: name `{}` listed twice", g.name));
            }
        }
        Ok(())
    }

    pub fn config_count(&self) -> usize {
        self.graphs.len() * self.pp_values.len() * self.sp_values.len() * self.rankings.len()
    }

    /// Configurations in id order: graph, then pp, then sp, then ranking.
    pub fn configs(&self) -> Vec<ConfigKey> {
        let mut out = Vec::with_capacity(self.config_count());
        for (graph_index, g) in self.graphs.iter().enumerate() {
            for &pp in &self.pp_values {
                for &sp in &self.sp_values {
                    for &ranking in &self.rankings {
                        out.push(ConfigKey {
                            config_id: out.len(),
                            graph_index,
                            graph: g.name.clone(),
                            pp,
                            sp,
                            ranking,
                        });
                    }
                }
            }
        }
        out
    }

    /// Laptop-sized grid: BA(1000, 3) and ER(1000, 0.006), five pp values,
    /// sp from 1% to 5%, every ranking, and the strategy line-up of
    /// [`desk_strategies`]. Graphs are generated from `master_seed`.
    pub fn desk(replications: usize, master_seed: u64) -> Result<Self> {
        let ba = generate_ba(1000, 3, &mut rng_from_seed(derive_seed(&[master_seed, name_key("BA")])))?;
        let er = generate_er(1000, 0.006, &mut rng_from_seed(derive_seed(&[master_seed, name_key("ER")])))?;
        Ok(Self {
            graphs: vec![
                NamedGraph { name: "BA(1000,3)".into(), graph: ba },
                NamedGraph { name: "ER(1000,0.006)".into(), graph: er },
            ],
            pp_values: vec![0.05, 0.1, 0.15, 0.2, 0.25],
            sp_values: vec![0.01, 0.02, 0.03, 0.04, 0.05],
            rankings: RankingMethod::ALL.to_vec(),
            strategies: desk_strategies(),
            replications,
            master_seed,
        })
    }

    /// Sequential strategies to run after the baseline, in listed order.
    fn sequential(&self) -> impl Iterator<Item = &StrategySpec> {
        self.strategies.iter().filter(|s| !s.is_baseline())
    }
}

/// SN, SQ_kPS and SQ_kPS_R for k in {1, 2, 4, 8}, both TSN variants and
/// SQ_1PS_B.
pub fn desk_strategies() -> Vec<StrategySpec> {
    use StrategySpec::*;
    let mut out = vec![Sn];
    out.extend([1, 2, 4, 8].map(|k| KPerStage { k }));
    out.extend([1, 2, 4, 8].map(|k| KPerStageRevival { k }));
    out.extend([Tsn { t_sn: None }, TsnRevival { t_sn: None }, KPerStageBuffered { k: 1 }]);
    out
}

/// Metrics of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config_id: usize,
    pub graph: String,
    pub pp: f64,
    pub sp: f64,
    pub ranking: RankingMethod,
    pub strategy: String,
    pub run_id: usize,
    pub coverage: usize,
    pub duration: usize,
    /// First step at which coverage reached the configuration's mean SN coverage.
    pub t_reach_csn: Option<usize>,
    /// Coverage at step `t_sn` of the configuration.
    pub coverage_at_tsn: usize,
}

#[derive(Debug, Clone, Default)]
pub struct GridOutput {
    pub records: Vec<RunRecord>,
    /// Configurations that were aborted, with the reason.
    pub failures: Vec<(usize, String)>,
}

/// Seed of the stream driving run `run_id` of `strategy` in `config_id`.
pub fn run_seed(master_seed: u64, config_id: usize, strategy: &str, run_id: usize) -> u64 {
    derive_seed(&[master_seed, config_id as u64, name_key(strategy), run_id as u64])
}

/// Seed of the stream that breaks ranking ties for `config_id`.
pub fn ranking_seed(master_seed: u64, config_id: usize) -> u64 {
    derive_seed(&[master_seed, config_id as u64, name_key("ranking")])
}

/// Reference duration: `max(1, round(mean))` of the SN durations.
pub fn t_sn_from_durations(durations: impl IntoIterator<Item = usize>) -> usize {
    let (sum, count) = durations.into_iter().fold((0usize, 0usize), |(s, c), d| (s + d, c + 1));
    if count == 0 {
        return 1;
    }
    ((sum as f64 / count as f64).round() as usize).max(1)
}

/// Runs SN `replications` times on one stream and derives `t_sn`.
pub fn estimate_tsn<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    pp: f64,
    replications: usize,
    coin: &mut C,
) -> Result<usize> {
    if replications == 0 {
        return Err(Error::param("replications must be at least 1"));
    }
    let mut durations = Vec::with_capacity(replications);
    for _ in 0..replications {
        durations.push(run_sn(graph, ranking, n, pp, coin)?.duration());
    }
    Ok(t_sn_from_durations(durations))
}

fn record(key: &ConfigKey, strategy: &str, run_id: usize, trace: &DiffusionTrace, mean_csn: f64, t_sn: usize) -> RunRecord {
    RunRecord {
        config_id: key.config_id,
        graph: key.graph.clone(),
        pp: key.pp,
        sp: key.sp,
        ranking: key.ranking,
        strategy: strategy.to_owned(),
        run_id,
        coverage: trace.coverage(),
        duration: trace.duration(),
        t_reach_csn: trace.first_step_reaching(mean_csn),
        coverage_at_tsn: trace.coverage_at(t_sn),
    }
}

/// All runs of one configuration: the SN block, then each sequential strategy.
pub fn run_config(spec: &GridSpec, key: &ConfigKey) -> Result<Vec<RunRecord>> {
    let graph = &spec.graphs[key.graph_index].graph;
    let n = seed_count(graph, key.sp)?;
    let ranking = rank(graph, key.ranking, &mut rng_from_seed(ranking_seed(spec.master_seed, key.config_id)));
    let reps = spec.replications;

    let baseline: Vec<DiffusionTrace> = (0..reps)
        .map(|run| {
            let mut rng = rng_from_seed(run_seed(spec.master_seed, key.config_id, BASELINE, run));
            run_sn(graph, &ranking, n, key.pp, &mut rng)
        })
        .collect::<Result<_>>()?;
    let mean_csn = baseline.iter().map(|t| t.coverage()).sum::<usize>() as f64 / reps as f64;
    let t_sn = t_sn_from_durations(baseline.iter().map(DiffusionTrace::duration));

    let mut records = Vec::with_capacity(reps * spec.strategies.len().max(1));
    for (run, trace) in baseline.iter().enumerate() {
        records.push(record(key, BASELINE, run, trace, mean_csn, t_sn));
    }
    for &strategy in spec.sequential() {
        let resolved = if strategy.needs_t_sn() { strategy.with_t_sn(t_sn) } else { strategy };
        let label = strategy.label();
        for run in 0..reps {
            let mut rng = rng_from_seed(run_seed(spec.master_seed, key.config_id, &label, run));
            let trace = run_strategy(resolved, graph, &ranking, n, key.pp, &mut rng)?;
            records.push(record(key, &label, run, &trace, mean_csn, t_sn));
        }
    }
    Ok(records)
}

/// Runs every configuration of `spec` on the current rayon pool.
///
/// Output order (config, strategy as listed, run) does not depend on the
/// number of threads. A failing configuration is reported in
/// [`GridOutput::failures`] and the rest of the grid still runs.
pub fn run_grid(spec: &GridSpec) -> Result<GridOutput> {
    spec.validate()?;
    let configs = spec.configs();
    let results: Vec<Result<Vec<RunRecord>>> = configs.par_iter().map(|key| run_config(spec, key)).collect();
    let mut out = GridOutput::default();
    for (key, result) in configs.iter().zip(results) {
        match result {
            Ok(mut records) => out.records.append(&mut records),
            Err(e) => out.failures.push((key.config_id, e.to_string())),
        }
    }
    Ok(out)
}

/// Baseline reference values of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigSummary {
    pub config_id: usize,
    pub graph: String,
    pub pp: f64,
    pub sp: f64,
    pub ranking: RankingMethod,
    pub runs: usize,
    pub mean_coverage_sn: f64,
    pub mean_duration_sn: f64,
    pub t_sn: usize,
}

/// One strategy in one configuration, relative to its baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyConfigStats {
    pub config_id: usize,
    pub strategy: String,
    pub runs: usize,
    pub mean_coverage: f64,
    pub mean_duration: f64,
    pub coverage_ratio: f64,
    /// Undefined when every baseline run had duration 0.
    pub duration_ratio: Option<f64>,
}

/// Aggregate of a challenger strategy against a reference strategy over all
/// configurations where both ran.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyComparison {
    pub baseline: String,
    pub strategy: String,
    pub configs: usize,
    /// Share of configurations where the challenger's mean coverage is
    /// strictly larger. Ties count as losses.
    pub win_fraction: f64,
    /// Same, over runs paired by `run_id`.
    pub run_win_fraction: f64,
    /// Mean over configurations of `100 * (C_challenger / C_baseline - 1)`.
    pub coverage_increase_pct: f64,
    /// Mean over configurations of `T_challenger / T_baseline` (where defined).
    pub duration_ratio: Option<f64>,
    /// Hodges–Lehmann shift of per-configuration mean coverage differences.
    pub hl_delta: f64,
    pub wilcoxon_p: f64,
    pub hl_delta_duration: f64,
    pub wilcoxon_p_duration: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonSummary {
    pub configs: Vec<ConfigSummary>,
    /// Sequential strategies only, ordered by config then label.
    pub per_config: Vec<StrategyConfigStats>,
    /// Every sequential strategy against SN.
    pub versus_sn: Vec<StrategyComparison>,
    /// `SQ_1PS_R` against every other sequential strategy, when present.
    pub versus_best: Vec<StrategyComparison>,
}

impl ComparisonSummary {
    pub fn versus_sn(&self, strategy: &str) -> Option<&StrategyComparison> {
        self.versus_sn.iter().find(|c| c.strategy == strategy)
    }

    pub fn stats(&self, config_id: usize, strategy: &str) -> Option<&StrategyConfigStats> {
        self.per_config.iter().find(|s| s.config_id == config_id && s.strategy == strategy)
    }
}

#[derive(Default)]
struct Group {
    coverage_sum: u64,
    duration_sum: u64,
    coverage_by_run: BTreeMap<usize, usize>,
}

impl Group {
    fn runs(&self) -> usize {
        self.coverage_by_run.len()
    }
    fn mean_coverage(&self) -> f64 {
        self.coverage_sum as f64 / self.runs() as f64
    }
    fn mean_duration(&self) -> f64 {
        self.duration_sum as f64 / self.runs() as f64
    }
}

/// Per-configuration means, ratios against SN, and the strategy comparison
/// tables. A pure function of the record multiset.
pub fn summarize(records: &[RunRecord]) -> Result<ComparisonSummary> {
    let mut groups: BTreeMap<(usize, String), Group> = BTreeMap::new();
    let mut meta: BTreeMap<usize, &RunRecord> = BTreeMap::new();
    let mut durations_by_run: BTreeMap<(usize, String, usize), usize> = BTreeMap::new();
    for r in records {
        let g = groups.entry((r.config_id, r.strategy.clone())).or_default();
        g.coverage_sum += r.coverage as u64;
        g.duration_sum += r.duration as u64;
        g.coverage_by_run.insert(r.run_id, r.coverage);
        durations_by_run.insert((r.config_id, r.strategy.clone(), r.run_id), r.duration);
        meta.entry(r.config_id)
            .and_modify(|m| {
                if (r.run_id, &r.strategy) < (m.run_id, &m.strategy) {
                    *m = r;
                }
            })
            .or_insert(r);
    }

    let mut summary = ComparisonSummary::default();
    let mut labels: BTreeSet<String> = BTreeSet::new();
    for (&config_id, m) in &meta {
        let base = groups
            .get(&(config_id, BASELINE.to_owned()))
            .ok_or(Error::MissingBaseline { config_id })?;
        let mean_duration_sn = base.mean_duration();
        summary.configs.push(ConfigSummary {
            config_id,
            graph: m.graph.clone(),
            pp: m.pp,
            sp: m.sp,
            ranking: m.ranking,
            runs: base.runs(),
            mean_coverage_sn: base.mean_coverage(),
            mean_duration_sn,
            t_sn: t_sn_from_durations(
                durations_by_run
                    .range((config_id, BASELINE.to_owned(), 0)..=(config_id, BASELINE.to_owned(), usize::MAX))
                    .map(|(_, &d)| d),
            ),
        });
        for ((_, label), g) in groups.range((config_id, String::new())..(config_id + 1, String::new())) {
            if label == BASELINE {
                continue;
            }
            labels.insert(label.clone());
            summary.per_config.push(StrategyConfigStats {
                config_id,
                strategy: label.clone(),
                runs: g.runs(),
                mean_coverage: g.mean_coverage(),
                mean_duration: g.mean_duration(),
                coverage_ratio: g.mean_coverage() / base.mean_coverage(),
                duration_ratio: (mean_duration_sn > 0.0).then(|| g.mean_duration() / mean_duration_sn),
            });
        }
    }

    for label in &labels {
        if let Some(c) = compare(&groups, BASELINE, label)? {
            summary.versus_sn.push(c);
        }
    }
    if labels.contains(BEST_SEQUENTIAL) {
        for label in labels.iter().filter(|l| *l != BEST_SEQUENTIAL) {
            if let Some(c) = compare(&groups, label, BEST_SEQUENTIAL)? {
                summary.versus_best.push(c);
            }
        }
    }
    Ok(summary)
}

fn compare(
    groups: &BTreeMap<(usize, String), Group>,
    baseline: &str,
    challenger: &str,
) -> Result<Option<StrategyComparison>> {
    let config_ids: BTreeSet<usize> = groups.keys().map(|(c, _)| *c).collect();
    let mut cov_diff = Vec::new();
    let mut dur_diff = Vec::new();
    let mut wins = 0usize;
    let mut gain_pct = Vec::new();
    let mut dur_ratio = Vec::new();
    let (mut run_wins, mut run_pairs) = (0usize, 0usize);
    for cid in config_ids {
        let (Some(b), Some(c)) = (
            groups.get(&(cid, baseline.to_owned())),
            groups.get(&(cid, challenger.to_owned())),
        ) else {
            continue;
        };
        let (cb, cc) = (b.mean_coverage(), c.mean_coverage());
        let (tb, tc) = (b.mean_duration(), c.mean_duration());
        cov_diff.push(cc - cb);
        dur_diff.push(tc - tb);
        wins += usize::from(cc > cb);
        gain_pct.push(100.0 * (cc / cb - 1.0));
        if tb > 0.0 {
            dur_ratio.push(tc / tb);
        }
        for (run, &cov) in &c.coverage_by_run {
            if let Some(&base_cov) = b.coverage_by_run.get(run) {
                run_pairs += 1;
                run_wins += usize::from(cov > base_cov);
            }
        }
    }
    if cov_diff.is_empty() {
        return Ok(None);
    }
    let k = cov_diff.len() as f64;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    Ok(Some(StrategyComparison {
        baseline: baseline.to_owned(),
        strategy: challenger.to_owned(),
        configs: cov_diff.len(),
        win_fraction: wins as f64 / k,
        run_win_fraction: if run_pairs == 0 { 0.0 } else { run_wins as f64 / run_pairs as f64 },
        coverage_increase_pct: mean(&gain_pct),
        duration_ratio: (!dur_ratio.is_empty()).then(|| mean(&dur_ratio)),
        hl_delta: hodges_lehmann(&cov_diff)?,
        wilcoxon_p: wilcoxon_signed_rank(&cov_diff)?.p_value,
        hl_delta_duration: hodges_lehmann(&dur_diff)?,
        wilcoxon_p_duration: wilcoxon_signed_rank(&dur_diff)?.p_value,
    }))
}
