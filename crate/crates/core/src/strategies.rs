//! Seeding strategies.
//!
//! All strategies spend the same budget of `n` seeds and draw them from the
//! same precomputed ranking; they differ in when seeds are injected. A seed
//! is always the best-ranked node that is still inactive at its injection
//! instant, so nodes reached by diffusion are never wasted as seeds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffusion::{Coin, DiffusionState, DiffusionTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ranking::{RankCursor, Ranking};

/// Which strategy to run.
///
/// `t_sn` of the TSN variants may be left open; the experiment layer fills
/// it in from the single-stage reference block of the configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StrategyRepr", into = "String")]
pub enum StrategySpec {
    Sn,
    KPerStage { k: usize },
    KPerStageRevival { k: usize },
    KPerStageBuffered { k: usize },
    Tsn { t_sn: Option<usize> },
    TsnRevival { t_sn: Option<usize> },
}

impl StrategySpec {
    pub fn is_baseline(&self) -> bool {
        matches!(self, StrategySpec::Sn)
    }

    pub fn needs_t_sn(&self) -> bool {
        matches!(
            self,
            StrategySpec::Tsn { t_sn: None } | StrategySpec::TsnRevival { t_sn: None }
        )
    }

    /// Same strategy with the reference duration pinned.
    pub fn with_t_sn(self, value: usize) -> Self {
        match self {
            StrategySpec::Tsn { .. } => StrategySpec::Tsn { t_sn: Some(value) },
            StrategySpec::TsnRevival { .. } => StrategySpec::TsnRevival { t_sn: Some(value) },
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            StrategySpec::KPerStage { k }
            | StrategySpec::KPerStageRevival { k }
            | StrategySpec::KPerStageBuffered { k }
                if k == 0 =>
            {
                Err(Error::param(format!("{self}: k must be at least 1")))
            }
            StrategySpec::Tsn { t_sn: Some(0) } | StrategySpec::TsnRevival { t_sn: Some(0) } => {
                Err(Error::param(format!("{self}: t_sn must be at least 1")))
            }
            _ => Ok(()),
        }
    }

    /// Label without the pinned `t_sn`, e.g. `SQ_2PS_R` or `SQ_TSN`.
    pub fn label(&self) -> String {
        match self {
            StrategySpec::Sn => "SN".into(),
            StrategySpec::KPerStage { k } => format!("SQ_{k}PS"),
            StrategySpec::KPerStageRevival { k } => format!("SQ_{k}PS_R"),
            StrategySpec::KPerStageBuffered { k } => format!("SQ_{k}PS_B"),
            StrategySpec::Tsn { .. } => "SQ_TSN".into(),
            StrategySpec::TsnRevival { .. } => "SQ_TSN_R".into(),
        }
    }

    /// Builds a spec from a family name (`SN`, `SQ_kPS`, `SQ_kPS_R`,
    /// `SQ_kPS_B`, `SQ_TSN`, `SQ_TSN_R`) and its parameters.
    pub fn from_parts(kind: &str, k: Option<usize>, t_sn: Option<usize>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| Error::param(format!("{kind} requires k")));
        let spec = match kind {
            "SN" => StrategySpec::Sn,
            "SQ_kPS" => StrategySpec::KPerStage { k: need_k()? },
            "SQ_kPS_R" => StrategySpec::KPerStageRevival { k: need_k()? },
            "SQ_kPS_B" => StrategySpec::KPerStageBuffered { k: need_k()? },
            "SQ_TSN" => StrategySpec::Tsn { t_sn },
            "SQ_TSN_R" => StrategySpec::TsnRevival { t_sn },
            other => return Err(Error::param(format!("unknown strategy `{other}`"))),
        };
        let uses_k = matches!(
            spec,
            StrategySpec::KPerStage { .. }
                | StrategySpec::KPerStageRevival { .. }
                | StrategySpec::KPerStageBuffered { .. }
        );
        let uses_t = matches!(spec, StrategySpec::Tsn { .. } | StrategySpec::TsnRevival { .. });
        if k.is_some() && !uses_k {
            return Err(Error::param(format!("{kind} takes no k")));
        }
        if t_sn.is_some() && !uses_t {
            return Err(Error::param(format!("{kind} takes no t_sn")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for StrategySpec {
    type Err = Error;

    /// Accepts concrete labels such as `SN`, `SQ_4PS`, `SQ_1PS_R`,
    /// `SQ_2PS_B`, `SQ_TSN`, `SQ_TSN_R`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SN" => return Ok(StrategySpec::Sn),
            "SQ_TSN" => return Ok(StrategySpec::Tsn { t_sn: None }),
            "SQ_TSN_R" => return Ok(StrategySpec::TsnRevival { t_sn: None }),
            _ => {}
        }
        let bad = || Error::param(format!("unknown strategy `{s}`"));
        let rest = s.strip_prefix("SQ_").ok_or_else(bad)?;
        let (k, suffix) = rest.split_once("PS").ok_or_else(bad)?;
        let k: usize = k.parse().map_err(|_| bad())?;
        let spec = match suffix {
            "" => StrategySpec::KPerStage { k },
            "_R" => StrategySpec::KPerStageRevival { k },
            "_B" => StrategySpec::KPerStageBuffered { k },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Serialized forms: a label string, or `{"kind": ..., "k": ..., "t_sn": ...}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum StrategyRepr {
    Label(String),
    Parts(StrategyParts),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategyParts {
    kind: String,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    t_sn: Option<usize>,
}

impl TryFrom<StrategyRepr> for StrategySpec {
    type Error = Error;
    fn try_from(repr: StrategyRepr) -> Result<Self> {
        match repr {
            StrategyRepr::Label(s) => s.parse(),
            StrategyRepr::Parts(p) => StrategySpec::from_parts(&p.kind, p.k, p.t_sn),
        }
    }
}

impl From<StrategySpec> for String {
    fn from(s: StrategySpec) -> String {
        s.label()
    }
}

/// Seed budget for a seeding percentage: `max(1, round(sp * N))`.
pub fn seed_count(graph: &Graph, sp: f64) -> Result<usize> {
    if !(sp > 0.0 && sp <= 1.0) {
        return Err(Error::param(format!("seed percentage must lie in (0, 1], got {sp}")));
    }
    Ok(((sp * graph.node_count() as f64).round() as usize).max(1))
}

fn check_budget(graph: &Graph, ranking: &Ranking, n: usize) -> Result<()> {
    if n == 0 || n > graph.node_count() {
        return Err(Error::param(format!(
            "seed budget {n} must lie in 1..={}",
            graph.node_count()
        )));
    }
    if ranking.len() != graph.node_count() {
        return Err(Error::param("ranking does not cover the graph"));
    }
    Ok(())
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::param(format!("k={k} must lie in 1..={n}")));
    }
    Ok(())
}

/// Stage sizes for spreading `n` seeds over `stages` stages: equal shares,
/// the remainder going one each to the earliest stages.
pub fn equal_stages(n: usize, stages: usize) -> Vec<usize> {
    let (base, extra) = (n / stages, n % stages);
    (0..stages).map(|i| base + usize::from(i < extra)).collect()
}

/// Stage sizes of `k`-per-stage seeding: `ceil(n / k)` stages, the last one
/// possibly short.
pub fn k_per_stage(n: usize, k: usize) -> Vec<usize> {
    let mut sizes = vec![k; n / k];
    if !n.is_multiple_of(k) {
        sizes.push(n % k);
    }
    sizes
}

/// Injects `sizes[i]` top-ranked inactive seeds at stage `i`.
///
/// Without revival stages fire on consecutive steps; with revival the next
/// stage waits until a diffusion step activates nobody. Diffusion runs to
/// completion after the last stage. If the graph is saturated before the
/// budget is spent, the rest is forfeited.
fn run_staged<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    sizes: &[usize],
    revival: bool,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    let mut state = DiffusionState::new(graph.node_count());
    let mut cursor = RankCursor::new(ranking);
    let mut remaining: usize = sizes.iter().sum();
    for &size in sizes {
        let seeds = cursor.take(state.active(), size);
        state.activate_seeds(&seeds)?;
        remaining -= size;
        if seeds.len() < size {
            state.forfeit(size - seeds.len() + remaining);
            break;
        }
        if remaining == 0 {
            break;
        }
        if revival {
            state.run_until_stop(graph, pp, coin);
        } else {
            state.ic_step(graph, pp, coin);
        }
    }
    state.run_until_stop(graph, pp, coin);
    Ok(state.into_trace())
}

/// Single-stage seeding: the top `n` nodes at step 0.
pub fn run_sn<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    check_budget(graph, ranking, n)?;
    run_staged(graph, ranking, &[n], false, pp, coin)
}

/// `k` seeds at the start of every diffusion step.
pub fn run_sq_kps<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    k: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    check_budget(graph, ranking, n)?;
    check_k(k, n)?;
    run_staged(graph, ranking, &k_per_stage(n, k), false, pp, coin)
}

/// `k` seeds per stage; each stage lasts until diffusion stops.
pub fn run_sq_kps_r<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    k: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    check_budget(graph, ranking, n)?;
    check_k(k, n)?;
    run_staged(graph, ranking, &k_per_stage(n, k), true, pp, coin)
}

/// `k` entries of the initial top-`n` list per step, with buffering.
///
/// Scheduled entries that are still inactive are injected. An entry already
/// reached by diffusion banks one unit in the buffer. Whenever diffusion has
/// stopped (empty frontier after this step's entries) the whole buffer is
/// spent on the best-ranked inactive nodes.
pub fn run_sq_kps_b<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    k: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    check_budget(graph, ranking, n)?;
    check_k(k, n)?;
    let schedule = &ranking.order[..n];
    let mut state = DiffusionState::new(graph.node_count());
    let mut cursor = RankCursor::new(ranking);
    let mut next = 0;
    let mut buffer = 0;
    loop {
        if next < n {
            let end = (next + k).min(n);
            let mut seeds = Vec::with_capacity(k);
            for &v in &schedule[next..end] {
                if state.is_active(v) {
                    buffer += 1;
                } else {
                    seeds.push(v);
                }
            }
            next = end;
            state.activate_seeds(&seeds)?;
        }
        if state.frontier().is_empty() && buffer > 0 {
            let seeds = cursor.take(state.active(), buffer);
            state.activate_seeds(&seeds)?;
            let unspent = buffer - seeds.len();
            buffer = 0;
            if unspent > 0 {
                // saturated: nothing left to seed now or later
                state.forfeit(unspent + (n - next));
                break;
            }
        }
        if state.frontier().is_empty() && next >= n {
            break;
        }
        state.ic_step(graph, pp, coin);
    }
    Ok(state.into_trace())
}

/// `t_sn` stages on consecutive steps, seeds split equally with the
/// remainder front-loaded. Falls back to one seed per stage when `n < t_sn`.
pub fn run_sq_tsn<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    t_sn: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    check_budget(graph, ranking, n)?;
    run_staged(graph, ranking, &tsn_stages(n, t_sn)?, false, pp, coin)
}

/// Allocation of [`run_sq_tsn`], with each stage waiting for diffusion to stop.
pub fn run_sq_tsn_r<C: Coin + ?Sized>(
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    t_sn: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    check_budget(graph, ranking, n)?;
    run_staged(graph, ranking, &tsn_stages(n, t_sn)?, true, pp, coin)
}

/// Stage sizes of the TSN strategies.
pub fn tsn_stages(n: usize, t_sn: usize) -> Result<Vec<usize>> {
    if t_sn == 0 {
        return Err(Error::param("t_sn must be at least 1"));
    }
    Ok(if n < t_sn { k_per_stage(n, 1) } else { equal_stages(n, t_sn) })
}

/// Runs `spec` with budget `n`. TSN variants need a pinned `t_sn`.
///
/// `k` larger than `n` is clamped to `n` (a single stage).
pub fn run_strategy<C: Coin + ?Sized>(
    spec: StrategySpec,
    graph: &Graph,
    ranking: &Ranking,
    n: usize,
    pp: f64,
    coin: &mut C,
) -> Result<DiffusionTrace> {
    if !(0.0..=1.0).contains(&pp) {
        return Err(Error::param(format!("propagation probability must lie in [0, 1], got {pp}")));
    }
    spec.validate()?;
    let missing = || Error::param(format!("{spec} needs t_sn"));
    match spec {
        StrategySpec::Sn => run_sn(graph, ranking, n, pp, coin),
        StrategySpec::KPerStage { k } => run_sq_kps(graph, ranking, n, k.min(n), pp, coin),
        StrategySpec::KPerStageRevival { k } => run_sq_kps_r(graph, ranking, n, k.min(n), pp, coin),
        StrategySpec::KPerStageBuffered { k } => run_sq_kps_b(graph, ranking, n, k.min(n), pp, coin),
        StrategySpec::Tsn { t_sn } => run_sq_tsn(graph, ranking, n, t_sn.ok_or_else(missing)?, pp, coin),
        StrategySpec::TsnRevival { t_sn } => {
            run_sq_tsn_r(graph, ranking, n, t_sn.ok_or_else(missing)?, pp, coin)
        }
    }
}
