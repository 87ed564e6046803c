//! Independent Cascade diffusion.
//!
//! Time is counted in diffusion steps. Seeds injected at step `t` and nodes
//! activated by diffusion at step `t` form the frontier; during the next
//! [`DiffusionState::ic_step`] each frontier node makes one attempt on every
//! neighbor that is still inactive, and the winners are recorded at `t + 1`.
//! A node only attempts while it sits in the frontier, so every ordered pair
//! is tried at most once per run.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Source of activation outcomes.
///
/// Any [`Rng`] is a coin that flips `Bernoulli(pp)` per attempt. Tests and
/// oracles substitute scripted coins (fixed live-edge sets, recorders).
pub trait Coin {
    fn attempt(&mut self, from: usize, to: usize, pp: f64) -> bool;
}

impl<R: Rng + ?Sized> Coin for R {
    fn attempt(&mut self, _from: usize, _to: usize, pp: f64) -> bool {
        self.random_bool(pp)
    }
}

/// Coin that succeeds exactly on a fixed set of undirected "live" edges.
///
/// Under IC an undirected edge is attempted at most once in total, so a run
/// driven by a live-edge coin is one outcome of the cascade, and weighting
/// every live-edge set by its probability reproduces the process exactly.
#[derive(Debug, Clone)]
pub struct LiveEdges {
    live: std::collections::HashSet<(usize, usize)>,
}

impl LiveEdges {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        LiveEdges { live: edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect() }
    }
}

impl Coin for LiveEdges {
    fn attempt(&mut self, from: usize, to: usize, _pp: f64) -> bool {
        self.live.contains(&(from.min(to), from.max(to)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: usize,
    pub seeds_injected: usize,
    pub activated: usize,
    pub cumulative_coverage: usize,
}

impl TraceEntry {
    fn has_activity(&self) -> bool {
        self.seeds_injected + self.activated > 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Injection {
    pub step: usize,
    pub node: usize,
}

/// Step-by-step record of one run.
///
/// Entries cover steps `0..=last step with activity`; a step at which
/// nothing happened in the middle of a run still gets an entry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffusionTrace {
    pub entries: Vec<TraceEntry>,
    /// Seeds in injection order.
    pub injections: Vec<Injection>,
    /// Budget left unspent because every node was already active.
    pub forfeited: usize,
}

impl DiffusionTrace {
    /// Final coverage `C`.
    pub fn coverage(&self) -> usize {
        self.entries.last().map_or(0, |e| e.cumulative_coverage)
    }

    /// Duration `T`: the last step at which any node became active.
    pub fn duration(&self) -> usize {
        self.entries.iter().rev().find(|e| e.has_activity()).map_or(0, |e| e.step)
    }

    /// Cumulative coverage at the end of `step` (final coverage past the end).
    pub fn coverage_at(&self, step: usize) -> usize {
        match self.entries.binary_search_by_key(&step, |e| e.step) {
            Ok(i) => self.entries[i].cumulative_coverage,
            Err(0) => 0,
            Err(i) => self.entries[i - 1].cumulative_coverage,
        }
    }

    /// First step whose cumulative coverage reaches `target`.
    pub fn first_step_reaching(&self, target: f64) -> Option<usize> {
        self.entries.iter().find(|e| e.cumulative_coverage as f64 >= target).map(|e| e.step)
    }

    pub fn seeds(&self) -> Vec<usize> {
        self.injections.iter().map(|i| i.node).collect()
    }

    /// Number of distinct injection steps.
    pub fn stage_count(&self) -> usize {
        self.entries.iter().filter(|e| e.seeds_injected > 0).count()
    }

    /// Cumulative coverage per step `0..len`, carrying the final value.
    pub fn curve(&self, len: usize) -> Vec<usize> {
        (0..len).map(|s| self.coverage_at(s)).collect()
    }
}

/// Mutable state of one run.
#[derive(Debug, Clone)]
pub struct DiffusionState {
    active: Vec<bool>,
    /// Nodes activated during the step in progress.
    won: Vec<bool>,
    coverage: usize,
    frontier: Vec<usize>,
    step: usize,
    trace: DiffusionTrace,
}

impl DiffusionState {
    pub fn new(node_count: usize) -> Self {
        DiffusionState {
            active: vec![false; node_count],
            won: vec![false; node_count],
            coverage: 0,
            frontier: Vec::new(),
            step: 0,
            trace: DiffusionTrace::default(),
        }
    }

    pub fn is_active(&self, node: usize) -> bool {
        self.active[node]
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn coverage(&self) -> usize {
        self.coverage
    }

    pub fn frontier(&self) -> &[usize] {
        &self.frontier
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn trace(&self) -> &DiffusionTrace {
        &self.trace
    }

    pub fn all_active(&self) -> bool {
        self.coverage == self.active.len()
    }

    pub(crate) fn forfeit(&mut self, units: usize) {
        self.trace.forfeited += units;
    }

    pub fn into_trace(self) -> DiffusionTrace {
        self.trace
    }

    fn entry_mut(&mut self, step: usize) -> &mut TraceEntry {
        let coverage = self.coverage;
        let next = self.trace.entries.last().map_or(0, |e| e.step + 1);
        for s in next..=step {
            self.trace.entries.push(TraceEntry {
                step: s,
                seeds_injected: 0,
                activated: 0,
                cumulative_coverage: coverage,
            });
        }
        self.trace.entries.last_mut().expect("entry exists")
    }

    /// Activates `seeds` at the current step. They join the frontier and
    /// make their attempts in the next [`ic_step`](Self::ic_step).
    ///
    /// Fails without side effects if any seed is out of range, already
    /// active, or listed twice.
    pub fn activate_seeds(&mut self, seeds: &[usize]) -> Result<()> {
        if seeds.is_empty() {
            return Ok(());
        }
        let node_count = self.active.len();
        for (i, &s) in seeds.iter().enumerate() {
            if s >= node_count {
                return Err(Error::NodeOutOfRange { node: s, node_count });
            }
            if self.active[s] || seeds[..i].contains(&s) {
                return Err(Error::AlreadyActive(s));
            }
        }
        for &s in seeds {
            self.active[s] = true;
            self.frontier.push(s);
            self.trace.injections.push(Injection { step: self.step, node: s });
        }
        self.coverage += seeds.len();
        let coverage = self.coverage;
        let entry = self.entry_mut(self.step);
        entry.seeds_injected += seeds.len();
        entry.cumulative_coverage = coverage;
        Ok(())
    }

    /// One diffusion step. Returns the newly activated nodes, which become
    /// the next frontier; the step counter always advances.
    ///
    /// Every frontier node makes one independent attempt on each neighbor
    /// that was inactive when the step began, so a node can be drawn
    /// several times in one step; it activates once.
    pub fn ic_step<C: Coin + ?Sized>(&mut self, graph: &Graph, pp: f64, coin: &mut C) -> Vec<usize> {
        let mut frontier = std::mem::take(&mut self.frontier);
        frontier.sort_unstable();
        let mut fresh = Vec::new();
        for &u in &frontier {
            for &v in graph.neighbors(u) {
                if self.active[v] && !self.won[v] {
                    continue;
                }
                if coin.attempt(u, v, pp) && !self.won[v] {
                    self.active[v] = true;
                    self.won[v] = true;
                    fresh.push(v);
                }
            }
        }
        for &v in &fresh {
            self.won[v] = false;
        }
        self.step += 1;
        if !fresh.is_empty() {
            self.coverage += fresh.len();
            let coverage = self.coverage;
            let entry = self.entry_mut(self.step);
            entry.activated += fresh.len();
            entry.cumulative_coverage = coverage;
        }
        self.frontier = fresh.clone();
        fresh
    }

    /// Repeats [`ic_step`](Self::ic_step) until a step activates nobody.
    pub fn run_until_stop<C: Coin + ?Sized>(&mut self, graph: &Graph, pp: f64, coin: &mut C) {
        while !self.ic_step(graph, pp, coin).is_empty() {}
    }
}

/// Largest graph [`expected_coverage_exact`] will enumerate.
pub const EXACT_EDGE_LIMIT: usize = 20;

/// Exact expected final coverage of a cascade started from `seeds`.
///
/// Sums, over every subset `L` of edges, `pp^|L| (1-pp)^(E-|L|)` times the
/// number of nodes reachable from the seeds through `L`. Cost is `2^E`, so
/// graphs above [`EXACT_EDGE_LIMIT`] edges are refused.
pub fn expected_coverage_exact(graph: &Graph, seeds: &[usize], pp: f64) -> Result<f64> {
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let e = edges.len();
    if e > EXACT_EDGE_LIMIT {
        return Err(Error::TooManyEdges { edges: e, limit: EXACT_EDGE_LIMIT });
    }
    let n = graph.node_count();
    for &s in seeds {
        if s >= n {
            return Err(Error::NodeOutOfRange { node: s, node_count: n });
        }
    }
    let mut total = 0.0;
    let mut reached = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    let mut live_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for mask in 0u32..(1u32 << e) {
        let live = mask.count_ones() as i32;
        let weight = pp.powi(live) * (1.0 - pp).powi(e as i32 - live);
        if weight == 0.0 {
            continue;
        }
        live_adj.iter_mut().for_each(Vec::clear);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                live_adj[u].push(v);
                live_adj[v].push(u);
            }
        }
        reached.iter_mut().for_each(|r| *r = false);
        let mut count = 0;
        for &s in seeds {
            if !reached[s] {
                reached[s] = true;
                count += 1;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &v in &live_adj[u] {
                if !reached[v] {
                    reached[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        total += weight * count as f64;
    }
    Ok(total)
}
