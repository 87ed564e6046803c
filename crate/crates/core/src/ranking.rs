//! Node rankings used for seed selection.
//!
//! A ranking is computed once on the initial network. Sequential strategies
//! then walk it repeatedly, skipping nodes that diffusion has already reached.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RankingMethod {
    Random,
    Degree,
    Degree2,
    PageRank,
    Eigenvector,
}

impl RankingMethod {
    pub const ALL: [RankingMethod; 5] = [
        RankingMethod::Random,
        RankingMethod::Degree,
        RankingMethod::Degree2,
        RankingMethod::PageRank,
        RankingMethod::Eigenvector,
    ];

    /// Short tag: `R`, `D`, `D2`, `PR`, `EV`.
    pub fn tag(self) -> &'static str {
        match self {
            RankingMethod::Random => "R",
            RankingMethod::Degree => "D",
            RankingMethod::Degree2 => "D2",
            RankingMethod::PageRank => "PR",
            RankingMethod::Eigenvector => "EV",
        }
    }
}

impl fmt::Display for RankingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RankingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "R" | "RANDOM" => RankingMethod::Random,
            "D" | "DEGREE" => RankingMethod::Degree,
            "D2" | "DEGREE2" => RankingMethod::Degree2,
            "PR" | "PAGERANK" => RankingMethod::PageRank,
            "EV" | "EIGENVECTOR" => RankingMethod::Eigenvector,
            _ => return Err(Error::param(format!("unknown ranking method `{s}`"))),
        })
    }
}

impl TryFrom<String> for RankingMethod {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<RankingMethod> for String {
    fn from(m: RankingMethod) -> String {
        m.tag().to_owned()
    }
}

/// All nodes, best first, with the score each was ranked by.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub method: RankingMethod,
    /// Permutation of `0..node_count`.
    pub order: Vec<usize>,
    /// Score per node id (not per position).
    pub scores: Vec<f64>,
}

impl Ranking {
    /// Ranking that follows `order` verbatim; scores descend with position.
    pub fn from_order(method: RankingMethod, order: Vec<usize>) -> Self {
        let n = order.len();
        let mut scores = vec![0.0; n];
        for (pos, &v) in order.iter().enumerate() {
            scores[v] = (n - pos) as f64;
        }
        Ranking { method, order, scores }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of every node in `order`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// PageRank and eigenvector scores are snapped to this grid before sorting
/// so that floating-point noise between structurally equivalent nodes does
/// not masquerade as a real difference.
const SCORE_GRID: f64 = 1e-9;

fn snap(x: f64) -> f64 {
    (x / SCORE_GRID).round() * SCORE_GRID
}

/// Ranks every node of `graph` by `method`.
///
/// Ties are broken uniformly at random: node ids are shuffled with `rng`
/// before a stable descending sort by score. `Random` is that shuffle alone.
pub fn rank<R: Rng + ?Sized>(graph: &Graph, method: RankingMethod, rng: &mut R) -> Ranking {
    let n = graph.node_count();
    let scores: Vec<f64> = match method {
        RankingMethod::Random => vec![0.0; n],
        RankingMethod::Degree => (0..n).map(|v| graph.degree(v) as f64).collect(),
        RankingMethod::Degree2 => degree2_scores(graph),
        RankingMethod::PageRank => pagerank_scores(graph, PageRankParams::default())
            .scores
            .into_iter()
            .map(snap)
            .collect(),
        RankingMethod::Eigenvector => eigenvector_scores(graph, EigenvectorParams::default())
            .scores
            .into_iter()
            .map(snap)
            .collect(),
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    Ranking { method, order, scores }
}

/// Own degree plus the degrees of all neighbors.
pub fn degree2_scores(graph: &Graph) -> Vec<f64> {
    (0..graph.node_count())
        .map(|v| {
            let around: usize = graph.neighbors(v).iter().map(|&u| graph.degree(u)).sum();
            (graph.degree(v) + around) as f64
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams { damping: 0.85, tol: 1e-10, max_iter: 1000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EigenvectorParams {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenvectorParams {
    fn default() -> Self {
        EigenvectorParams { tol: 1e-10, max_iter: 5000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Centrality {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// PageRank by power iteration on the random walk over undirected edges.
///
/// Mass sitting on isolated nodes has nowhere to go and is spread uniformly,
/// like the teleport term, so scores always sum to one.
pub fn pagerank_scores(graph: &Graph, params: PageRankParams) -> Centrality {
    let n = graph.node_count();
    let d = params.damping;
    let uniform = 1.0 / n as f64;
    let mut x = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling: f64 = (0..n).filter(|&v| graph.degree(v) == 0).map(|v| x[v]).sum();
        let base = (1.0 - d) * uniform + d * dangling * uniform;
        next.iter_mut().for_each(|s| *s = base);
        for (u, &mass) in x.iter().enumerate() {
            let deg = graph.degree(u);
            if deg == 0 {
                continue;
            }
            let share = d * mass / deg as f64;
            for &v in graph.neighbors(u) {
                next[v] += share;
            }
        }
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < params.tol {
            converged = true;
            break;
        }
    }
    Centrality { scores: x, iterations, converged }
}

/// Principal eigenvector of the adjacency matrix, L2-normalised.
///
/// Iterates `A + I` rather than `A`: same eigenvectors, but on bipartite
/// graphs the `±λ` pair no longer makes the iteration oscillate.
pub fn eigenvector_scores(graph: &Graph, params: EigenvectorParams) -> Centrality {
    let n = graph.node_count();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        for v in 0..n {
            next[v] = x[v] + graph.neighbors(v).iter().map(|&u| x[u]).sum::<f64>();
        }
        let norm = next.iter().map(|s| s * s).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        next.iter_mut().for_each(|s| *s /= norm);
        let dist = x.iter().zip(&next).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        std::mem::swap(&mut x, &mut next);
        if dist < params.tol {
            converged = true;
            break;
        }
    }
    Centrality { scores: x, iterations, converged }
}

/// The first `min(k, #inactive)` nodes of `ranking.order` that are not active.
pub fn top_inactive(ranking: &Ranking, active: &[bool], k: usize) -> Vec<usize> {
    ranking.order.iter().copied().filter(|&v| !active[v]).take(k).collect()
}

/// Incremental [`top_inactive`] for one run.
///
/// Activation never reverts within a run, so nodes skipped once stay
/// skipped and a forward-only cursor gives the same answers in amortised
/// `O(N)` per run.
#[derive(Debug, Clone)]
pub struct RankCursor<'a> {
    order: &'a [usize],
    next: usize,
}

impl<'a> RankCursor<'a> {
    pub fn new(ranking: &'a Ranking) -> Self {
        RankCursor { order: &ranking.order, next: 0 }
    }

    pub fn take(&mut self, active: &[bool], k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        // nodes handed out are about to be activated by the caller, so the
        // cursor moves past them too
        while out.len() < k && self.next < self.order.len() {
            let v = self.order[self.next];
            self.next += 1;
            if !active[v] {
                out.push(v);
            }
        }
        out
    }
}
