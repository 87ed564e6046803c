//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

use seqseed::{Coin, Graph};

/// Coin that replays a fixed sequence of outcomes. Draws past the end of
/// the script return `false` and mark the run as incomplete.
pub struct ScriptedCoin {
    script: Vec<bool>,
    pos: usize,
    pub overran: bool,
}

impl ScriptedCoin {
    pub fn new(script: Vec<bool>) -> Self {
        ScriptedCoin { script, pos: 0, overran: false }
    }
}

impl Coin for ScriptedCoin {
    fn attempt(&mut self, _from: usize, _to: usize, _pp: f64) -> bool {
        let out = self.script.get(self.pos).copied();
        self.pos += 1;
        out.unwrap_or_else(|| {
            self.overran = true;
            false
        })
    }
}

/// Exact expectation of `run` over every coin-flip history, each flip
/// succeeding with probability `p`. Returns the expectation and the number
/// of complete histories.
pub fn enumerate_coin_flips(
    p: Ratio<i64>,
    mut run: impl FnMut(&mut ScriptedCoin) -> usize,
) -> (Ratio<i64>, usize) {
    let one = Ratio::from_integer(1);
    let mut total = Ratio::from_integer(0);
    let mut outcomes = 0;
    let mut pending = vec![Vec::new()];
    while let Some(script) = pending.pop() {
        let mut coin = ScriptedCoin::new(script.clone());
        let value = run(&mut coin);
        if coin.overran {
            let mut yes = script.clone();
            yes.push(true);
            let mut no = script;
            no.push(false);
            pending.push(yes);
            pending.push(no);
            continue;
        }
        let weight = script.iter().fold(one, |w, &hit| w * if hit { p } else { one - p });
        total += weight * Ratio::from_integer(value as i64);
        outcomes += 1;
    }
    (total, outcomes)
}

/// Random simple graph on `nodes` nodes with at most `max_edges` edges.
pub fn random_small_graph<R: Rng>(rng: &mut R, nodes: usize, max_edges: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> =
        (0..nodes).flat_map(|u| (u + 1..nodes).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let limit = pairs.len().min(max_edges);
    let take = rng.random_range(0..=limit);
    pairs.truncate(take);
    Graph::from_edge_slice(nodes, &pairs)
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, nodes: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..nodes {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.random_range(0..nodes);
        let v = rng.random_range(0..nodes);
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(nodes, &edges).expect("edges in range").0
}

pub fn adjacency_matrix(graph: &Graph) -> DMatrix<f64> {
    let n = graph.node_count();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in graph.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// PageRank by dense power iteration on the Google matrix; isolated nodes
/// spread their mass uniformly.
pub fn dense_pagerank(graph: &Graph, damping: f64) -> Vec<f64> {
    let n = graph.node_count();
    let a = adjacency_matrix(graph);
    let mut google = DMatrix::from_element(n, n, (1.0 - damping) / n as f64);
    for j in 0..n {
        let deg = graph.degree(j) as f64;
        for i in 0..n {
            google[(i, j)] += damping * if deg > 0.0 { a[(i, j)] / deg } else { 1.0 / n as f64 };
        }
    }
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    for _ in 0..100_000 {
        let next = &google * &x;
        let done = (&next - &x).abs().sum() < 1e-15;
        x = next;
        if done {
            break;
        }
    }
    x.iter().copied().collect()
}

/// Principal eigenvector of `A + I` by dense power iteration, unit L2 norm.
pub fn dense_eigenvector(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let m = adjacency_matrix(graph) + DMatrix::identity(n, n);
    let mut x = DVector::from_element(n, 1.0);
    x /= x.norm();
    for _ in 0..1_000_000 {
        let mut next = &m * &x;
        next /= next.norm();
        let done = (&next - &x).norm() < 1e-15;
        x = next;
        if done {
            break;
        }
    }
    x.iter().copied().collect()
}

/// Principal eigenvector of the adjacency matrix from a symmetric
/// eigendecomposition, sign fixed positive, unit L2 norm.
pub fn symmetric_eigenvector(graph: &Graph) -> Vec<f64> {
    let eig = adjacency_matrix(graph).symmetric_eigen();
    let top = eig.eigenvalues.imax();
    let v = eig.eigenvectors.column(top);
    let sign = if v.sum() < 0.0 { -1.0 } else { 1.0 };
    v.iter().map(|x| sign * x).collect()
}

/// Two-sided signed-rank p-value by enumerating all `2^n` sign patterns
/// over midranks of `|d|` (zeros dropped).
pub fn wilcoxon_by_enumeration(differences: &[f64]) -> f64 {
    let nonzero: Vec<f64> = differences.iter().copied().filter(|d| *d != 0.0).collect();
    let n = nonzero.len();
    if n == 0 {
        return 1.0;
    }
    // doubled midranks, by counting strictly smaller and equal magnitudes
    let doubled: Vec<i64> = nonzero
        .iter()
        .map(|d| {
            let less = nonzero.iter().filter(|e| e.abs() < d.abs()).count() as i64;
            let equal = nonzero.iter().filter(|e| e.abs() == d.abs()).count() as i64;
            2 * less + equal + 1
        })
        .collect();
    let observed: i64 = nonzero.iter().zip(&doubled).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let (mut below, mut above) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        let w: i64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| doubled[i]).sum();
        below += u64::from(w <= observed);
        above += u64::from(w >= observed);
    }
    (2.0 * below.min(above) as f64 / (1u64 << n) as f64).min(1.0)
}

/// Median of all Walsh averages by full sort.
pub fn walsh_median(d: &[f64]) -> f64 {
    let mut w = Vec::new();
    for i in 0..d.len() {
        for j in i..d.len() {
            w.push((d[i] + d[j]) / 2.0);
        }
    }
    w.sort_by(f64::total_cmp);
    let m = w.len();
    if m % 2 == 1 {
        w[m / 2]
    } else {
        (w[m / 2 - 1] + w[m / 2]) / 2.0
    }
}

/// Nodes of the connected components that contain any of `seeds`.
pub fn union_of_components(graph: &Graph, seeds: &[usize]) -> usize {
    let mut seen = vec![false; graph.node_count()];
    let mut stack: Vec<usize> = Vec::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    let mut count = stack.len();
    while let Some(u) = stack.pop() {
        for &v in graph.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count
}
