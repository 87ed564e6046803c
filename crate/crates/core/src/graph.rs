//! Undirected simple graphs with dense node ids.
//!
//! Node ids are `0..node_count`. Adjacency lists are sorted ascending, which
//! fixes the order in which cascades attempt activations. Every node keeps a
//! label so results can be reported in the vocabulary of the input file.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<String>,
    edge_count: usize,
}

/// What [`Graph::from_edges`] or [`load_edge_list`] threw away.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl Graph {
    /// Builds a graph on `node_count` nodes labelled by their ids.
    ///
    /// Self-loops and repeated edges (in either orientation) are dropped and
    /// counted in the returned report.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<(Self, LoadReport)> {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Self::from_labelled_edges(labels, edges.iter().copied())
    }

    fn from_labelled_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, LoadReport)> {
        let node_count = labels.len();
        if node_count == 0 {
            return Err(Error::param("a graph needs at least one node"));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        let mut report = LoadReport::default();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut half_edges = 0;
        for list in &mut adjacency {
            let before = list.len();
            list.sort_unstable();
            list.dedup();
            report.duplicate_edges += before - list.len();
            half_edges += list.len();
        }
        // every duplicate was counted once from each endpoint
        report.duplicate_edges /= 2;
        let graph = Graph { adjacency, labels, edge_count: half_edges / 2 };
        Ok((graph, report))
    }

    /// Convenience constructor for hand-written test graphs; panics on bad input.
    pub fn from_edge_slice(node_count: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_edges(node_count, edges).expect("valid edge slice").0
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edge_slice(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edge_slice(n, &edges)
    }

    /// Star with node 0 as the center.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edge_slice(leaves + 1, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edge_slice(n, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(v, list)| {
            list.iter().take_while(move |&&u| u < v).map(move |&u| (u, v))
        })
    }

    /// Full scan of the structural invariants: symmetry, no loops, no
    /// duplicates, sorted lists and a consistent edge count.
    pub fn is_consistent(&self) -> bool {
        let n = self.node_count();
        if self.labels.len() != n {
            return false;
        }
        let mut half_edges = 0;
        for (v, list) in self.adjacency.iter().enumerate() {
            half_edges += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u >= n || u == v || self.adjacency[u].binary_search(&v).is_err() {
                    return false;
                }
            }
        }
        half_edges == 2 * self.edge_count
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` and blank lines are skipped. A line with two labels
/// is an edge; a line with a single label declares a (possibly isolated) node.
/// Labels get dense ids in order of first appearance.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadReport)> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |label: &str| -> usize {
        if let Some(&id) = ids.get(label) {
            return id;
        }
        let id = labels.len();
        ids.insert(label.to_owned(), id);
        labels.push(label.to_owned());
        id
    };
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.as_slice() {
            [single] => {
                intern(single);
            }
            [a, b] => {
                let u = intern(a);
                let v = intern(b);
                edges.push((u, v));
            }
            _ => {
                return Err(Error::Parse {
                    line: index + 1,
                    message: format!("expected 1 or 2 labels, found {}", tokens.len()),
                })
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    Graph::from_labelled_edges(labels, edges)
}

/// Writes `graph` in the format read by [`load_edge_list`].
///
/// Output is ordered so that reading it back assigns every node its current
/// id: node `v` is introduced either by its first edge to a lower id or, when
/// it has none, by a single-label declaration line.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes {} edges {}", graph.node_count(), graph.edge_count())?;
    for v in 0..graph.node_count() {
        let lower = graph.neighbors(v).iter().take_while(|&&u| u < v);
        let mut any = false;
        for &u in lower {
            writeln!(out, "{} {}", graph.label(u), graph.label(v))?;
            any = true;
        }
        if !any {
            writeln!(out, "{}", graph.label(v))?;
        }
    }
    Ok(())
}

/// Barabási–Albert preferential attachment.
///
/// Growth starts from a clique on `max(m, 3)` nodes (or on all `n` nodes if
/// fewer); every later node links to `m` distinct existing nodes chosen with
/// probability proportional to degree.
pub fn generate_ba<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || n <= m {
        return Err(Error::param(format!("BA needs n > m >= 1, got n={n}, m={m}")));
    }
    let clique = m.max(3).min(n);
    let mut edges = Vec::with_capacity(clique * clique / 2 + (n - clique) * m);
    // one entry per edge endpoint: uniform picks are degree-proportional
    let mut endpoints = Vec::with_capacity(2 * edges.capacity());
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in clique..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Ok(Graph::from_edges(n, &edges)?.0)
}

/// Erdős–Rényi `G(n, p)`: each unordered pair is an edge independently with
/// probability `p`. Pairs are visited as `(u, v)`, `u < v`, lexicographically.
pub fn generate_er<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability must lie in [0, 1], got {p}")));
    }
    if n == 0 {
        return Err(Error::param("a graph needs at least one node"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?.0)
}

/// Connected components, each sorted ascending, ordered by smallest member.
pub fn components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut members = Vec::new();
        while let Some(u) = stack.pop() {
            members.push(u);
            for &v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Per-node component index matching the order of [`components`].
pub fn component_labels(graph: &Graph) -> Vec<usize> {
    let mut label = vec![0; graph.node_count()];
    for (c, members) in components(graph).iter().enumerate() {
        for &v in members {
            label[v] = c;
        }
    }
    label
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn load(text: &str) -> Result<(Graph, LoadReport)> {
        load_edge_list(text.as_bytes())
    }

    #[test]
    fn loads_path() {
        let (g, report) = load("0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(report, LoadReport::default());
        assert!(g.is_consistent());
    }

    #[test]
    fn drops_duplicates_and_loops() {
        let (g, report) = load("a b\nb a\na a").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.duplicate_edges, 1);
        assert_eq!(report.self_loops, 1);
        assert_eq!(g.label(0), "a");
    }

    #[test]
    fn comments_and_blank_lines() {
        let (g, _) = load("# header\n\n  x y  \n# z w\n").unwrap();
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn malformed_line_names_line_number() {
        match load("0 1\n1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(load(""), Err(Error::EmptyInput)));
        assert!(matches!(load("# only\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn serialization_preserves_ids_and_isolated_nodes() {
        let g = Graph::from_edge_slice(6, &[(0, 4), (4, 2), (1, 2)]);
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let (back, _) = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn ba_edge_count_with_triangle_start() {
        let g = generate_ba(30, 2, &mut rng_from_seed(1)).unwrap();
        assert_eq!(g.node_count(), 30);
        assert_eq!(g.edge_count(), 2 * (30 - 3) + 3);
        assert!(g.is_consistent());
        assert_eq!(components(&g).len(), 1);
    }

    #[test]
    fn ba_parameter_boundary() {
        let g = generate_ba(5, 4, &mut rng_from_seed(1)).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!(generate_ba(4, 4, &mut rng_from_seed(1)).is_err());
        assert!(generate_ba(4, 0, &mut rng_from_seed(1)).is_err());
    }

    #[test]
    fn ba_new_nodes_attach_with_m_edges() {
        let g = generate_ba(200, 3, &mut rng_from_seed(5)).unwrap();
        assert_eq!(g.edge_count(), 3 + 3 * 197);
        // the last node has had no chance to gain further edges
        assert_eq!(g.degree(199), 3);
    }

    #[test]
    fn generators_are_deterministic() {
        let a = generate_ba(100, 2, &mut rng_from_seed(3)).unwrap();
        let b = generate_ba(100, 2, &mut rng_from_seed(3)).unwrap();
        assert_eq!(a, b);
        let c = generate_er(100, 0.05, &mut rng_from_seed(3)).unwrap();
        let d = generate_er(100, 0.05, &mut rng_from_seed(3)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn er_extremes() {
        let empty = generate_er(20, 0.0, &mut rng_from_seed(0)).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(empty.node_count(), 20);
        let full = generate_er(20, 1.0, &mut rng_from_seed(0)).unwrap();
        assert_eq!(full.edge_count(), 190);
        assert!(generate_er(20, 1.5, &mut rng_from_seed(0)).is_err());
        assert!(generate_er(20, -0.1, &mut rng_from_seed(0)).is_err());
    }

    #[test]
    fn er_edge_count_within_four_sigma() {
        let g = generate_er(1000, 0.01, &mut rng_from_seed(11)).unwrap();
        let pairs = 1000.0 * 999.0 / 2.0;
        let mean = pairs * 0.01;
        let sigma = (pairs * 0.01 * 0.99_f64).sqrt();
        assert!((g.edge_count() as f64 - mean).abs() < 4.0 * sigma);
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&Graph::path(3)), vec![vec![0, 1, 2]]);
        assert_eq!(components(&Graph::from_edge_slice(2, &[])), vec![vec![0], vec![1]]);
        let two = Graph::from_edge_slice(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let parts = components(&two);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|c| c.len() == 3));
        assert_eq!(component_labels(&two), vec![0, 0, 0, 1, 1, 1]);
    }
}
