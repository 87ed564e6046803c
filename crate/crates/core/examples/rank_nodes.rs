//! Ranks a scale-free graph with every method and shows how much the top
//! of each ranking overlaps with degree order.
//!
//! Usage: `cargo run --example rank_nodes [-- <edge_list>]`

use std::collections::HashSet;
use std::path::Path;

use seqseed::graph::generate_ba;
use seqseed::io::{fmt_sig6, read_graph};
use seqseed::ranking::{pagerank_scores, rank, PageRankParams};
use seqseed::rng::rng_from_seed;
use seqseed::RankingMethod;

fn main() -> seqseed::Result<()> {
    let graph = match std::env::args().nth(1) {
        Some(path) => read_graph(Path::new(&path))?.0,
        None => generate_ba(500, 2, &mut rng_from_seed(3))?,
    };
    let top = 10;
    let degree_top: HashSet<usize> =
        rank(&graph, RankingMethod::Degree, &mut rng_from_seed(0)).order[..top].iter().copied().collect();

    for method in RankingMethod::ALL {
        let r = rank(&graph, method, &mut rng_from_seed(0));
        let labels: Vec<&str> = r.order[..top].iter().map(|&v| graph.label(v)).collect();
        let shared = r.order[..top].iter().filter(|v| degree_top.contains(v)).count();
        println!("{:<3} top {top}: {:<50} shared with D: {shared}", method.tag(), labels.join(" "));
    }

    let pr = pagerank_scores(&graph, PageRankParams::default());
    println!(
        "\nPageRank converged: {} after {} iterations; score sum {}",
        pr.converged,
        pr.iterations,
        fmt_sig6(pr.scores.iter().sum())
    );
    Ok(())
}
