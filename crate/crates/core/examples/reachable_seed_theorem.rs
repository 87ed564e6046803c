//! Exact expected coverage of single-stage and revival seeding on two tiny
//! graphs, by enumerating every live-edge outcome.
//!
//! On the path a-b-c with ranking [a, c, b] and two seeds, both processes
//! have the same expectation 2 + 2p - p^2. Adding an isolated node d to the
//! end of the ranking lets the revival process spend its second seed on d
//! whenever a's cascade has already covered c, which lifts it to 2 + 2p.
//!
//! Usage: `cargo run --example reachable_seed_theorem`

use seqseed::diffusion::LiveEdges;
use seqseed::strategies::{run_sn, run_sq_kps_r};
use seqseed::{Graph, Ranking, RankingMethod};

/// Expected coverage of `run` over all live-edge subsets.
fn expectation(graph: &Graph, pp: f64, run: impl Fn(&mut LiveEdges) -> usize) -> f64 {
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut total = 0.0;
    for mask in 0u32..1 << edges.len() {
        let live: Vec<(usize, usize)> =
            edges.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
        let weight = pp.powi(live.len() as i32) * (1.0 - pp).powi((edges.len() - live.len()) as i32);
        total += weight * run(&mut LiveEdges::new(live)) as f64;
    }
    total
}

fn compare(name: &str, graph: &Graph, order: Vec<usize>) -> seqseed::Result<()> {
    let ranking = Ranking::from_order(RankingMethod::Degree, order);
    println!("{name}");
    for pp in [0.25, 0.5, 0.75] {
        let sn = expectation(graph, pp, |c| run_sn(graph, &ranking, 2, pp, c).unwrap().coverage());
        let seq = expectation(graph, pp, |c| run_sq_kps_r(graph, &ranking, 2, 1, pp, c).unwrap().coverage());
        println!("  pp {pp:<5} SN {sn:.4}  revival {seq:.4}  difference {:+.4}", seq - sn);
    }
    Ok(())
}

fn main() -> seqseed::Result<()> {
    compare("path a-b-c, ranking [a, c, b]", &Graph::path(3), vec![0, 2, 1])?;
    compare(
        "path a-b-c plus isolated d, ranking [a, c, b, d]",
        &Graph::from_edge_slice(4, &[(0, 1), (1, 2)]),
        vec![0, 2, 1, 3],
    )?;
    Ok(())
}
