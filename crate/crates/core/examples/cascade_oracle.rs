//! Compares Monte Carlo cascades with the exact live-edge expectation on a
//! small graph.
//!
//! Usage: `cargo run --release --example cascade_oracle`

use seqseed::diffusion::expected_coverage_exact;
use seqseed::rng::rng_from_seed;
use seqseed::{DiffusionState, Graph};

fn main() -> seqseed::Result<()> {
    // a 3x3 grid, seeded in one corner
    let mut edges = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            let v = 3 * r + c;
            if c < 2 {
                edges.push((v, v + 1));
            }
            if r < 2 {
                edges.push((v, v + 3));
            }
        }
    }
    let graph = Graph::from_edge_slice(9, &edges);
    let seeds = [0];
    let runs = 200_000;
    let mut rng = rng_from_seed(11);

    println!("{:>5} {:>10} {:>10} {:>8} {:>6}", "pp", "exact", "simulated", "se", "z");
    for pp in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let exact = expected_coverage_exact(&graph, &seeds, pp)?;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..runs {
            let mut state = DiffusionState::new(graph.node_count());
            state.activate_seeds(&seeds)?;
            state.run_until_stop(&graph, pp, &mut rng);
            let c = state.coverage() as f64;
            sum += c;
            sum_sq += c * c;
        }
        let mean = sum / runs as f64;
        let se = ((sum_sq / runs as f64 - mean * mean) / runs as f64).sqrt();
        println!("{pp:>5} {exact:>10.5} {mean:>10.5} {se:>8.5} {:>6.2}", (mean - exact) / se);
    }
    Ok(())
}
