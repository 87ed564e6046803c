//! Generates a Barabási–Albert and an Erdős–Rényi graph, prints basic
//! statistics and writes both as edge lists.
//!
//! Usage: `cargo run --example generate_graphs [-- <out_dir>]`

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use seqseed::graph::{components, generate_ba, generate_er, write_edge_list};
use seqseed::rng::rng_from_seed;
use seqseed::Graph;

fn describe(name: &str, g: &Graph) {
    let max_degree = (0..g.node_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    let parts = components(g);
    let largest = parts.iter().map(Vec::len).max().unwrap_or(0);
    println!(
        "{name:<16} nodes {:>5}  edges {:>5}  mean degree {:.2}  max degree {max_degree:>3}  components {:>3} (largest {largest})",
        g.node_count(),
        g.edge_count(),
        2.0 * g.edge_count() as f64 / g.node_count() as f64,
        parts.len(),
    );
}

fn main() -> seqseed::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    let ba = generate_ba(1000, 3, &mut rng_from_seed(1))?;
    let er = generate_er(1000, 0.006, &mut rng_from_seed(2))?;
    describe("BA(1000,3)", &ba);
    describe("ER(1000,0.006)", &er);

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir)?;
        write_edge_list(&ba, BufWriter::new(File::create(dir.join("ba.txt"))?))?;
        write_edge_list(&er, BufWriter::new(File::create(dir.join("er.txt"))?))?;
        println!("wrote {}/ba.txt and er.txt", dir.display());
    }
    Ok(())
}
