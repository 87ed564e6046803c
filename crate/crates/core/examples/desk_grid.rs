//! Runs the laptop-sized grid and prints the strategy comparison.
//!
//! Usage: `cargo run --release --example desk_grid [-- <replications> [out_dir]]`
//!
//! With `out_dir`, records.csv and the summary tables are written there.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use seqseed::experiment::{run_grid, summarize, BASELINE};
use seqseed::io::{self, fmt_sig6};
use seqseed::rng::DEFAULT_MASTER_SEED;
use seqseed::GridSpec;

fn main() -> seqseed::Result<()> {
    let mut args = std::env::args().skip(1);
    let replications = args.next().map_or(100, |s| s.parse().expect("replications must be an integer"));
    let out_dir = args.next().map(PathBuf::from);

    let spec = GridSpec::desk(replications, DEFAULT_MASTER_SEED)?;
    println!("{} configs x {} strategies x {replications} runs", spec.config_count(), spec.strategies.len());
    let started = Instant::now();
    let output = run_grid(&spec)?;
    println!("grid finished in {:.1}s", started.elapsed().as_secs_f64());
    for (config_id, reason) in &output.failures {
        eprintln!("config {config_id} aborted: {reason}");
    }
    let summary = summarize(&output.records)?;

    println!("\n{:<10} {:>8} {:>10} {:>10} {:>10} {:>12}", "strategy", "wins", "C gain %", "T ratio", "HL", "p");
    for c in &summary.versus_sn {
        println!(
            "{:<10} {:>8} {:>10} {:>10} {:>10} {:>12}",
            c.strategy,
            fmt_sig6(c.win_fraction),
            fmt_sig6(c.coverage_increase_pct),
            c.duration_ratio.map_or("-".into(), fmt_sig6),
            fmt_sig6(c.hl_delta),
            fmt_sig6(c.wilcoxon_p),
        );
    }

    println!("\nmean SQ_1PS_R gain over {BASELINE} by pp:");
    for &pp in &spec.pp_values {
        let gains: Vec<f64> = summary
            .configs
            .iter()
            .filter(|c| c.pp == pp)
            .filter_map(|c| summary.stats(c.config_id, "SQ_1PS_R"))
            .map(|s| 100.0 * (s.coverage_ratio - 1.0))
            .collect();
        println!("  pp {pp:<5} {:>8} %", fmt_sig6(gains.iter().sum::<f64>() / gains.len() as f64));
    }

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir)?;
        io::write_records(&output.records, BufWriter::new(File::create(dir.join(io::RECORDS_FILE))?))?;
        io::write_config_summary(&summary, BufWriter::new(File::create(dir.join(io::CONFIG_SUMMARY_FILE))?))?;
        io::write_ratios(&summary, BufWriter::new(File::create(dir.join(io::RATIOS_FILE))?))?;
        io::write_comparison_table(&summary, BufWriter::new(File::create(dir.join(io::TABLE_FILE))?))?;
        println!("\nwrote {}", dir.display());
    }
    Ok(())
}
