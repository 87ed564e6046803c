//! Wilcoxon signed-rank test and Hodges–Lehmann shift on paired samples.
//!
//! Usage: `cargo run --example paired_stats`

use seqseed::stats::{hodges_lehmann, wilcoxon_signed_rank, wilcoxon_signed_rank_with, PValueMethod};

fn report(name: &str, d: &[f64]) -> seqseed::Result<()> {
    let w = wilcoxon_signed_rank(d)?;
    println!(
        "{name:<22} n={:<4} W+={:<8} p={:<12.4e} ({}) HL={:.3}",
        w.n_effective,
        w.w_plus,
        w.p_value,
        if w.exact { "exact" } else { "normal" },
        hodges_lehmann(d)?
    );
    Ok(())
}

fn main() -> seqseed::Result<()> {
    report("all positive, n=6", &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])?;
    report("symmetric", &[1.0, -1.0, 2.0, -2.0])?;
    report("ties and zeros", &[0.0, 1.0, 1.0, -1.0, 2.0, 3.0, 0.0, 3.0])?;
    let shifted: Vec<f64> = (0..200).map(|i| ((i * 37 % 101) as f64 - 50.0) / 10.0 + 0.8).collect();
    report("shift +0.8, n=200", &shifted)?;

    let d: Vec<f64> = (0..25).map(|i| ((i * 7919 % 53) as f64 - 20.0) / 7.0).collect();
    let exact = wilcoxon_signed_rank_with(&d, PValueMethod::Exact)?;
    let normal = wilcoxon_signed_rank_with(&d, PValueMethod::Normal)?;
    println!("\nn=25: exact p {:.5}, normal p {:.5}", exact.p_value, normal.p_value);
    Ok(())
}
