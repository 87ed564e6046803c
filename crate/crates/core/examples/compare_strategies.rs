//! Runs every strategy on one configuration and prints mean coverage and
//! duration relative to single-stage seeding.
//!
//! Usage: `cargo run --release --example compare_strategies [-- <pp> <sp>]`

use seqseed::experiment::{desk_strategies, estimate_tsn};
use seqseed::graph::generate_ba;
use seqseed::ranking::rank;
use seqseed::rng::{derive_seed, name_key, rng_from_seed};
use seqseed::strategies::run_strategy;
use seqseed::{seed_count, RankingMethod};

fn main() -> seqseed::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let pp = args.next().unwrap_or(0.1);
    let sp = args.next().unwrap_or(0.05);
    let runs = 500;

    let graph = generate_ba(2000, 2, &mut rng_from_seed(21))?;
    let ranking = rank(&graph, RankingMethod::Degree, &mut rng_from_seed(21));
    let n = seed_count(&graph, sp)?;
    let t_sn = estimate_tsn(&graph, &ranking, n, pp, runs, &mut rng_from_seed(22))?;
    println!("BA(2000,2), degree ranking, pp {pp}, {n} seeds, t_sn {t_sn}, {runs} runs\n");

    let mut baseline = None;
    println!("{:<10} {:>10} {:>8} {:>9} {:>8}", "strategy", "mean C", "mean T", "C / C_SN", "T / T_SN");
    for spec in desk_strategies() {
        let resolved = if spec.needs_t_sn() { spec.with_t_sn(t_sn) } else { spec };
        let (mut c, mut t) = (0usize, 0usize);
        for run in 0..runs {
            let mut rng = rng_from_seed(derive_seed(&[23, name_key(&spec.label()), run as u64]));
            let trace = run_strategy(resolved, &graph, &ranking, n, pp, &mut rng)?;
            c += trace.coverage();
            t += trace.duration();
        }
        let (c, t) = (c as f64 / runs as f64, t as f64 / runs as f64);
        let (c_sn, t_sn_mean) = *baseline.get_or_insert((c, t));
        println!("{:<10} {c:>10.1} {t:>8.2} {:>9.3} {:>8.2}", spec.label(), c / c_sn, t / t_sn_mean);
    }
    Ok(())
}
