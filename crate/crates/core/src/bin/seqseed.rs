use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::Rng;

use seqseed::cli::{self, GeneratorKind, SimulateArgs};
use seqseed::io::fmt_sig6;
use seqseed::rng::DEFAULT_MASTER_SEED;
use seqseed::{RankingMethod, StrategySpec};

#[derive(Parser)]
#[command(name = "seqseed", version, about = "Sequential seeding experiments on Independent Cascade diffusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeedArgs {
    /// Master seed of every random stream.
    #[arg(long, default_value_t = DEFAULT_MASTER_SEED, conflicts_with = "entropy")]
    seed: u64,
    /// Draw the master seed from the OS instead (it is reported on stderr).
    #[arg(long)]
    entropy: bool,
}

impl SeedArgs {
    fn resolve(&self) -> u64 {
        if self.entropy {
            let seed = rand::rng().random();
            eprintln!("seed: {seed}");
            seed
        } else {
            self.seed
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph as an edge list.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Rank the nodes of a graph.
    Rank {
        #[arg(long)]
        graph: PathBuf,
        /// R, D, D2, PR or EV.
        #[arg(long)]
        method: RankingMethod,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one configuration repeatedly and write its traces.
    Simulate {
        #[arg(long)]
        graph: PathBuf,
        /// SN, SQ_kPS, SQ_kPS_R, SQ_kPS_B, SQ_TSN, SQ_TSN_R (or a concrete label such as SQ_2PS_R).
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "t-sn")]
        t_sn: Option<usize>,
        #[arg(long)]
        ranking: RankingMethod,
        /// Seed budget as a fraction of the node count.
        #[arg(long)]
        sp: f64,
        /// Propagation probability.
        #[arg(long)]
        pp: f64,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
    },
    /// Run a grid config and write records.csv.
    Grid {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
        /// Worker threads.
        #[arg(long, env = "SEQSEED_JOBS")]
        jobs: Option<usize>,
        /// Override the config's master seed.
        #[arg(long, conflicts_with = "entropy")]
        seed: Option<u64>,
        #[arg(long)]
        entropy: bool,
    },
    /// Summarize a records.csv into comparison tables.
    Summarize {
        #[arg(long)]
        records: PathBuf,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Barabási–Albert preferential attachment.
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_strategy(name: &str, k: Option<usize>, t_sn: Option<usize>) -> seqseed::Result<StrategySpec> {
    if name.contains("kPS") || name == "SN" || name.starts_with("SQ_TSN") {
        StrategySpec::from_parts(name, k, t_sn)
    } else if k.is_some() || t_sn.is_some() {
        Err(seqseed::Error::Parameter(format!("{name} already fixes its parameters")))
    } else {
        name.parse()
    }
}

fn run(cli: Cli) -> seqseed::Result<bool> {
    match cli.command {
        Command::Gen { kind } => {
            let (kind, seed, out) = match kind {
                GenKind::Ba { n, m, seed, out } => (GeneratorKind::Ba { n, m }, seed, out),
                GenKind::Er { n, p, seed, out } => (GeneratorKind::Er { n, p }, seed, out),
            };
            let counts = cli::cmd_gen(kind, seed.resolve(), out.as_deref())?;
            let line = format!("nodes {} edges {}", counts.nodes, counts.edges);
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
        }
        Command::Rank { graph, method, seed, out } => {
            cli::cmd_rank(&graph, method, seed.resolve(), out.as_deref())?;
        }
        Command::Simulate { graph, strategy, k, t_sn, ranking, sp, pp, runs, seed, out_dir } => {
            let args = SimulateArgs {
                graph,
                strategy: parse_strategy(&strategy, k, t_sn)?,
                ranking,
                sp,
                pp,
                runs,
                seed: seed.resolve(),
                out_dir,
            };
            let report = cli::cmd_simulate(&args)?;
            println!("strategy {}", args.strategy.label());
            println!("nodes {} seeds {}", report.nodes, report.seeds);
            if let Some(t) = report.derived_t_sn {
                println!("derived t_sn {t}");
            }
            println!("mean coverage {}", fmt_sig6(report.mean_coverage));
            println!("mean duration {}", fmt_sig6(report.mean_duration));
        }
        Command::Grid { config, out_dir, jobs, seed, entropy } => {
            let seed = if entropy { Some(SeedArgs { seed: 0, entropy: true }.resolve()) } else { seed };
            let report = cli::cmd_grid(&config, &out_dir, jobs, seed)?;
            println!("configs {} records {}", report.configs, report.records);
            for (config_id, reason) in &report.failures {
                eprintln!("config {config_id} aborted: {reason}");
            }
            return Ok(report.failures.is_empty());
        }
        Command::Summarize { records, out_dir } => {
            let configs = cli::cmd_summarize(&records, &out_dir)?;
            println!("configs {configs}");
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
