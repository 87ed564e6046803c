//! Sequential seeding for influence maximization.
//!
//! The crate simulates Independent Cascade diffusion on undirected graphs and
//! compares the classic single-stage seeding (`SN`) with five sequential
//! strategies that spend the same seed budget over several stages:
//!
//! | label       | stages                         | next stage fires             |
//! |-------------|--------------------------------|------------------------------|
//! | `SQ_kPS`    | `ceil(n / k)` of `k` seeds     | every diffusion step         |
//! | `SQ_kPS_R`  | `ceil(n / k)` of `k` seeds     | when diffusion stops         |
//! | `SQ_kPS_B`  | scheduled list, `k` per step   | every step, buffer on stop   |
//! | `SQ_TSN`    | `min(n, T_SN)`                 | every diffusion step         |
//! | `SQ_TSN_R`  | `min(n, T_SN)`                 | when diffusion stops         |
//!
//! Module map:
//!
//! - [`graph`]: graph type, edge-list IO, Barabási–Albert / Erdős–Rényi generators.
//! - [`ranking`]: random, degree, second-level degree, PageRank and eigenvector rankings.
//! - [`diffusion`]: the cascade engine and an exact expected-coverage oracle.
//! - [`strategies`]: the six seeding strategies.
//! - [`experiment`]: replicated parameter grids, run records and summaries.
//! - [`stats`]: Wilcoxon signed-rank test and Hodges–Lehmann shift.
//! - [`io`]: CSV/JSON formats and the subcommand implementations behind the `seqseed` binary.
//! - [`rng`]: seed derivation for replayable random streams.

pub mod cli;
pub mod diffusion;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod ranking;
pub mod rng;
pub mod stats;
pub mod strategies;

pub use diffusion::{Coin, DiffusionState, DiffusionTrace, TraceEntry};
pub use error::{Error, Result};
pub use experiment::{GridSpec, RunRecord};
pub use graph::Graph;
pub use ranking::{Ranking, RankingMethod};
pub use strategies::{seed_count, StrategySpec};
