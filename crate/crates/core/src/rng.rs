//! Replayable random streams.
//!
//! Every simulation run owns one stream. Its seed is derived from the master
//! seed and the run's coordinates (config, strategy, run), so a grid can be
//! executed in any order or degree of parallelism and still replay exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream type used throughout the crate. ChaCha output is specified
/// independently of platform and crate version.
pub type SimRng = ChaCha8Rng;

/// Fallback master seed when none is given.
pub const DEFAULT_MASTER_SEED: u64 = 0x5eed_2017;

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds a list of coordinates into one 64-bit seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x243f_6a88_85a3_08d3, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// 64-bit FNV-1a, used to turn stream names (strategy labels) into coordinates.
pub fn name_key(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
