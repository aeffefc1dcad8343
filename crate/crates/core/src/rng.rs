//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a 64-bit
//! value obtained by mixing a master seed with a path of integer tags
//! (sweep index, run index, purpose). Streams for distinct paths are
//! independent, so results never depend on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream tags used by the harness.
pub mod tag {
    pub const GRAPH: u64 = 0x0067_7261_7068;
    pub const SOURCE: u64 = 0x736f_7572_6365;
    pub const CASCADE: u64 = 0x0063_6173_6361_6465;
    pub const PROJECTION: u64 = 0x7072_6f6a;
    pub const NULL_SCORES: u64 = 0x6e75_6c6c;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes `tags` into `seed`. Order of tags matters.
pub fn derive(seed: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(splitmix64(seed), |acc, &t| splitmix64(acc ^ splitmix64(t)))
}

pub fn rng_from(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
