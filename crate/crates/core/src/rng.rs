//! Seeded random streams.
//!
//! Two kinds of randomness are used:
//!
//! - Sequential streams ([`stream`]): a ChaCha8 generator keyed by
//!   `(seed, phase)` with the ChaCha stream id set to a worker or subset index.
//!   Streams with different ids never overlap, so per-subset work can run in
//!   any order.
//! - Counter draws ([`counter_uniform`]): a stateless hash of `(key, counter)`.
//!   Per-row Bernoulli decisions are keyed by the global row index, which makes
//!   sampled candidate sets independent of how rows are sharded.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Phase tags mixed into stream keys so that different pipeline stages never
/// share a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Phase {
    Partition = 1,
    Shard = 2,
    Subset = 3,
    Init = 4,
    Generate = 5,
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for `(seed, phase, index)`.
pub fn stream(seed: u64, phase: Phase, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(phase as u64)));
    rng.set_stream(index);
    rng
}

/// Uniform draw in `[0, 1)` determined only by `(key, counter)`.
#[inline]
pub fn counter_uniform(key: u64, counter: u64) -> f64 {
    let bits = splitmix64(key ^ splitmix64(counter.wrapping_mul(GOLDEN_GAMMA)));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
