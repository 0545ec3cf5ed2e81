//! Counter-based RNG stream derivation.
//!
//! Every random draw in the lab comes from a generator keyed by a master seed
//! plus a short label path (for example `[TRIPLE, pair_index]`), so any item
//! of work can be recomputed in isolation and results never depend on
//! scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Collapses a seed and label path into a single 64-bit sub-seed.
pub fn sub_seed(seed: u64, labels: &[u64]) -> u64 {
    let mut s = mix(seed);
    for &l in labels {
        s = mix(s ^ mix(l));
    }
    mix(s ^ labels.len() as u64)
}

/// ChaCha8 generator keyed by `(seed, labels)`; identical inputs always yield
/// an identical stream.
pub fn stream(seed: u64, labels: &[u64]) -> ChaCha8Rng {
    let s = sub_seed(seed, labels);
    let mut key = [0u8; 32];
    for (i, chunk) in key.chunks_exact_mut(8).enumerate() {
        chunk.copy_from_slice(&mix(s ^ (i as u64).wrapping_mul(GOLDEN)).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
