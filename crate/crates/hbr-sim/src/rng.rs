//! Deterministic random number generation.
//!
//! Every random decision in the simulator is drawn from a ChaCha8 stream whose
//! seed is derived from a single master seed plus a tag path, so results are
//! reproducible bit-for-bit across platforms and across any degree of
//! parallelism:
//!
//! ```text
//! master seed ── derive(master, [GEN,    density_idx, network_idx, attempt]) → network placement
//!            └── derive(master, [ROUTES, density_idx, network_idx])          → route endpoints
//! ```
//!
//! `derive` folds each tag into the state with the SplitMix64 finalizer, which
//! mixes well enough that sibling streams are statistically independent.
//! Uniform floats are produced by the standard 53-bit mantissa construction so
//! the byte-level output never depends on library internals.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Tag for network-generation streams.
pub const STREAM_GENERATE: u64 = 1;
/// Tag for route-endpoint sampling streams.
pub const STREAM_ROUTES: u64 = 2;
/// Tag for synthetic mask construction.
pub const STREAM_MASK: u64 = 3;

/// SplitMix64 finalizer; full-period bijection on u64.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `master` and a tag path.
pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(master);
    for &t in tags {
        state = splitmix64(state ^ splitmix64(t));
    }
    state
}

/// A seeded ChaCha8 stream for one purpose.
pub fn stream(master: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, tags))
}

/// Uniform f64 in [0, 1) with 53 random mantissa bits.
pub fn next_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in [0, bound) by rejection sampling (no modulo bias).
pub fn next_index(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    assert!(bound > 0, "next_index: empty range");
    let bound = bound as u64;
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return (v % bound) as usize;
        }
    }
}
