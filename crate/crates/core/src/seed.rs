//! Deterministic sub-seed derivation.
//!
//! Every random draw in this crate flows from a single root seed through
//! [`derive_seed`]: a stream label plus an index are folded into the root
//! with FNV-1a and finished with the SplitMix64 mixer. The scheme is fixed
//! so that identical (seed, label, index) triples produce identical streams
//! on every platform and in every run.
//!
//! All generators are ChaCha8 ([`rand_chacha::ChaCha8Rng`]); no global RNG
//! state is ever consulted.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derive a child seed from `root` for the stream named `label` at `index`.
pub fn derive_seed(root: u64, label: &str, index: u64) -> u64 {
    let mut h = FNV_OFFSET ^ root;
    for byte in label.bytes() {
        h = (h ^ u64::from(byte)).wrapping_mul(FNV_PRIME);
    }
    h = (h ^ index).wrapping_mul(FNV_PRIME);
    splitmix64(h)
}

/// ChaCha8 generator seeded by [`derive_seed`].
pub fn derived_rng(root: u64, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(root, label, index))
}

/// In-place Fisher-Yates shuffle.
///
/// Spelled out (rather than delegating to `SliceRandom::shuffle`) so the
/// permutation is pinned to this exact sequence of `gen_range` draws.
pub fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    use rand::Rng;
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}

/// A seeded random permutation of `0..n`.
pub fn permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    shuffle(&mut order, rng);
    order
}
