//! Seeded randomness.
//!
//! Every random choice in the crate is drawn from a [`ChaCha8Rng`] seeded via
//! `SeedableRng::seed_from_u64`. Both are specified algorithms, so a seed gives
//! bit-identical output on every platform. Child streams are derived with
//! [`split_seed`], a SplitMix64 mix of the parent seed and a stream index.
//!
//! Integer draws go through [`below`], which samples from `u64` rather than
//! `usize` so that 32- and 64-bit targets agree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of child stream `index` of `seed`.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(0xD1B5_4A32_D192_ED03)))
}

/// Uniform integer in `0..bound`. `bound` must be positive.
pub fn below(rng: &mut SeededRng, bound: usize) -> usize {
    debug_assert!(bound > 0);
    rng.gen_range(0..bound as u64) as usize
}

/// Fisher-Yates shuffle driven by [`below`].
pub fn shuffle<T>(rng: &mut SeededRng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}

/// `count` distinct indices from `0..len`, in draw order.
pub fn sample_indices(rng: &mut SeededRng, len: usize, count: usize) -> Vec<usize> {
    assert!(count <= len);
    let mut pool: Vec<usize> = (0..len).collect();
    for i in 0..count {
        let j = i + below(rng, len - i);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}
