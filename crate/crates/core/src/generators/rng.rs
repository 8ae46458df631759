//! Seeding conventions.
//!
//! Every generator draws from a ChaCha8 stream (`rand_chacha`) seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`. Independent sub-streams are obtained by
//! hashing a parent seed with a label through [`derive_seed`], a SplitMix64
//! fold, so adding a new consumer never shifts the draws of existing ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GenRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `parts` into `base`: `h = mix64(h ^ part)` for each part in order.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(base), |h, &p| mix64(h ^ p))
}

/// 64-bit FNV-1a of a label, for use as a [`derive_seed`] part.
pub fn label_hash(label: &str) -> u64 {
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}
