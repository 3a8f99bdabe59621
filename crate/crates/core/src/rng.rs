//! Seeded, platform-independent random streams.
//!
//! Every stream is a ChaCha8 generator whose 64-bit seed is derived from the
//! dataset seed and a tuple of stream coordinates by SplitMix64 finalisation:
//!
//! ```text
//! h = seed
//! for each coordinate c: h = splitmix64(h ^ splitmix64(c))
//! ```
//!
//! The per-scene stream is `derive(seed, &[SCENE, scene_id, attempt])`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream tags, so that streams of different purposes never collide.
pub mod tag {
    pub const SCENE: u64 = 0x5343_454e;
    pub const CANDIDATES: u64 = 0x4341_4e44;
    pub const BALANCE: u64 = 0x4241_4c41;
    pub const REALIZE: u64 = 0x5245_414c;
    pub const SPLIT: u64 = 0x5350_4c54;
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, coords: &[u64]) -> u64 {
    coords
        .iter()
        .fold(splitmix64(seed), |h, &c| splitmix64(h ^ splitmix64(c)))
}

pub fn stream(seed: u64, coords: &[u64]) -> Rng {
    Rng::seed_from_u64(derive_seed(seed, coords))
}
