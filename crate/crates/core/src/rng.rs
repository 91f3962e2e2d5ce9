//! Seeded randomness. One user seed fans out into independent ChaCha
//! streams, so every randomized step is reproducible from that seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

/// Stream tags used by the constructions. Distinct tags never share output.
pub mod stream {
    pub const UNIVERSAL: u64 = 1;
    pub const COVERING: u64 = 2;
    pub const BASIS: u64 = 3;
    pub const VERIFY: u64 = 4;
    pub const PEEL: u64 = 5;
}

pub fn stream_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives a child seed for sub-step `index` of stream `stream`.
pub fn child_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut rng = stream_rng(seed, stream);
    rng.set_word_pos(u128::from(index) * 4);
    rng.gen()
}
