//! Single source of randomness.
//!
//! Every stochastic routine draws from ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`, which expands the 64-bit seed with PCG32
//! (multiplier `6364136223846793005`, increment `11634580027462260723`).
//! ChaCha output is specified independently of platform and word size, so a
//! seed reproduces the same stream everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
