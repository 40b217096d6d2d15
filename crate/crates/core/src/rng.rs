//! Seeded random number generation.
//!
//! Every randomized routine in the crate draws from ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`. ChaCha8 output is platform independent, so a
//! given seed yields bit-identical splits, graphs and detector runs everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
