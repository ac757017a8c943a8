//! Reproducible random-number streams.
//!
//! Every source of randomness in the crate is keyed by a `(seed, stream)`
//! pair; distinct streams of the same seed are independent, so replications
//! and tie-break draws can run in any order without affecting each other.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// A counter-based RNG key: identical `(seed, stream)` pairs reproduce
/// identical draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Derived key for a sub-stream (e.g. one replication of a benchmark).
    pub fn substream(&self, offset: u64) -> Self {
        Self { seed: self.seed, stream: self.stream.wrapping_add(offset) }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

impl Default for RngSeed {
    fn default() -> Self {
        Self { seed: 0, stream: 0 }
    }
}
