//! Reproducible, order-independent random streams.
//!
//! All sampling in this crate is indexed: task `k` derives its generator from
//! `(seed, stream base + k)` alone, so a loop can run serially, in parallel,
//! or partially re-run, and sample `k` is always the same draw. ChaCha12's
//! 64-bit stream counter provides the substreams.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Stream base for unitary-orbit samples (2×2 conjugations).
pub const ORBIT_STREAM: u64 = 0;
/// Stream base for Haar cloud samples (order-n unitaries).
pub const CLOUD_STREAM: u64 = 1 << 40;
/// Stream base for random test-pair generation.
pub const PAIR_STREAM: u64 = 1 << 41;

/// A seed together with a scheme for deriving independent per-task generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedPlan {
    seed: u64,
}

impl SeedPlan {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Generator for task `index` within the substream family `base`.
    ///
    /// Distinct `(base, index)` pairs yield statistically independent streams;
    /// the same pair always yields the same stream regardless of how many
    /// other tasks ran before it.
    pub fn rng_for(&self, base: u64, index: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(base.wrapping_add(index));
        rng
    }
}

impl Default for SeedPlan {
    fn default() -> Self {
        Self::new(42)
    }
}
