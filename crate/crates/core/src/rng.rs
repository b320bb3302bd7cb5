//! Seeded randomness for sampler runs.
//!
//! The generator is ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`). A seed
//! is expanded with `SeedableRng::seed_from_u64`; independent replications
//! of one experiment use the same seed on distinct ChaCha streams
//! (`set_stream(run_index)`). Floats are drawn with 53 bits of precision in
//! `[0, 1)` and bounded integers by rejection, so both are exactly uniform.
//!
//! There is no way to rewind or replay a `RandomSource`: every draw is
//! consumed once.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::for_run(seed, 0)
    }

    /// Source for replication `stream` of an experiment seeded with `seed`.
    pub fn for_run(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform draw from `{0, ..., k - 1}`. Panics if `k == 0`.
    pub fn uniform_int(&mut self, k: usize) -> usize {
        self.rng.random_range(0..k)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}
