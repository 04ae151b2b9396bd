//! Fixtures shared by the benchmarks.

use ksnake_core::kesten::KestenSampler;
use ksnake_core::{derive_stream, OffspringLaw, RngStream};

pub const SEED: u64 = 0x5eed;

pub fn geometric() -> KestenSampler {
    KestenSampler::new(OffspringLaw::geometric_half())
}

pub fn poisson() -> KestenSampler {
    KestenSampler::new(OffspringLaw::poisson_one())
}

/// Independent stream for benchmark iteration `i`.
pub fn stream(i: u64) -> RngStream {
    derive_stream(SEED, &[i])
}
