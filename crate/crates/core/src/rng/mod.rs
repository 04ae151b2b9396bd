//! Reproducible random streams and offspring-law samplers.

mod offspring;
mod stream;

pub use offspring::{LawKind, OffspringLaw, MAX_TABLE_LEN, TAIL_MASS};
pub use stream::{derive_stream, RngStream};

/// Sample one offspring count.
pub fn sample_offspring(law: &OffspringLaw, rng: &mut RngStream) -> u64 {
    law.sample(rng)
}

/// Sample from the size-biased law `k P(k)`.
pub fn sample_size_biased(law: &OffspringLaw, rng: &mut RngStream) -> u64 {
    law.sample_size_biased(rng)
}
