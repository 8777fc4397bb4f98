//! Named RNG sub-streams.  Each generated component (genotypes, main
//! effects, interaction strengths, noise, column selection) draws from its
//! own ChaCha stream of the shared seed, so overriding one component never
//! shifts the draws of another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const STREAM_GENOTYPES: u64 = 1;
pub(crate) const STREAM_BETAS: u64 = 2;
pub(crate) const STREAM_GAMMAS: u64 = 3;
pub(crate) const STREAM_NOISE: u64 = 4;
pub(crate) const STREAM_SELECTION: u64 = 5;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
