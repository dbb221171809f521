//! Counter-based random streams: every consumer derives its generator from
//! `(seed, domain, index)`, so results do not depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub const DOMAIN_CODEBOOK: u64 = 1;
pub const DOMAIN_TRIAL: u64 = 2;
pub const DOMAIN_LEAKAGE: u64 = 3;
pub const DOMAIN_SEARCH: u64 = 4;

pub fn stream_rng(seed: u64, domain: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((domain << 48) ^ index);
    rng
}
