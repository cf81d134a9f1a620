//! Per-sample random streams: sample `i` under seed `s` always draws from
//! ChaCha8 seeded with `s` on stream `i`, whatever the worker layout.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
