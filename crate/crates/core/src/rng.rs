//! Random streams for reproducible searches.
//!
//! Every random choice in a search draws from ChaCha8 keyed by the user seed
//! (expanded with `SeedableRng::seed_from_u64`) with the stream id selecting an
//! independent keystream: stream 0 drives the first stage and stream `k` the
//! `k`-th attempt of the second stage. ChaCha is counter based and platform
//! independent, so a `(seed, stream)` pair pins the whole random sequence no
//! matter how attempts are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SearchRng = ChaCha8Rng;

pub fn stream(seed: u64, id: u64) -> SearchRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}
