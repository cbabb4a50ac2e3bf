//! Reproducible random-number streams.
//!
//! All stochastic components draw from ChaCha12 generators derived from a
//! single master seed. The split function is `stream_rng`: the master seed
//! keys the cipher and the worker index selects the ChaCha stream, so any
//! number of workers get statistically independent, reproducible streams
//! regardless of scheduling order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Stream 0 for the given master seed.
pub fn master_rng(seed: u64) -> ChaCha12Rng {
    stream_rng(seed, 0)
}

/// The documented split function: seed selects the key, `stream` selects
/// an independent ChaCha stream (used for per-path and per-repetition
/// generators).
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
