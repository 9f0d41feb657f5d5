//! Counter-style seed derivation. Every random quantity of a trial is a pure
//! function of `(base_seed, grid index, trial index, stream)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random streams within one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Entries = 1,
    Signal = 2,
    Noise = 3,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of trial `trial` at grid point `grid`.
pub fn derive_seed(base_seed: u64, grid: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base_seed) ^ grid) ^ trial.rotate_left(32))
}

/// Generator for one stream of a trial.
pub fn stream_rng(trial_seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    rng.set_stream(stream as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn seeds_are_distinct_and_stable() {
        let mut seen = std::collections::HashSet::new();
        for g in 0..20 {
            for t in 0..50 {
                assert!(seen.insert(derive_seed(7, g, t)));
            }
        }
        assert_eq!(derive_seed(7, 3, 4), derive_seed(7, 3, 4));
        assert_ne!(derive_seed(7, 3, 4), derive_seed(8, 3, 4));
        assert_ne!(derive_seed(7, 3, 4), derive_seed(7, 4, 3));
    }

    #[test]
    fn streams_differ() {
        let a: u64 = stream_rng(1, Stream::Entries).random();
        let b: u64 = stream_rng(1, Stream::Signal).random();
        let c: u64 = stream_rng(1, Stream::Signal).random();
        assert_ne!(a, b);
        assert_eq!(b, c);
    }
}
