//! Deterministic random streams.
//!
//! Every run of every optimizer owns exactly one [`RunRng`]. Streams are
//! keyed by `(master_seed, run_index)` through the ChaCha stream counter,
//! so runs launched in parallel never share generator state and replaying
//! the same pair reproduces the same draw sequence bit for bit.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// An owned, reproducible random stream for a single run.
#[derive(Clone, Debug)]
pub struct RunRng {
    inner: ChaCha8Rng,
}

/// Creates the stream for `(master_seed, run_index)`.
///
/// Identical pairs yield identical streams; distinct `run_index` values
/// select distinct ChaCha streams with no shared state by construction.
pub fn rng_stream(master_seed: u64, run_index: u64) -> RunRng {
    let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
    inner.set_stream(run_index);
    RunRng { inner }
}

/// Folds a label path into a master seed, for deriving independent
/// sub-seeds per (problem, algorithm, task) without stream collisions.
pub fn derive_seed(master_seed: u64, labels: &[u64]) -> u64 {
    let mut state = splitmix64(master_seed);
    for &label in labels {
        state = splitmix64(state ^ splitmix64(label));
    }
    state
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RunRng {
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform index in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below() requires a nonempty range");
        let n = n as u64;
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < limit {
                return (x % n) as usize;
            }
        }
    }

    /// One standard-normal draw (Box-Muller, cosine branch).
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64(); // (0, 1], keeps ln finite
        let u2 = self.next_f64();
        crate::math::sqrt(-2.0 * crate::math::ln(u1))
            * crate::math::cos(2.0 * core::f64::consts::PI * u2)
    }
}
