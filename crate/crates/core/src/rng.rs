//! Seeded, platform-stable randomness.
//!
//! Every sampler takes a [`RandomSource`], a `(seed, stream)` pair. The pair is
//! mixed into a single 64-bit key with SplitMix64:
//!
//! ```text
//! key = splitmix64(seed ^ splitmix64(stream ^ 0x9E37_79B9_7F4A_7C15))
//! ```
//!
//! and the key seeds a ChaCha8 generator (`rand_chacha::ChaCha8Rng`) through
//! `SeedableRng::seed_from_u64`. ChaCha output is specified bit-for-bit and is
//! independent of platform endianness and word size.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomSource {
    pub seed: u64,
    pub stream: u64,
}

pub const fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl RandomSource {
    pub const fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub const fn from_seed(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    /// Child source for a sub-task; derived streams never collide with the
    /// parent's own stream for distinct `index` values.
    pub fn derive(&self, index: u64) -> Self {
        Self {
            seed: splitmix64(self.seed ^ splitmix64(self.stream)),
            stream: index,
        }
    }

    pub fn key(&self) -> u64 {
        splitmix64(self.seed ^ splitmix64(self.stream ^ 0x9E37_79B9_7F4A_7C15))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.key())
    }
}

/// Uniform integer in `[0, bound)` drawn by rejection on random words.
pub fn uniform_biguint<R: RngCore + ?Sized>(
    rng: &mut R,
    bound: &num_bigint::BigUint,
) -> num_bigint::BigUint {
    use num_traits::Zero;
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let excess = (words as u64) * 32 - bits;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(top) = digits.last_mut() {
            *top >>= excess;
        }
        let candidate = num_bigint::BigUint::new(digits);
        if &candidate < bound {
            return candidate;
        }
    }
}
