//! Seeded random initial conditions.
//!
//! Values are dyadic rationals `j / 2^16` with `j` uniform on
//! `-65535..=65535` minus zero, i.e. uniform on the grid of `(-1, 1)`
//! without the origin. They are exact in both backends. The generator is
//! ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`]; independent
//! streams (one per figure panel, say) come from `set_stream`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Rational;

/// Seed used when neither `--seed` nor `RDE_LAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_170_601;

pub const DYADIC_BITS: u32 = 16;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn dyadic_value<R: Rng>(rng: &mut R) -> Rational {
    let bound = (1i64 << DYADIC_BITS) - 1;
    loop {
        let j = rng.gen_range(-bound..=bound);
        if j != 0 {
            return Rational::ratio(j, 1 << DYADIC_BITS).expect("nonzero denominator");
        }
    }
}

/// `k + 1` values for a window `x_{-k}, ..., x_0`.
pub fn random_window<R: Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    (0..=k).map(|_| dyadic_value(rng)).collect()
}
