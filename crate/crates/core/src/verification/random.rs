use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::sequences::FiniteSequence;

pub const DEFAULT_SEED: u64 = 0x5eed_1d3a;

/// Largest modulus of a generated entry.
pub const MAX_MODULUS: f64 = 10.0;

/// Complex sequence with `A_n = 0` for `n < zero_prefix`, support ending at a
/// uniformly drawn index in `[zero_prefix, max_support]` and entries of
/// modulus at most [`MAX_MODULUS`].
pub fn random_sequence<R: Rng>(
    rng: &mut R,
    bits: u32,
    zero_prefix: usize,
    max_support: usize,
) -> FiniteSequence {
    let last = rng.gen_range(zero_prefix..=max_support.max(zero_prefix));
    let mut values = vec![Complex::zero(bits); zero_prefix];
    for _ in zero_prefix..=last {
        let r = rng.gen_range(0.0..=MAX_MODULUS);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        values.push(Complex::from_f64(bits, r * theta.cos(), r * theta.sin()));
    }
    FiniteSequence::from_values(bits, values)
}

pub fn random_sequences(
    seed: u64,
    count: usize,
    bits: u32,
    zero_prefix: usize,
    max_support: usize,
) -> Vec<FiniteSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_sequence(&mut rng, bits, zero_prefix, max_support))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respects_shape_and_seed() {
        let a = random_sequences(7, 50, 128, 2, 25);
        let b = random_sequences(7, 50, 128, 2, 25);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.values(), y.values());
            assert!(x.support_end() <= 25);
            assert!(x.require_zero_prefix(2).is_ok());
            for z in x.values() {
                assert!(z.abs() <= MAX_MODULUS + 1e-12);
            }
        }
        assert_ne!(
            random_sequences(8, 1, 128, 0, 25)[0].values(),
            a[0].values()
        );
    }
}
