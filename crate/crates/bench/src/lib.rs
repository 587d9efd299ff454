//! Shared input generators for the kernel benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seqsim_core::bits::BitString;
use seqsim_core::transforms::RealVector;

/// Deterministic random signal of length 2^n.
pub fn random_vector(n: usize, seed: u64) -> RealVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    RealVector::new(values).expect("length is a power of two")
}

/// The all-ones secret: the widest oracle and the deepest circuit for a
/// given register size.
pub fn dense_secret(n: usize) -> BitString {
    BitString::from_integer((1u64 << n) - 1, n).expect("value fits width")
}
