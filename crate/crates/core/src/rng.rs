//! Seeded, counter-addressable random streams.
//!
//! Stream `i` of seed `s` is independent of every other stream and of the
//! thread that draws it, so parallel loops reproduce sequential results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::PrimeField;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform vector in F_p^n.
pub fn random_vector(rng: &mut impl Rng, fp: &PrimeField, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..fp.modulus())).collect()
}

/// Uniform nonzero vector in F_p^n.
pub fn random_nonzero_vector(rng: &mut impl Rng, fp: &PrimeField, n: usize) -> Vec<u32> {
    loop {
        let v = random_vector(rng, fp, n);
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Nonzero integer in `[-bound, bound]`.
pub fn small_nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}
