//! Seeded random streams. Each `(seed, stream)` pair is an independent
//! ChaCha stream, so batched work is reproducible regardless of order.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endomorphism::Matrix;
use crate::scalar::{Gaussian, Scalar};

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Integer entries uniform in `-bound..=bound`.
pub fn integer_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix<Gaussian> {
    Matrix::from_fn(rows, cols, |_, _| Gaussian::int(rng.random_range(-bound..=bound)))
}

pub fn integer_vector<S: Scalar>(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<S> {
    (0..len).map(|_| S::from_i64(rng.random_range(-bound..=bound))).collect()
}
