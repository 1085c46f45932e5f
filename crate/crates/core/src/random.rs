//! Seeded random matrices for tests, restarts and demos.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::qr::qr;
use crate::matrix::Matrix;
use crate::scalar::{cx, Real};

/// Deterministic generator; the same seed gives the same stream on every
/// platform.
#[derive(Clone, Debug)]
pub struct Seeded(ChaCha8Rng);

impl Seeded {
    pub fn new(seed: u64) -> Self {
        Seeded(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn normal<T: Real>(&mut self) -> T {
        let x: f64 = StandardNormal.sample(&mut self.0);
        T::lit(x)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform<T: Real>(&mut self, lo: f64, hi: f64) -> T {
        T::lit(self.0.random_range(lo..hi))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.random()
    }
}

/// Entries with independent standard normal real and imaginary parts.
pub fn gaussian<T: Real>(rng: &mut Seeded, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| cx(rng.normal(), rng.normal()))
}

/// Haar-distributed unitary (QR of a Gaussian matrix with the phases of
/// `R`'s diagonal absorbed).
pub fn random_unitary<T: Real>(rng: &mut Seeded, n: usize) -> Matrix<T> {
    let g = gaussian::<T>(rng, n, n);
    qr(&g).expect("finite gaussian matrix").q
}

/// Random Hermitian matrix `(G + G*) / 2`.
pub fn random_hermitian<T: Real>(rng: &mut Seeded, n: usize) -> Matrix<T> {
    gaussian::<T>(rng, n, n).hermitian_part()
}

/// `U diag(eigs) U*` for a random unitary `U`.
pub fn random_normal<T: Real>(rng: &mut Seeded, eigs: &[crate::scalar::Cx<T>]) -> Matrix<T> {
    let u = random_unitary::<T>(rng, eigs.len());
    &(&u * &Matrix::from_diag(eigs)) * &u.adjoint()
}
