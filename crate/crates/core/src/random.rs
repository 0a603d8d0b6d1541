//! Seeded randomness and Haar-distributed unitaries.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{inner, norm, ComplexMatrix, C64};

/// Deterministic random stream. Identical `(seed, stream)` pairs reproduce
/// identical draws on every platform.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent sub-stream `index` of `seed`, for parallel workers.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn gaussian(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.gaussian() * s, self.gaussian() * s)
    }

    pub fn uniform(&mut self) -> f64 {
        rand::Rng::random::<f64>(&mut self.rng)
    }

    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_gaussian())
    }

    pub fn gaussian_vector(&mut self, d: usize) -> Vec<C64> {
        (0..d).map(|_| self.complex_gaussian()).collect()
    }
}

/// Haar-random `d × d` unitary.
///
/// Gram–Schmidt on the columns of a complex Ginibre matrix is the QR
/// factorisation with a positive real diagonal in `R`, which is the phase
/// convention that makes `Q` Haar distributed.
pub fn random_unitary(d: usize, rng: &mut RandomSource) -> ComplexMatrix {
    assert!(d >= 1, "unitary dimension must be positive");
    loop {
        let g = rng.gaussian_matrix(d, d);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Modified Gram–Schmidt (applied twice for stability). `None` if the columns
/// are numerically dependent.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(m.cols());
    for k in 0..m.cols() {
        let mut v = m.column(k);
        for _ in 0..2 {
            for u in &cols {
                let proj = inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let n = norm(&v);
        if n < 1e-12 {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= n);
        cols.push(v);
    }
    ComplexMatrix::from_columns(&cols).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_unitary_is_a_phase() {
        let u = random_unitary(1, &mut RandomSource::new(3));
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn seed_determinism() {
        let a = random_unitary(2, &mut RandomSource::new(42));
        let b = random_unitary(2, &mut RandomSource::new(42));
        assert_eq!(a, b);
        let c = random_unitary(2, &mut RandomSource::new(43));
        assert_ne!(a, c);
    }

    #[test]
    fn substreams_differ() {
        let mut a = RandomSource::substream(9, 0);
        let mut b = RandomSource::substream(9, 1);
        assert_ne!(a.gaussian(), b.gaussian());
    }

    #[test]
    fn unitarity() {
        let mut rng = RandomSource::new(11);
        for d in 2..=9 {
            let u = random_unitary(d, &mut rng);
            let err = (&u.dagger() * &u).max_abs_diff(&ComplexMatrix::identity(d));
            assert!(err < 1e-10, "d={d} err={err}");
        }
    }
}
