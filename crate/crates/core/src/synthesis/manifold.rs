//! Sampled array manifolds.
//!
//! `A` is the `N_T × K` matrix whose column `n` is `sqrt(N_T) α(φ_n)ᴴ`, so
//! `Aᴴv` lists the beam gains of codeword `v` at the sample angles.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result};

/// The two products the GS iteration needs.
pub trait Manifold: Send + Sync {
    fn n_antennas(&self) -> usize;

    fn angles(&self) -> &[f64];

    fn n_samples(&self) -> usize {
        self.angles().len()
    }

    /// `Aᴴ v`.
    fn gains(&self, codeword: &[Complex64]) -> Vec<Complex64>;

    /// `(A Aᴴ)⁻¹ A g`, the least-squares codeword for target gains `g`.
    fn least_squares(&self, gains: &[Complex64]) -> Vec<Complex64>;
}

/// `K` cell midpoints `-1 + (2n + 1)/K`.
///
/// Midpoints keep every segment's samples symmetric about its centre; grid
/// points on segment edges would shift each synthesized beam by half a
/// sample.
pub fn uniform_angles(k: usize) -> Vec<f64> {
    (0..k)
        .map(|n| -1.0 + (2 * n + 1) as f64 / k as f64)
        .collect()
}

/// Explicit `A` for arbitrary sample angles.
pub struct ManifoldMatrix {
    angles: Vec<f64>,
    a: DMatrix<Complex64>,
    gram: Cholesky<Complex64, Dyn>,
}

impl ManifoldMatrix {
    pub fn new(n_antennas: usize, angles: Vec<f64>) -> Result<Self> {
        if n_antennas == 0 || angles.is_empty() {
            return Err(Error::invalid("manifold needs antennas and sample angles"));
        }
        let singular = || Error::SingularManifold {
            samples: angles.len(),
            antennas: n_antennas,
        };
        if angles.len() < n_antennas {
            return Err(singular());
        }
        let a = DMatrix::from_fn(n_antennas, angles.len(), |k, n| {
            Complex64::from_polar(1.0, PI * k as f64 * angles[n])
        });
        let aah = &a * a.adjoint();
        // Cholesky only rejects non-positive pivots; also reject a Gram
        // matrix that is numerically rank deficient
        let gram = Cholesky::new(aah).ok_or_else(singular)?;
        let diag = gram.l_dirty().diagonal();
        let (lo, hi) = diag.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), d| {
            (lo.min(d.re), hi.max(d.re))
        });
        if lo <= hi * 1e-7 {
            return Err(singular());
        }
        Ok(Self { angles, a, gram })
    }

    pub fn uniform(n_antennas: usize, k: usize) -> Result<Self> {
        Self::new(n_antennas, uniform_angles(k))
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.a
    }
}

impl Manifold for ManifoldMatrix {
    fn n_antennas(&self) -> usize {
        self.a.nrows()
    }

    fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn gains(&self, codeword: &[Complex64]) -> Vec<Complex64> {
        let v = DVector::from_column_slice(codeword);
        (self.a.adjoint() * v).iter().copied().collect()
    }

    fn least_squares(&self, gains: &[Complex64]) -> Vec<Complex64> {
        let g = DVector::from_column_slice(gains);
        self.gram.solve(&(&self.a * g)).iter().copied().collect()
    }
}

/// `A` on `K ≥ N_T` uniform angles, applied with length-`K` FFTs.
///
/// On this grid `A Aᴴ = K·I`, `Aᴴv` is the DFT of `c_k v_k` and
/// `(A Aᴴ)⁻¹ A g` is `conj(c_k)/K` times the first `N_T` inverse-DFT
/// outputs, with `c_k = exp(-jπk(1/K - 1))`.
#[derive(Clone)]
pub struct UniformManifold {
    n_antennas: usize,
    angles: Vec<f64>,
    ramp: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl UniformManifold {
    pub fn new(n_antennas: usize, k: usize) -> Result<Self> {
        if n_antennas == 0 {
            return Err(Error::invalid("manifold needs at least one antenna"));
        }
        if k < n_antennas {
            return Err(Error::SingularManifold {
                samples: k,
                antennas: n_antennas,
            });
        }
        let mut planner = FftPlanner::new();
        let ramp = (0..n_antennas)
            .map(|i| Complex64::from_polar(1.0, -PI * i as f64 * (1.0 / k as f64 - 1.0)))
            .collect();
        Ok(Self {
            n_antennas,
            angles: uniform_angles(k),
            ramp,
            forward: planner.plan_fft_forward(k),
            inverse: planner.plan_fft_inverse(k),
        })
    }
}

impl Manifold for UniformManifold {
    fn n_antennas(&self) -> usize {
        self.n_antennas
    }

    fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn gains(&self, codeword: &[Complex64]) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); self.angles.len()];
        for ((b, &v), c) in buf.iter_mut().zip(codeword).zip(&self.ramp) {
            *b = c * v;
        }
        self.forward.process(&mut buf);
        buf
    }

    fn least_squares(&self, gains: &[Complex64]) -> Vec<Complex64> {
        let mut buf = gains.to_vec();
        self.inverse.process(&mut buf);
        let k = self.angles.len() as f64;
        buf.truncate(self.n_antennas);
        for (b, c) in buf.iter_mut().zip(&self.ramp) {
            *b = c.conj() * *b / k;
        }
        buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::steering_entries;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn gains_are_scaled_steering_products() {
        let n = 8;
        let m = ManifoldMatrix::uniform(n, 32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = random_vec(&mut rng, n);
        let g = m.gains(&v);
        for (phi, gn) in m.angles().iter().zip(&g) {
            let alpha = steering_entries(*phi, n);
            let expect: Complex64 =
                (n as f64).sqrt() * alpha.iter().zip(&v).map(|(a, w)| a * w).sum::<Complex64>();
            assert!((expect - gn).norm() < 1e-12);
        }
    }

    #[test]
    fn uniform_gram_is_scaled_identity() {
        let m = ManifoldMatrix::uniform(16, 64).unwrap();
        let gram = m.matrix() * m.matrix().adjoint();
        for i in 0..16 {
            for j in 0..16 {
                let want = if i == j { 64.0 } else { 0.0 };
                assert!((gram[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn fft_manifold_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, k) in &[(1, 1), (4, 4), (8, 32), (16, 64), (64, 256), (12, 40)] {
            let dense = ManifoldMatrix::uniform(n, k).unwrap();
            let fast = UniformManifold::new(n, k).unwrap();
            let v = random_vec(&mut rng, n);
            assert!(
                max_diff(&dense.gains(&v), &fast.gains(&v)) < 1e-9,
                "n={n} k={k}"
            );
            let g = random_vec(&mut rng, k);
            assert!(
                max_diff(&dense.least_squares(&g), &fast.least_squares(&g)) < 1e-9,
                "n={n} k={k}"
            );
        }
    }

    #[test]
    fn least_squares_inverts_gains() {
        let m = UniformManifold::new(32, 128).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = random_vec(&mut rng, 32);
        assert!(max_diff(&m.least_squares(&m.gains(&v)), &v) < 1e-12);
    }

    #[test]
    fn too_few_samples_is_singular() {
        assert!(matches!(
            ManifoldMatrix::uniform(16, 8),
            Err(Error::SingularManifold {
                samples: 8,
                antennas: 16
            })
        ));
        assert!(matches!(
            UniformManifold::new(16, 8),
            Err(Error::SingularManifold { .. })
        ));
        // enough samples, but all at one angle
        assert!(matches!(
            ManifoldMatrix::new(4, vec![0.25; 8]),
            Err(Error::SingularManifold { .. })
        ));
    }
}
