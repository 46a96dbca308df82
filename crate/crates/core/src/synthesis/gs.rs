//! Gerchberg–Saxton design of multi-mainlobe codewords.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::manifold::{uniform_angles, Manifold};
use crate::array::steering_entries;
use crate::pattern::CoverageSet;
use crate::{Error, Result};

/// Target gain magnitudes on `K` uniform sample angles.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSpec {
    pub sample_angles: Vec<f64>,
    pub target_magnitudes: Vec<f64>,
    pub coverage: CoverageSet,
}

impl GainSpec {
    pub fn n_samples(&self) -> usize {
        self.sample_angles.len()
    }
}

/// Flat target `sqrt(2/|B|)` inside the coverage, zero outside.
///
/// This keeps the mean squared gain over `[-1, 1)` equal to one, the
/// value any unit-norm codeword has.
pub fn desired_gain(coverage: &CoverageSet, k: usize) -> Result<GainSpec> {
    let measure = coverage.measure();
    if measure <= 0.0 {
        return Err(Error::invalid("coverage must not be empty"));
    }
    if k == 0 {
        return Err(Error::invalid("need at least one sample angle"));
    }
    let level = (2.0 / measure).sqrt();
    let sample_angles = uniform_angles(k);
    let target_magnitudes = sample_angles
        .iter()
        .map(|&phi| if coverage.contains(phi) { level } else { 0.0 })
        .collect();
    Ok(GainSpec {
        sample_angles,
        target_magnitudes,
        coverage: coverage.clone(),
    })
}

/// Unit-norm codeword whose gain magnitude approximates the target.
pub fn gs_design<M: Manifold + ?Sized>(
    spec: &GainSpec,
    manifold: &M,
    max_iters: usize,
    seed: u64,
) -> Result<Vec<Complex64>> {
    gs_design_traced(spec, manifold, max_iters, seed).map(|(v, _)| v)
}

/// [`gs_design`] plus the residual `‖|Aᴴv| − t‖` of every least-squares
/// iterate, first to last (`max_iters + 1` values).
pub fn gs_design_traced<M: Manifold + ?Sized>(
    spec: &GainSpec,
    manifold: &M,
    max_iters: usize,
    seed: u64,
) -> Result<(Vec<Complex64>, Vec<f64>)> {
    if max_iters == 0 {
        return Err(Error::invalid("GS needs at least one iteration"));
    }
    if spec.n_samples() != manifold.n_samples() {
        return Err(Error::DimensionMismatch {
            expected: manifold.n_samples(),
            found: spec.n_samples(),
        });
    }
    let target = &spec.target_magnitudes;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g: Vec<Complex64> = target
        .iter()
        .map(|&t| Complex64::from_polar(t, rng.random_range(0.0..2.0 * PI)))
        .collect();

    let mut residuals = Vec::with_capacity(max_iters + 1);
    let mut v = manifold.least_squares(&g);
    for _ in 0..max_iters {
        let achieved = manifold.gains(&v);
        residuals.push(residual(&achieved, target));
        for ((gn, a), &t) in g.iter_mut().zip(&achieved).zip(target) {
            *gn = Complex64::from_polar(t, a.arg());
        }
        v = manifold.least_squares(&g);
    }
    residuals.push(residual(&manifold.gains(&v), target));

    let norm = crate::array::norm(&v);
    if norm == 0.0 {
        return Err(Error::invalid("GS produced a zero codeword"));
    }
    v.iter_mut().for_each(|z| *z /= norm);
    Ok((v, residuals))
}

fn residual(gains: &[Complex64], target: &[f64]) -> f64 {
    gains
        .iter()
        .zip(target)
        .map(|(g, t)| (g.norm() - t).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Gain `sqrt(N_T) α(φ) w` at each angle.
pub fn beam_gain_profile(codeword: &[Complex64], angles: &[f64]) -> Vec<Complex64> {
    let n = codeword.len();
    let scale = (n as f64).sqrt();
    angles
        .iter()
        .map(|&phi| {
            scale
                * steering_entries(phi, n)
                    .iter()
                    .zip(codeword)
                    .map(|(a, w)| a * w)
                    .sum::<Complex64>()
        })
        .collect()
}

/// Mean in-coverage over mean out-of-coverage power, in dB, on `m` grid
/// midpoints. Infinite when the coverage is the whole space.
pub fn coverage_contrast_db(codeword: &[Complex64], coverage: &CoverageSet, m: usize) -> f64 {
    let angles: Vec<f64> = (0..m)
        .map(|n| -1.0 + (2 * n + 1) as f64 / m as f64)
        .collect();
    let profile = beam_gain_profile(codeword, &angles);
    let (mut inside, mut n_in, mut outside, mut n_out) = (0.0, 0usize, 0.0, 0usize);
    for (phi, g) in angles.iter().zip(&profile) {
        if coverage.contains(*phi) {
            inside += g.norm_sqr();
            n_in += 1;
        } else {
            outside += g.norm_sqr();
            n_out += 1;
        }
    }
    if n_out == 0 {
        return f64::INFINITY;
    }
    if n_in == 0 {
        return f64::NEG_INFINITY;
    }
    10.0 * ((inside / n_in as f64) / (outside / n_out as f64)).log10()
}
