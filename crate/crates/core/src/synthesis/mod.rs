//! Beamforming codewords: the DFT codebook and Gerchberg–Saxton synthesis
//! of multi-mainlobe beams from coverage masks.

mod codebook;
mod gs;
mod manifold;

pub use codebook::{BeamSynthesizer, Codebook, Codeword, SynthesisParams};
pub use gs::{
    beam_gain_profile, coverage_contrast_db, desired_gain, gs_design, gs_design_traced, GainSpec,
};
pub use manifold::{uniform_angles, Manifold, ManifoldMatrix, UniformManifold};

use num_complex::Complex64;

use crate::array::steering_entries;
use crate::{Error, Result};

/// Manifold samples per antenna.
pub const DEFAULT_OVERSAMPLING: usize = 4;
pub const DEFAULT_MAX_ITERS: usize = 100;

/// Direction of DFT codeword `index` (0-based): the centre of segment
/// `index` of the `N_T`-way partition.
pub fn dft_direction(index: usize, n_antennas: usize) -> f64 {
    -1.0 + (2 * index + 1) as f64 / n_antennas as f64
}

/// The `N_T` beamformers `α(φ)ᴴ` pointing at the segment centres.
pub fn dft_codebook(n_antennas: usize) -> Result<Vec<Vec<Complex64>>> {
    if n_antennas == 0 {
        return Err(Error::invalid("array needs at least one antenna"));
    }
    Ok((0..n_antennas)
        .map(|i| {
            steering_entries(dft_direction(i, n_antennas), n_antennas)
                .into_iter()
                .map(|z| z.conj())
                .collect()
        })
        .collect())
}
