use rand::Rng;

use super::link::TrainingLink;
use super::{check_antennas, TrainingOutcome};
use crate::codes::HammingCode74;
use crate::synthesis::Codebook;
use crate::{bits_to_index, Bit, Error, Result};

/// Seven two-slot layers, one hard bit each, single-error correction.
pub fn hamming_training<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    codebook: &Codebook,
) -> Result<TrainingOutcome> {
    hamming_training_with_flips(link, codebook, &[])
}

/// [`hamming_training`] with the hard decisions at `flips` (0-based layer
/// positions) inverted before decoding, to exercise the corrector.
pub fn hamming_training_with_flips<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    codebook: &Codebook,
    flips: &[usize],
) -> Result<TrainingOutcome> {
    check_antennas(link, codebook)?;
    if link.n_antennas() != 16 || codebook.layers.len() != 7 {
        return Err(Error::invalid(
            "Hamming training needs N_T = 16 and a 7-layer codebook",
        ));
    }
    if let Some(&f) = flips.iter().find(|&&f| f >= 7) {
        return Err(Error::invalid(format!("flip position {f} outside 0..7")));
    }
    let mut word = [0 as Bit; 7];
    for (l, layer) in codebook.layers.iter().enumerate() {
        let p1 = link.measure("hamming", || format!("C{l}.0"), &layer[0].weights)?;
        let p2 = link.measure("hamming", || format!("C{l}.1"), &layer[1].weights)?;
        // slot 0 illuminates the segments whose code bit is 1
        let mut bit = u8::from(p1 > p2);
        if flips.contains(&l) {
            bit ^= 1;
        }
        word[l] = bit;
        link.feedback("hamming", &[bit]);
    }
    let corrected = HammingCode74::new().correct(&word);
    let message = corrected.message();
    let index = bits_to_index(&message);
    Ok(TrainingOutcome::new(link, index, word.to_vec()))
}
