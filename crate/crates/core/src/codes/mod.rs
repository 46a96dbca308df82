//! Channel codes used as beam-training codes, their soft metrics and decoders.

mod bessel;
mod conv;
mod hamming;
mod llr;
mod ml;
mod viterbi;

pub use bessel::log_bessel_i0;
pub use conv::{branch_output, conv_encode, next_state, ConvolutionalEncoder, N_STATES};
pub use hamming::{hamming_correct, hamming_encode, HammingCode74, HammingCorrection};
pub use llr::{chi2_llr, gaussian_llr, LlrKind, LlrModel};
pub use ml::{ml_decode, ml_decode_llrs, ml_scores};
pub use viterbi::{viterbi_decode, TrellisState};

use crate::{Bit, Error, Result};

pub(crate) fn check_bits(bits: &[Bit], expected: usize) -> Result<()> {
    if bits.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: bits.len(),
        });
    }
    if let Some(b) = bits.iter().find(|&&b| b > 1) {
        return Err(Error::invalid(format!("bit value {b} is not 0 or 1")));
    }
    Ok(())
}
