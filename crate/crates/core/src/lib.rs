//! Coded beam training for large uniform linear arrays.
//!
//! Hierarchical beam training treats the user's angular direction as a
//! message: each training layer sends one bit of it through the spatial
//! channel. This crate protects those bits with channel codes. It contains
//!
//! - [`array`]: steering vectors, line-of-sight channels and the noisy
//!   received-power model,
//! - [`codes`]: Hamming(7,4), the rate-1/2 constraint-length-3 convolutional
//!   code, chi-squared and Gaussian LLRs, Viterbi and exhaustive ML decoding,
//! - [`pattern`]: space-time 0/1 beam patterns and angular coverage sets,
//! - [`synthesis`]: DFT codebooks and Gerchberg–Saxton multi-lobe beam design,
//! - [`protocols`]: exhaustive sweeping, binary hierarchical search, Hamming
//!   coded training and fixed/adaptive convolutional coded training,
//! - [`harness`]: the Monte Carlo driver, CSV output and config parsing.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod array;
pub mod cli;
pub mod codes;
pub mod error;
pub mod harness;
pub mod pattern;
pub mod protocols;
pub mod synthesis;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Binary digit stored as `0` or `1`.
pub type Bit = u8;

/// MSB-first binary to decimal.
pub fn bits_to_index(bits: &[Bit]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | (b & 1) as usize)
}

/// MSB-first decimal to binary with a fixed width.
pub fn index_to_bits(index: usize, width: usize) -> Vec<Bit> {
    (0..width)
        .map(|k| ((index >> (width - 1 - k)) & 1) as Bit)
        .collect()
}

/// Returns `log2(n)` when `n` is a power of two.
pub fn exact_log2(n: usize) -> Option<usize> {
    if n.is_power_of_two() {
        Some(n.trailing_zeros() as usize)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bintodec_msb_first() {
        assert_eq!(bits_to_index(&[0, 0, 1, 0]), 2);
        assert_eq!(bits_to_index(&[1, 0, 1, 0]), 10);
        assert_eq!(bits_to_index(&[]), 0);
        assert_eq!(index_to_bits(2, 4), vec![0, 0, 1, 0]);
        for i in 0..64 {
            assert_eq!(bits_to_index(&index_to_bits(i, 6)), i);
        }
    }

    #[test]
    fn log2_only_for_powers_of_two() {
        assert_eq!(exact_log2(1024), Some(10));
        assert_eq!(exact_log2(1), Some(0));
        assert_eq!(exact_log2(96), None);
        assert_eq!(exact_log2(0), None);
    }
}
