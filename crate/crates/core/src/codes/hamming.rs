//! Systematic (7,4) Hamming code.

use super::check_bits;
use crate::{Bit, Result};

/// Generator and parity-check matrices of the systematic (7,4) code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingCode74 {
    generator: [[Bit; 7]; 4],
    parity_check: [[Bit; 7]; 3],
}

impl Default for HammingCode74 {
    fn default() -> Self {
        Self::new()
    }
}

impl HammingCode74 {
    pub const fn new() -> Self {
        Self {
            generator: [
                [1, 0, 0, 0, 1, 1, 1],
                [0, 1, 0, 0, 1, 1, 0],
                [0, 0, 1, 0, 1, 0, 1],
                [0, 0, 0, 1, 0, 1, 1],
            ],
            parity_check: [
                [1, 1, 1, 0, 1, 0, 0],
                [1, 1, 0, 1, 0, 1, 0],
                [1, 0, 1, 1, 0, 0, 1],
            ],
        }
    }

    pub fn generator(&self) -> &[[Bit; 7]; 4] {
        &self.generator
    }

    pub fn parity_check(&self) -> &[[Bit; 7]; 3] {
        &self.parity_check
    }

    /// `u · G` over GF(2).
    pub fn encode(&self, message: &[Bit; 4]) -> [Bit; 7] {
        let mut out = [0; 7];
        for (row, &u) in self.generator.iter().zip(message) {
            if u == 1 {
                for (o, g) in out.iter_mut().zip(row) {
                    *o ^= g;
                }
            }
        }
        out
    }

    /// `x · Hᵀ` over GF(2).
    pub fn syndrome(&self, word: &[Bit; 7]) -> [Bit; 3] {
        let mut s = [0; 3];
        for (si, row) in s.iter_mut().zip(&self.parity_check) {
            *si = row.iter().zip(word).fold(0, |acc, (h, x)| acc ^ (h & x));
        }
        s
    }

    /// Error position (1-based) for a syndrome, `None` for 000.
    ///
    /// The syndrome of a single error in bit `j` is column `j` of `H`:
    /// 111→b1, 110→b2, 101→b3, 011→b4, 100→b5, 010→b6, 001→b7.
    pub fn error_position(&self, syndrome: &[Bit; 3]) -> Option<usize> {
        if syndrome == &[0, 0, 0] {
            return None;
        }
        (0..7)
            .find(|&j| (0..3).all(|r| self.parity_check[r][j] == syndrome[r]))
            .map(|j| j + 1)
    }

    pub fn correct(&self, word: &[Bit; 7]) -> HammingCorrection {
        let syndrome = self.syndrome(word);
        let mut corrected = *word;
        let error_position = self.error_position(&syndrome);
        if let Some(pos) = error_position {
            corrected[pos - 1] ^= 1;
        }
        HammingCorrection {
            corrected,
            syndrome,
            error_position: error_position.unwrap_or(0),
        }
    }
}

/// Result of syndrome decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingCorrection {
    pub corrected: [Bit; 7],
    pub syndrome: [Bit; 3],
    /// Flipped bit, 1-based; 0 when the syndrome is zero.
    pub error_position: usize,
}

impl HammingCorrection {
    /// The four systematic message bits.
    pub fn message(&self) -> [Bit; 4] {
        [
            self.corrected[0],
            self.corrected[1],
            self.corrected[2],
            self.corrected[3],
        ]
    }
}

pub fn hamming_encode(message: &[Bit]) -> Result<[Bit; 7]> {
    check_bits(message, 4)?;
    let m = [message[0], message[1], message[2], message[3]];
    Ok(HammingCode74::new().encode(&m))
}

pub fn hamming_correct(received: &[Bit]) -> Result<HammingCorrection> {
    check_bits(received, 7)?;
    let mut w = [0; 7];
    w.copy_from_slice(received);
    Ok(HammingCode74::new().correct(&w))
}
