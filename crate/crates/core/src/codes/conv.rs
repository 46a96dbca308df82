//! Rate-1/2, constraint-length-3 feed-forward convolutional code with
//! generators 111 and 101.
//!
//! The encoder state holds the two previous inputs `(u(i-1), u(i-2))` and is
//! indexed as `2·u(i-1) + u(i-2)`, so "10" is state 2.

use crate::Bit;

pub const N_STATES: usize = 4;

/// Output pair `(u ⊕ m1 ⊕ m2, u ⊕ m2)` for `state = (m1, m2)`.
pub fn branch_output(state: usize, input: Bit) -> (Bit, Bit) {
    let m1 = ((state >> 1) & 1) as Bit;
    let m2 = (state & 1) as Bit;
    (input ^ m1 ^ m2, input ^ m2)
}

pub fn next_state(state: usize, input: Bit) -> usize {
    ((input as usize) << 1) | (state >> 1)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConvolutionalEncoder {
    state: usize,
}

impl ConvolutionalEncoder {
    pub fn new() -> Self {
        Self { state: 0 }
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn step(&mut self, input: Bit) -> (Bit, Bit) {
        let out = branch_output(self.state, input & 1);
        self.state = next_state(self.state, input & 1);
        out
    }
}

/// Encodes from the all-zero state without tail bits.
pub fn conv_encode(message: &[Bit]) -> Vec<Bit> {
    let mut enc = ConvolutionalEncoder::new();
    message
        .iter()
        .flat_map(|&u| {
            let (a, b) = enc.step(u);
            [a, b]
        })
        .collect()
}
