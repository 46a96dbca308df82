//! Soft-input Viterbi decoding over the 4-state trellis.
//!
//! Branch metric for a branch with output bits `(y1, y2)` and layer LLRs
//! `(λ1, λ2)` is `Σ (y == 1 ? -λ : +λ)`; survivors minimize the running sum.
//! A positive LLR therefore favours branches that expect signal (bit 1).

use super::conv::{branch_output, N_STATES};
use crate::{Bit, Error, Result};

/// Survivor losses and bit histories after `level` trellis steps.
///
/// States unreachable from the all-zero start carry an infinite loss until
/// the trellis has filled (level 2).
#[derive(Debug, Clone, PartialEq)]
pub struct TrellisState {
    losses: [f64; N_STATES],
    paths: [Vec<Bit>; N_STATES],
    level: usize,
}

impl Default for TrellisState {
    fn default() -> Self {
        Self::new()
    }
}

fn branch_cost(out: (Bit, Bit), llr: (f64, f64)) -> f64 {
    let signed = |bit: Bit, v: f64| if bit == 1 { -v } else { v };
    signed(out.0, llr.0) + signed(out.1, llr.1)
}

impl TrellisState {
    /// Encoder known to start in state 00.
    pub fn new() -> Self {
        Self::with_losses([0.0, f64::INFINITY, f64::INFINITY, f64::INFINITY])
    }

    /// Arbitrary initial losses with empty survivor paths.
    pub fn with_losses(losses: [f64; N_STATES]) -> Self {
        Self {
            losses,
            paths: Default::default(),
            level: 0,
        }
    }

    pub fn losses(&self) -> &[f64; N_STATES] {
        &self.losses
    }

    pub fn paths(&self) -> &[Vec<Bit>; N_STATES] {
        &self.paths
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Add-compare-select for one pair of coded layers.
    ///
    /// Ties keep the lower-indexed predecessor.
    pub fn step(&self, llr_pair: (f64, f64)) -> TrellisState {
        let mut losses = [0.0; N_STATES];
        let mut paths: [Vec<Bit>; N_STATES] = Default::default();
        for s in 0..N_STATES {
            let input = (s >> 1) as Bit;
            let m1 = s & 1;
            let mut best_pred = m1 << 1;
            let mut best =
                self.losses[best_pred] + branch_cost(branch_output(best_pred, input), llr_pair);
            let other = (m1 << 1) | 1;
            let cand = self.losses[other] + branch_cost(branch_output(other, input), llr_pair);
            if cand < best {
                best = cand;
                best_pred = other;
            }
            losses[s] = best;
            let mut path = Vec::with_capacity(self.level + 1);
            path.extend_from_slice(&self.paths[best_pred]);
            path.push(input);
            paths[s] = path;
        }
        TrellisState {
            losses,
            paths,
            level: self.level + 1,
        }
    }

    /// Minimum-loss terminal state and its survivor path, lowest state on ties.
    pub fn best(&self) -> (usize, &[Bit]) {
        let mut best = 0;
        for s in 1..N_STATES {
            if self.losses[s] < self.losses[best] {
                best = s;
            }
        }
        (best, &self.paths[best])
    }

    /// Reachable survivors as `(state, loss, path)`.
    pub fn survivors(&self) -> impl Iterator<Item = (usize, f64, &[Bit])> + '_ {
        (0..N_STATES)
            .filter(|&s| self.losses[s].is_finite())
            .map(|s| (s, self.losses[s], self.paths[s].as_slice()))
    }
}

/// Decodes `llrs.len() / 2` message bits from the zero state, no tail.
pub fn viterbi_decode(llrs: &[f64]) -> Result<Vec<Bit>> {
    if !llrs.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "need an even number of LLRs, got {}",
            llrs.len()
        )));
    }
    let end = llrs
        .chunks_exact(2)
        .fold(TrellisState::new(), |st, pair| st.step((pair[0], pair[1])));
    Ok(end.best().1.to_vec())
}
