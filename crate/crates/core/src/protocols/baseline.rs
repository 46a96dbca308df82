use rand::Rng;

use super::link::TrainingLink;
use super::{check_antennas, TrainingOutcome};
use crate::synthesis::Codebook;
use crate::{exact_log2, index_to_bits, Result};

/// Sweeps every DFT codeword and keeps the strongest.
pub fn exhaustive_sweep<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    dft: &Codebook,
) -> Result<TrainingOutcome> {
    check_antennas(link, dft)?;
    let n = link.n_antennas();
    let mut best = (0, f64::NEG_INFINITY);
    for (i, cw) in dft.layers[0].iter().enumerate() {
        let p = link.measure("sweep", || format!("W{i}"), &cw.weights)?;
        if p > best.1 {
            best = (i, p);
        }
    }
    let bits = index_to_bits(best.0, exact_log2(n).unwrap_or(0));
    link.feedback("index", &bits);
    Ok(TrainingOutcome::new(link, best.0, bits))
}

/// Walks down the binary tree, keeping the stronger child at every layer.
pub fn binary_hierarchical<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    hier: &Codebook,
) -> Result<TrainingOutcome> {
    check_antennas(link, hier)?;
    let mut node = 0;
    let mut bits = Vec::with_capacity(hier.layers.len());
    for (l, layer) in hier.layers.iter().enumerate() {
        let (a, b) = (2 * node, 2 * node + 1);
        let pa = link.measure("hier", || format!("H{l}.{a}"), &layer[a].weights)?;
        let pb = link.measure("hier", || format!("H{l}.{b}"), &layer[b].weights)?;
        let bit = u8::from(pb > pa);
        link.feedback("hier", &[bit]);
        bits.push(bit);
        node = 2 * node + bit as usize;
    }
    Ok(TrainingOutcome::new(link, node, bits))
}
