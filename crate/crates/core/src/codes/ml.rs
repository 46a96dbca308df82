//! Exhaustive maximum-likelihood direction decoding.
//!
//! For independent per-layer observations the log-likelihood of index `i`
//! equals, up to an index-independent constant, the sum of the layer LLRs
//! over the layers whose pattern bit is 1 for `i`.

use super::llr::chi2_llr;
use crate::{Bit, Error, Result};

fn check_shapes(n_layers: usize, columns: &[Vec<Bit>]) -> Result<()> {
    if columns.is_empty() {
        return Err(Error::invalid("need at least one candidate index"));
    }
    for col in columns {
        if col.len() != n_layers {
            return Err(Error::DimensionMismatch {
                expected: n_layers,
                found: col.len(),
            });
        }
    }
    Ok(())
}

/// Per-index log-likelihood scores; `columns[i][l]` is the pattern bit of
/// layer `l` for index `i`.
pub fn ml_scores(llrs: &[f64], columns: &[Vec<Bit>]) -> Result<Vec<f64>> {
    check_shapes(llrs.len(), columns)?;
    Ok(columns
        .iter()
        .map(|col| {
            col.iter()
                .zip(llrs)
                .filter(|(&b, _)| b == 1)
                .map(|(_, &v)| v)
                .sum()
        })
        .collect())
}

/// Arg-max of [`ml_scores`], lowest index on ties.
pub fn ml_decode_llrs(llrs: &[f64], columns: &[Vec<Bit>]) -> Result<usize> {
    let scores = ml_scores(llrs, columns)?;
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    Ok(best)
}

/// ML index from raw layer powers using the chi-squared likelihoods.
pub fn ml_decode(
    powers: &[f64],
    columns: &[Vec<Bit>],
    amplitudes: &[f64],
    noise_power: f64,
) -> Result<usize> {
    if amplitudes.len() != powers.len() {
        return Err(Error::DimensionMismatch {
            expected: powers.len(),
            found: amplitudes.len(),
        });
    }
    let llrs = powers
        .iter()
        .zip(amplitudes)
        .map(|(&x, &a)| chi2_llr(x, a, noise_power))
        .collect::<Result<Vec<_>>>()?;
    ml_decode_llrs(&llrs, columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::conv_encode;
    use crate::index_to_bits;

    #[test]
    fn one_layer_difference_decided_by_llr_sign() {
        let cols = vec![vec![1, 0, 1], vec![1, 1, 1]];
        assert_eq!(ml_decode_llrs(&[0.3, 0.7, -0.2], &cols).unwrap(), 1);
        assert_eq!(ml_decode_llrs(&[0.3, -0.7, -0.2], &cols).unwrap(), 0);
        // zero LLR ties go to the lower index
        assert_eq!(ml_decode_llrs(&[0.3, 0.0, -0.2], &cols).unwrap(), 0);
    }

    #[test]
    fn noiseless_powers_recover_every_index() {
        let l = 5;
        let cols: Vec<Vec<Bit>> = (0..1 << l)
            .map(|i| conv_encode(&index_to_bits(i, l)))
            .collect();
        let amps = vec![1.4; 2 * l];
        for (i, col) in cols.iter().enumerate() {
            let powers: Vec<f64> = col
                .iter()
                .map(|&b| if b == 1 { 1.4 * 1.4 } else { 0.0 })
                .collect();
            assert_eq!(ml_decode(&powers, &cols, &amps, 0.05).unwrap(), i);
        }
    }

    #[test]
    fn shape_errors() {
        let cols = vec![vec![1, 0], vec![0, 1, 1]];
        assert!(ml_scores(&[0.1, 0.2], &cols).is_err());
        assert!(ml_decode(&[0.1, 0.2], &[vec![1, 0]], &[1.0], 1.0).is_err());
        assert!(ml_scores(&[0.1], &[]).is_err());
    }
}
