//! Convolutionally coded training, fixed and adaptive.

use rand::Rng;

use super::link::TrainingLink;
use super::{check_antennas, TrainingCodebooks, TrainingOutcome};
use crate::codes::{ml_decode_llrs, viterbi_decode, LlrKind, LlrModel, TrellisState};
use crate::pattern::{adaptive_coverage, coverage_set, survivor_directions};
use crate::{bits_to_index, index_to_bits, Bit, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodedMode {
    /// Beams fixed by the pattern; the UE decodes after the last layer.
    Fixed,
    /// Beams narrowed each trellis level to the survivor directions.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodedDecoder {
    Viterbi(LlrKind),
    /// Exhaustive maximum likelihood over all indices from chi-squared
    /// LLRs. In adaptive mode the beams are still steered by the
    /// chi-squared trellis; only the final decision is exhaustive.
    Ml,
}

/// Runs `L = log2 N_T − 1` trellis levels of two layers each, then picks
/// between the two DFT codewords of the decoded segment.
pub fn coded_training<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    books: &TrainingCodebooks,
    mode: CodedMode,
    decoder: CodedDecoder,
) -> Result<TrainingOutcome> {
    check_antennas(link, books.dft())?;
    let message = match mode {
        CodedMode::Fixed => fixed_levels(link, books, decoder)?,
        CodedMode::Adaptive => adaptive_levels(link, books, decoder)?,
    };

    let t = bits_to_index(&message);
    let dft = &books.dft().layers[0];
    let (a, b) = (2 * t, 2 * t + 1);
    let pa = link.measure("bottom", || format!("W{a}"), &dft[a].weights)?;
    let pb = link.measure("bottom", || format!("W{b}"), &dft[b].weights)?;
    let bit = u8::from(pb > pa);
    link.feedback("bottom", &[bit]);

    let mut bits = message;
    bits.push(bit);
    Ok(TrainingOutcome::new(link, 2 * t + bit as usize, bits))
}

fn layer_llr(kind: LlrKind, reference: f64, measure: f64, noise: f64, power: f64) -> Result<f64> {
    LlrModel::new(kind, reference * (2.0 / measure).sqrt(), noise)?.llr(power)
}

fn fixed_levels<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    books: &TrainingCodebooks,
    decoder: CodedDecoder,
) -> Result<Vec<Bit>> {
    let Some(pattern) = books.conv_pattern() else {
        return Ok(Vec::new());
    };
    let codebook = books.conv()?;
    let kind = llr_kind(decoder);
    let reference = link.reference_amplitude();
    let noise = link.budget().noise_power();
    let mut llrs = Vec::with_capacity(pattern.n_layers());
    for (l, layer) in codebook.layers.iter().enumerate() {
        let cw = &layer[0];
        let p = link.measure("coded", || format!("C{l}"), &cw.weights)?;
        llrs.push(layer_llr(kind, reference, cw.coverage.measure(), noise, p)?);
    }
    let message = match decoder {
        CodedDecoder::Viterbi(_) => viterbi_decode(&llrs)?,
        CodedDecoder::Ml => ml_message(books, &llrs)?,
    };
    link.feedback("index", &message);
    Ok(message)
}

fn llr_kind(decoder: CodedDecoder) -> LlrKind {
    match decoder {
        CodedDecoder::Viterbi(k) => k,
        CodedDecoder::Ml => LlrKind::ChiSquared,
    }
}

fn ml_message(books: &TrainingCodebooks, llrs: &[f64]) -> Result<Vec<Bit>> {
    let index = ml_decode_llrs(llrs, books.conv_columns())?;
    Ok(index_to_bits(index, llrs.len() / 2))
}

fn adaptive_levels<R: Rng>(
    link: &mut TrainingLink<'_, R>,
    books: &TrainingCodebooks,
    decoder: CodedDecoder,
) -> Result<Vec<Bit>> {
    let Some(pattern) = books.conv_pattern() else {
        return Ok(Vec::new());
    };
    let kind = llr_kind(decoder);
    let mut llrs = Vec::with_capacity(pattern.n_layers());
    let synth = books.synthesizer();
    let reference = link.reference_amplitude();
    let noise = link.budget().noise_power();
    let mut state = TrellisState::new();
    for level in 0..pattern.n_layers() / 2 {
        let paths: Vec<&[Bit]> = state.survivors().map(|(_, _, p)| p).collect();
        let alive = survivor_directions(&paths)?;
        let mut pair = [0.0; 2];
        for (j, llr) in pair.iter_mut().enumerate() {
            let l = 2 * level + j;
            let narrowed = adaptive_coverage(&coverage_set(pattern, l)?, &alive)?;
            if narrowed.is_empty() {
                // no survivor lies under this layer's beam: the slot carries
                // no information about the surviving paths
                let w = synth.beam(&coverage_set(pattern, l)?)?;
                link.measure("adaptive", || format!("C{l}"), &w)?;
                continue;
            }
            let w = synth.beam(&narrowed)?;
            let p = link.measure("adaptive", || format!("C{l}|{}", mask_id(&narrowed)), &w)?;
            *llr = layer_llr(kind, reference, narrowed.measure(), noise, p)?;
        }
        llrs.extend(pair);
        state = state.step((pair[0], pair[1]));
        // the UE reports, per surviving state, the oldest bit its new path
        // committed to; the BS rebuilds the survivor set from these
        let decisions: Vec<Bit> = state
            .survivors()
            .map(|(_, _, p)| if p.len() >= 3 { p[p.len() - 3] } else { 0 })
            .collect();
        link.feedback("survivors", &decisions);
    }
    match decoder {
        CodedDecoder::Viterbi(_) => Ok(state.best().1.to_vec()),
        CodedDecoder::Ml => ml_message(books, &llrs),
    }
}

fn mask_id(set: &crate::pattern::CoverageSet) -> String {
    set.canonical()
        .mask()
        .iter()
        .map(|&c| if c { '1' } else { '0' })
        .collect()
}
