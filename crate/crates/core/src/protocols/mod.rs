//! End-to-end beam-training procedures and their overheads.
//!
//! Every procedure drives a [`TrainingLink`], which owns the noise stream and
//! counts training and feedback slots, and returns a [`TrainingOutcome`]
//! naming the selected DFT codeword (0-based).

mod baseline;
mod coded;
mod hamming;
mod link;

use std::fmt;
use std::sync::OnceLock;

pub use baseline::{binary_hierarchical, exhaustive_sweep};
pub use coded::{coded_training, CodedDecoder, CodedMode};
pub use hamming::{hamming_training, hamming_training_with_flips};
pub use link::{trace_csv, SlotEvent, TrainingLink};

use rand::Rng;

use crate::array::{ChannelRealization, LinkBudget};
use crate::codes::LlrKind;
use crate::pattern::{conv_pattern, hamming_pattern, CoverageSet, SpaceTimeBeamPattern};
use crate::synthesis::{BeamSynthesizer, Codebook, SynthesisParams};
use crate::{exact_log2, Bit, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Exhaustive,
    Hierarchical,
    Hamming,
    FixedCoded(LlrKind),
    AdaptiveCoded(LlrKind),
    /// Fixed coded beams with exhaustive ML decoding.
    MlCoded,
    /// Adaptive coded beams with exhaustive ML decoding.
    AdaptiveMlCoded,
}

impl Scheme {
    pub const ALL: [Scheme; 9] = [
        Scheme::Exhaustive,
        Scheme::Hierarchical,
        Scheme::Hamming,
        Scheme::FixedCoded(LlrKind::ChiSquared),
        Scheme::FixedCoded(LlrKind::Gaussian),
        Scheme::AdaptiveCoded(LlrKind::ChiSquared),
        Scheme::AdaptiveCoded(LlrKind::Gaussian),
        Scheme::MlCoded,
        Scheme::AdaptiveMlCoded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Exhaustive => "exhaustive",
            Scheme::Hierarchical => "hierarchical",
            Scheme::Hamming => "hamming",
            Scheme::FixedCoded(LlrKind::ChiSquared) => "fixed-coded",
            Scheme::FixedCoded(LlrKind::Gaussian) => "fixed-coded-gaussian",
            Scheme::AdaptiveCoded(LlrKind::ChiSquared) => "adaptive-coded",
            Scheme::AdaptiveCoded(LlrKind::Gaussian) => "adaptive-coded-gaussian",
            Scheme::MlCoded => "ml-coded",
            Scheme::AdaptiveMlCoded => "adaptive-ml-coded",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Small stable number used to derive per-scheme random streams.
    pub fn id(self) -> u64 {
        Self::ALL.iter().position(|&x| x == self).unwrap() as u64
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(training slots, feedback slots)` of one run.
pub fn overhead(scheme: Scheme, n_antennas: usize) -> Result<(usize, usize)> {
    let b = exact_log2(n_antennas)
        .filter(|&b| b >= 1)
        .ok_or_else(|| Error::invalid(format!("N_T = {n_antennas} is not a power of two >= 2")))?;
    Ok(match scheme {
        Scheme::Exhaustive => (n_antennas, 1),
        Scheme::Hierarchical | Scheme::AdaptiveCoded(_) | Scheme::AdaptiveMlCoded => (2 * b, b),
        Scheme::FixedCoded(_) | Scheme::MlCoded => (2 * b, if b == 1 { 1 } else { 2 }),
        Scheme::Hamming => {
            if n_antennas != 16 {
                return Err(Error::invalid(
                    "Hamming training is defined for N_T = 16 only",
                ));
            }
            (14, 7)
        }
    })
}

/// Result of one training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingOutcome {
    /// 0-based index into the DFT codebook.
    pub selected_index: usize,
    pub slots_used: usize,
    pub feedback_slots: usize,
    pub decoded_bits: Vec<Bit>,
    /// The selected codeword's segment contains the true direction.
    pub success: bool,
}

impl TrainingOutcome {
    fn new<R: Rng>(link: &TrainingLink<'_, R>, selected_index: usize, bits: Vec<Bit>) -> Self {
        let n = link.n_antennas();
        let truth = CoverageSet::segment_of(n, link.channel().los_direction());
        Self {
            selected_index,
            slots_used: link.training_slots(),
            feedback_slots: link.feedback_slots(),
            decoded_bits: bits,
            success: truth == selected_index,
        }
    }
}

fn check_antennas<R: Rng>(link: &TrainingLink<'_, R>, codebook: &Codebook) -> Result<()> {
    if codebook.n_antennas != link.n_antennas() {
        return Err(Error::invalid(format!(
            "codebook built for N_T = {}, channel has {} antennas",
            codebook.n_antennas,
            link.n_antennas()
        )));
    }
    Ok(())
}

/// `log2(1 + P γ² |h w|² / σ²)`.
pub fn achievable_rate(
    channel: &ChannelRealization,
    budget: &LinkBudget,
    weights: &[crate::Complex64],
) -> Result<f64> {
    Ok((1.0 + budget.snr() * channel.response(weights)?.norm_sqr()).log2())
}

/// Every codebook the schemes need for one array size, built on first use.
pub struct TrainingCodebooks {
    synth: BeamSynthesizer,
    dft: Codebook,
    conv_pattern: Option<SpaceTimeBeamPattern>,
    conv_columns: OnceLock<Vec<Vec<Bit>>>,
    conv: OnceLock<Codebook>,
    hierarchical: OnceLock<Codebook>,
    hamming: OnceLock<Codebook>,
}

impl TrainingCodebooks {
    pub fn new(n_antennas: usize, params: SynthesisParams) -> Result<Self> {
        let b = exact_log2(n_antennas).filter(|&b| b >= 1).ok_or_else(|| {
            Error::invalid(format!("N_T = {n_antennas} is not a power of two >= 2"))
        })?;
        Ok(Self {
            synth: BeamSynthesizer::new(n_antennas, params)?,
            dft: Codebook::dft(n_antennas)?,
            conv_pattern: if b >= 2 {
                Some(conv_pattern(b - 1)?)
            } else {
                None
            },
            conv_columns: OnceLock::new(),
            conv: OnceLock::new(),
            hierarchical: OnceLock::new(),
            hamming: OnceLock::new(),
        })
    }

    pub fn n_antennas(&self) -> usize {
        self.dft.n_antennas
    }

    pub fn synthesizer(&self) -> &BeamSynthesizer {
        &self.synth
    }

    pub fn dft(&self) -> &Codebook {
        &self.dft
    }

    /// `None` for `N_T = 2`, where there is nothing to encode.
    pub fn conv_pattern(&self) -> Option<&SpaceTimeBeamPattern> {
        self.conv_pattern.as_ref()
    }

    pub fn conv_columns(&self) -> &[Vec<Bit>] {
        self.conv_columns.get_or_init(|| {
            self.conv_pattern
                .as_ref()
                .map(|p| p.columns())
                .unwrap_or_default()
        })
    }

    pub fn conv(&self) -> Result<&Codebook> {
        init(&self.conv, || match &self.conv_pattern {
            Some(p) => Codebook::from_pattern(p, &self.synth),
            None => Ok(Codebook {
                layers: Vec::new(),
                ..self.dft.clone()
            }),
        })
    }

    pub fn hierarchical(&self) -> Result<&Codebook> {
        init(&self.hierarchical, || Codebook::hierarchical(&self.synth))
    }

    pub fn hamming(&self) -> Result<&Codebook> {
        if self.n_antennas() != 16 {
            return Err(Error::invalid(
                "Hamming training is defined for N_T = 16 only",
            ));
        }
        init(&self.hamming, || {
            Codebook::from_pattern(&hamming_pattern(), &self.synth)
        })
    }

    /// Builds every codebook `scheme` uses up front.
    pub fn prepare(&self, scheme: Scheme) -> Result<()> {
        match scheme {
            Scheme::Exhaustive => Ok(()),
            Scheme::Hierarchical => self.hierarchical().map(drop),
            Scheme::Hamming => self.hamming().map(drop),
            Scheme::FixedCoded(_)
            | Scheme::AdaptiveCoded(_)
            | Scheme::MlCoded
            | Scheme::AdaptiveMlCoded => {
                self.conv_columns();
                self.conv().map(drop)
            }
        }
    }
}

fn init<T>(cell: &OnceLock<T>, build: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = build()?;
    Ok(cell.get_or_init(|| v))
}

/// Runs one scheme and checks its slot accounting against [`overhead`].
pub fn run_scheme<R: Rng>(
    scheme: Scheme,
    link: &mut TrainingLink<'_, R>,
    books: &TrainingCodebooks,
) -> Result<TrainingOutcome> {
    let outcome = match scheme {
        Scheme::Exhaustive => exhaustive_sweep(link, books.dft())?,
        Scheme::Hierarchical => binary_hierarchical(link, books.hierarchical()?)?,
        Scheme::Hamming => hamming_training(link, books.hamming()?)?,
        Scheme::FixedCoded(kind) => {
            coded_training(link, books, CodedMode::Fixed, CodedDecoder::Viterbi(kind))?
        }
        Scheme::AdaptiveCoded(kind) => coded_training(
            link,
            books,
            CodedMode::Adaptive,
            CodedDecoder::Viterbi(kind),
        )?,
        Scheme::MlCoded => coded_training(link, books, CodedMode::Fixed, CodedDecoder::Ml)?,
        Scheme::AdaptiveMlCoded => {
            coded_training(link, books, CodedMode::Adaptive, CodedDecoder::Ml)?
        }
    };
    let expected = overhead(scheme, link.n_antennas())?;
    assert_eq!(
        (outcome.slots_used, outcome.feedback_slots),
        expected,
        "{scheme} slot accounting"
    );
    Ok(outcome)
}
