//! Monte Carlo driver: runs schemes over an SNR or distance grid and
//! reports success rate and achievable rate per operating point.
//!
//! Randomness is derived per trial, never shared between trials:
//!
//! - the channel (direction and path phase) of trial `t` at point `p` comes
//!   from `(seed, p, t)` only, so every scheme sees the same channels,
//! - the receiver noise comes from `(seed, stream, p, t)`, where the stream
//!   is the scheme's id (or one shared id in [`decoder_ablation`], so the
//!   decoders compared there see identical measurements).
//!
//! Per-trial results are collected in trial order and summed sequentially,
//! so output does not depend on the number of worker threads.

mod config;
mod metrics;

pub use config::{parse_scheme, range_grid, ExperimentConfig, Grid};
pub use metrics::{read_csv, write_csv, MetricsRow, CSV_HEADER};

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::array::{dbm_to_watts, los_channel, LinkBudget};
use crate::codes::LlrKind;
use crate::protocols::{
    achievable_rate, overhead, run_scheme, CodedMode, Scheme, TrainingCodebooks, TrainingLink,
    TrainingOutcome,
};
use crate::synthesis::SynthesisParams;
use crate::{Error, Result};

const CHANNEL_STREAM: u64 = 0;
const NOISE_STREAM_BASE: u64 = 1;
/// Noise stream shared by the decoders of an ablation run.
const ABLATION_STREAM: u64 = 1000;

/// One Monte Carlo realization.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub direction: f64,
    pub outcome: TrainingOutcome,
    pub rate: f64,
}

fn rng_for(words: [u64; 4]) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    for (chunk, w) in seed.chunks_exact_mut(8).zip(words) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Link budget of one grid point.
pub fn point_budget(config: &ExperimentConfig, value: f64) -> Result<LinkBudget> {
    match config.grid {
        Grid::SnrDb(_) => Ok(LinkBudget::normalized(value)),
        Grid::DistanceM(_) => LinkBudget::at_distance(
            dbm_to_watts(config.transmit_power_dbm),
            dbm_to_watts(config.noise_power_dbm),
            config.carrier_frequency,
            value,
        ),
    }
}

/// Runs trial `t` of `scheme` at grid point `point`.
pub fn run_trial(
    config: &ExperimentConfig,
    books: &TrainingCodebooks,
    scheme: Scheme,
    stream: u64,
    point: usize,
    budget: &LinkBudget,
    t: usize,
) -> Result<TrialRecord> {
    let mut chan_rng = rng_for([config.seed, CHANNEL_STREAM, point as u64, t as u64]);
    let direction = chan_rng.random_range(-1.0..1.0);
    let beta = Complex64::from_polar(1.0, chan_rng.random_range(0.0..2.0 * PI));
    let channel = los_channel(beta, direction, config.n_antennas)?;
    let noise_rng = rng_for([config.seed, stream, point as u64, t as u64]);
    let mut link = TrainingLink::new(&channel, budget, noise_rng);
    let outcome = run_scheme(scheme, &mut link, books)?;
    let rate = achievable_rate(
        &channel,
        budget,
        &books.dft().layers[0][outcome.selected_index].weights,
    )?;
    Ok(TrialRecord {
        direction,
        outcome,
        rate,
    })
}

fn aggregate(
    scheme: Scheme,
    kind: &str,
    value: f64,
    n_antennas: usize,
    trials: &[TrialRecord],
) -> Result<MetricsRow> {
    let n = trials.len();
    let successes = trials.iter().filter(|r| r.outcome.success).count();
    let mean = trials.iter().map(|r| r.rate).sum::<f64>() / n as f64;
    let se = if n > 1 {
        let var = trials.iter().map(|r| (r.rate - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    let (slots, feedback) = overhead(scheme, n_antennas)?;
    Ok(MetricsRow {
        scheme: scheme.name().to_string(),
        point_kind: kind.to_string(),
        point_value: value,
        n_trials: n,
        successes,
        success_rate: successes as f64 / n as f64,
        mean_rate: mean,
        se_rate: se,
        slots,
        feedback_slots: feedback,
    })
}

fn run_with_streams(
    config: &ExperimentConfig,
    stream_of: impl Fn(Scheme) -> u64 + Sync,
) -> Result<Vec<MetricsRow>> {
    config.validate()?;
    let books = TrainingCodebooks::new(
        config.n_antennas,
        SynthesisParams {
            oversampling: config.oversampling,
            max_iters: config.gs_iters,
            seed: config.codebook_seed,
        },
    )?;
    for &s in &config.schemes {
        books.prepare(s)?;
    }
    let work = || -> Result<Vec<MetricsRow>> {
        let mut rows = Vec::new();
        for &scheme in &config.schemes {
            for (p, &value) in config.grid.values().iter().enumerate() {
                let budget = point_budget(config, value)?;
                let trials = (0..config.n_trials)
                    .into_par_iter()
                    .map(|t| run_trial(config, &books, scheme, stream_of(scheme), p, &budget, t))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(aggregate(
                    scheme,
                    config.grid.kind(),
                    value,
                    config.n_antennas,
                    &trials,
                )?);
            }
        }
        Ok(rows)
    };
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::config(format!("cannot start {n} worker threads: {e}")))?
            .install(work),
        None => work(),
    }
}

/// One row per `(scheme, grid point)`, schemes outermost.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    run_with_streams(config, |s| NOISE_STREAM_BASE + s.id())
}

/// [`run_experiment`] for configs with a distance grid.
pub fn distance_sweep(config: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    if !matches!(config.grid, Grid::DistanceM(_)) {
        return Err(Error::config("distance sweep needs a distance grid"));
    }
    run_experiment(config)
}

/// The three coded schemes a decoder ablation compares in `mode`:
/// chi-squared Viterbi, Gaussian Viterbi and exhaustive ML.
pub fn ablation_schemes(mode: CodedMode) -> [Scheme; 3] {
    match mode {
        CodedMode::Fixed => [
            Scheme::FixedCoded(LlrKind::ChiSquared),
            Scheme::FixedCoded(LlrKind::Gaussian),
            Scheme::MlCoded,
        ],
        CodedMode::Adaptive => [
            Scheme::AdaptiveCoded(LlrKind::ChiSquared),
            Scheme::AdaptiveCoded(LlrKind::Gaussian),
            Scheme::AdaptiveMlCoded,
        ],
    }
}

/// Runs [`ablation_schemes`] on one shared noise stream, so every decoder
/// sees the same channels and, as long as the beams agree, the same noise.
pub fn decoder_ablation(config: &ExperimentConfig, mode: CodedMode) -> Result<Vec<MetricsRow>> {
    let config = ExperimentConfig {
        schemes: ablation_schemes(mode).to_vec(),
        ..config.clone()
    };
    run_with_streams(&config, |_| ABLATION_STREAM)
}

/// Distance at which a success-rate curve first falls below `threshold`,
/// linearly interpolated between grid points. `None` if it never does;
/// the first grid point if it starts below.
pub fn crossing_point(points: &[(f64, f64)], threshold: f64) -> Option<f64> {
    let first = points.first()?;
    if first.1 < threshold {
        return Some(first.0);
    }
    points.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        (y1 < threshold).then(|| x0 + (y0 - threshold) / (y0 - y1) * (x1 - x0))
    })
}
