//! Success rate and achievable rate versus SNR for the four main schemes
//! at 128 antennas, written as CSV to stdout.
//!
//! `cargo run --release --example snr_sweep -- 2000` for more trials.

use coded_beam::codes::LlrKind;
use coded_beam::harness::{run_experiment, write_csv, ExperimentConfig, Grid};
use coded_beam::protocols::Scheme;

fn main() -> coded_beam::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(300);
    let cfg = ExperimentConfig {
        n_antennas: 128,
        schemes: vec![
            Scheme::Exhaustive,
            Scheme::Hierarchical,
            Scheme::FixedCoded(LlrKind::ChiSquared),
            Scheme::AdaptiveCoded(LlrKind::ChiSquared),
        ],
        grid: Grid::SnrDb((-5..=3).map(|i| 2.0 * i as f64).collect()),
        n_trials: trials,
        ..Default::default()
    };
    write_csv(&run_experiment(&cfg)?, std::io::stdout().lock())
}
