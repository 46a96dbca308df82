//! Chi-squared vs Gaussian LLRs vs exhaustive ML on identical measurements.

use coded_beam::harness::{decoder_ablation, ExperimentConfig, Grid};
use coded_beam::protocols::CodedMode;

fn main() -> coded_beam::Result<()> {
    let cfg = ExperimentConfig {
        n_antennas: 128,
        grid: Grid::SnrDb((-5..=0).map(f64::from).collect()),
        n_trials: 500,
        ..Default::default()
    };
    for mode in [CodedMode::Adaptive, CodedMode::Fixed] {
        println!("{mode:?} beams:");
        for r in decoder_ablation(&cfg, mode)? {
            println!(
                "  {:<24} {:>5} dB  {:.3}",
                r.scheme, r.point_value, r.success_rate
            );
        }
    }
    Ok(())
}
