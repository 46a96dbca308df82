//! Coverage distance: success versus user distance with a 40 dBm, 3.5 GHz
//! link budget, and the distance at which each scheme drops below 75%.

use coded_beam::codes::LlrKind;
use coded_beam::harness::{crossing_point, distance_sweep, ExperimentConfig, Grid};
use coded_beam::protocols::Scheme;

fn main() -> coded_beam::Result<()> {
    let cfg = ExperimentConfig {
        n_antennas: 128,
        schemes: vec![
            Scheme::Exhaustive,
            Scheme::Hierarchical,
            Scheme::AdaptiveCoded(LlrKind::ChiSquared),
        ],
        grid: Grid::DistanceM((0..=8).map(|i| 1.0e5 + 5.0e4 * i as f64).collect()),
        n_trials: 500,
        ..Default::default()
    };
    let rows = distance_sweep(&cfg)?;
    for r in &rows {
        println!(
            "{:<16} {:>7.0} m  success {:.3}  rate {:.2}",
            r.scheme, r.point_value, r.success_rate, r.mean_rate
        );
    }
    for s in &cfg.schemes {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.scheme == s.name())
            .map(|r| (r.point_value, r.success_rate))
            .collect();
        match crossing_point(&pts, 0.75) {
            Some(d) => println!("{s}: 75% success out to {:.0} km", d / 1e3),
            None => println!("{s}: above 75% across the grid"),
        }
    }
    Ok(())
}
