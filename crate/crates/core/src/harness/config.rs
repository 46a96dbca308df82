use std::collections::HashSet;
use std::path::PathBuf;

use crate::codes::LlrKind;
use crate::protocols::Scheme;
use crate::synthesis::{DEFAULT_MAX_ITERS, DEFAULT_OVERSAMPLING};
use crate::{exact_log2, Error, Result};

/// Operating points of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// Per-antenna transmit SNR `P/σ²` in dB, no pathloss.
    SnrDb(Vec<f64>),
    /// UE distance in metres under free-space pathloss.
    DistanceM(Vec<f64>),
}

impl Grid {
    pub fn kind(&self) -> &'static str {
        match self {
            Grid::SnrDb(_) => "snr_db",
            Grid::DistanceM(_) => "distance_m",
        }
    }

    pub fn values(&self) -> &[f64] {
        match self {
            Grid::SnrDb(v) | Grid::DistanceM(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_antennas: usize,
    pub schemes: Vec<Scheme>,
    pub grid: Grid,
    pub n_trials: usize,
    pub seed: u64,
    /// Seed of the GS phase initialisation, shared by all trials.
    pub codebook_seed: u64,
    /// Metric used by `fixed-coded` and `adaptive-coded`.
    pub llr_kind: LlrKind,
    pub carrier_frequency: f64,
    pub transmit_power_dbm: f64,
    pub noise_power_dbm: f64,
    /// Carried for completeness; the narrowband model ignores it.
    pub bandwidth: f64,
    /// Carried for completeness; the narrowband model ignores it.
    pub n_subcarriers: usize,
    pub oversampling: usize,
    pub gs_iters: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_antennas: 128,
            schemes: vec![
                Scheme::Exhaustive,
                Scheme::Hierarchical,
                Scheme::FixedCoded(LlrKind::ChiSquared),
                Scheme::AdaptiveCoded(LlrKind::ChiSquared),
            ],
            grid: Grid::SnrDb(vec![-10.0, -8.0, -6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0]),
            n_trials: 1000,
            seed: 1,
            codebook_seed: 7,
            llr_kind: LlrKind::ChiSquared,
            carrier_frequency: 3.5e9,
            transmit_power_dbm: 40.0,
            noise_power_dbm: -110.0,
            bandwidth: 50e6,
            n_subcarriers: 1024,
            oversampling: DEFAULT_OVERSAMPLING,
            gs_iters: DEFAULT_MAX_ITERS,
            threads: None,
            output: None,
        }
    }
}

/// Inclusive arithmetic grid; the end point is kept when it is hit to
/// within a millionth of a step.
pub fn range_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 || to < from {
        return Err(Error::config(format!(
            "bad grid {from}..{to} step {step}: need from <= to and step > 0"
        )));
    }
    let n = ((to - from) / step + 1e-6).floor() as usize;
    if n > 100_000 {
        return Err(Error::config("grid has more than 100000 points"));
    }
    Ok((0..=n).map(|i| from + i as f64 * step).collect())
}

/// Scheme name as written in configs; the two generic coded names pick up
/// the configured LLR kind.
pub fn parse_scheme(name: &str, llr_kind: LlrKind) -> Result<Scheme> {
    match Scheme::parse(name) {
        Some(Scheme::FixedCoded(LlrKind::ChiSquared)) => Ok(Scheme::FixedCoded(llr_kind)),
        Some(Scheme::AdaptiveCoded(LlrKind::ChiSquared)) => Ok(Scheme::AdaptiveCoded(llr_kind)),
        Some(s) => Ok(s),
        None => Err(Error::config(format!(
            "unknown scheme {name:?}; expected one of {}",
            Scheme::ALL.map(Scheme::name).join(", ")
        ))),
    }
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split(',').map(|s| parse_num(key, s)).collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("{key}: cannot parse {:?}", value.trim())))
}

impl ExperimentConfig {
    /// Parses flat `key = value` lines. `#` starts a comment. Grids are
    /// given as `snr_grid = -4, 0, 4` or `snr_from`/`snr_to`/`snr_step`
    /// (likewise `distance_grid` or `dist_from`/`dist_to`/`dist_step`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        let mut schemes: Option<Vec<String>> = None;
        let mut snr_list = None;
        let mut dist_list = None;
        let mut snr_range = [None; 3];
        let mut dist_range = [None; 3];

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::config(format!(
                    "line {}: duplicate key {key}",
                    lineno + 1
                )));
            }
            match key {
                "n_antennas" => cfg.n_antennas = parse_num(key, value)?,
                "schemes" => {
                    schemes = Some(value.split(',').map(|s| s.trim().to_string()).collect())
                }
                "snr_grid" => snr_list = Some(parse_list(key, value)?),
                "distance_grid" => dist_list = Some(parse_list(key, value)?),
                "snr_from" => snr_range[0] = Some(parse_num(key, value)?),
                "snr_to" => snr_range[1] = Some(parse_num(key, value)?),
                "snr_step" => snr_range[2] = Some(parse_num(key, value)?),
                "dist_from" => dist_range[0] = Some(parse_num(key, value)?),
                "dist_to" => dist_range[1] = Some(parse_num(key, value)?),
                "dist_step" => dist_range[2] = Some(parse_num(key, value)?),
                "n_trials" => cfg.n_trials = parse_num(key, value)?,
                "seed" => cfg.seed = parse_num(key, value)?,
                "codebook_seed" => cfg.codebook_seed = parse_num(key, value)?,
                "llr_kind" => {
                    cfg.llr_kind = LlrKind::parse(value).ok_or_else(|| {
                        Error::config(format!(
                            "llr_kind: expected chi2 or gaussian, got {value:?}"
                        ))
                    })?
                }
                "carrier_frequency" => cfg.carrier_frequency = parse_num(key, value)?,
                "transmit_power_dbm" => cfg.transmit_power_dbm = parse_num(key, value)?,
                "noise_power_dbm" => cfg.noise_power_dbm = parse_num(key, value)?,
                "bandwidth" => cfg.bandwidth = parse_num(key, value)?,
                "n_subcarriers" => cfg.n_subcarriers = parse_num(key, value)?,
                "oversampling" => cfg.oversampling = parse_num(key, value)?,
                "gs_iters" => cfg.gs_iters = parse_num(key, value)?,
                "threads" => cfg.threads = Some(parse_num(key, value)?),
                "output" => cfg.output = Some(PathBuf::from(value)),
                _ => {
                    return Err(Error::config(format!(
                        "line {}: unknown key {key:?}",
                        lineno + 1
                    )))
                }
            }
        }

        if let Some(names) = schemes {
            cfg.schemes = names
                .iter()
                .map(|n| parse_scheme(n, cfg.llr_kind))
                .collect::<Result<_>>()?;
        } else {
            cfg.schemes = cfg
                .schemes
                .iter()
                .map(|s| parse_scheme(s.name(), cfg.llr_kind))
                .collect::<Result<_>>()?;
        }

        let snr = grid_from(snr_list, snr_range, "snr")?;
        let dist = grid_from(dist_list, dist_range, "dist")?;
        match (snr, dist) {
            (Some(_), Some(_)) => {
                return Err(Error::config(
                    "set either an SNR grid or a distance grid, not both",
                ))
            }
            (Some(v), None) => cfg.grid = Grid::SnrDb(v),
            (None, Some(v)) => cfg.grid = Grid::DistanceM(v),
            (None, None) => {}
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if exact_log2(self.n_antennas).is_none_or(|b| b < 1) {
            return Err(Error::config(format!(
                "n_antennas = {} is not a power of two >= 2",
                self.n_antennas
            )));
        }
        if self.n_trials == 0 {
            return Err(Error::config("n_trials must be at least 1"));
        }
        if self.schemes.is_empty() {
            return Err(Error::config("no schemes selected"));
        }
        if self.schemes.contains(&Scheme::Hamming) && self.n_antennas != 16 {
            return Err(Error::config("the hamming scheme needs n_antennas = 16"));
        }
        let values = self.grid.values();
        if values.is_empty() {
            return Err(Error::config("operating grid is empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("operating grid has non-finite values"));
        }
        if let Grid::DistanceM(d) = &self.grid {
            if d.iter().any(|&x| x <= 0.0) {
                return Err(Error::config("distances must be positive"));
            }
            if !(self.carrier_frequency > 0.0) {
                return Err(Error::config("carrier_frequency must be positive"));
            }
            if !(self.transmit_power_dbm.is_finite() && self.noise_power_dbm.is_finite()) {
                return Err(Error::config("transmit and noise powers must be finite"));
            }
        }
        if self.oversampling == 0 || self.gs_iters == 0 {
            return Err(Error::config(
                "oversampling and gs_iters must be at least 1",
            ));
        }
        if self.threads == Some(0) {
            return Err(Error::config("threads must be at least 1"));
        }
        Ok(())
    }
}

fn grid_from(
    list: Option<Vec<f64>>,
    range: [Option<f64>; 3],
    prefix: &str,
) -> Result<Option<Vec<f64>>> {
    match (list, range) {
        (Some(_), r) if r.iter().any(Option::is_some) => Err(Error::config(format!(
            "give either a {prefix} list or a {prefix} range, not both"
        ))),
        (Some(v), _) => Ok(Some(v)),
        (None, [None, None, None]) => Ok(None),
        (None, [Some(a), Some(b), Some(s)]) => range_grid(a, b, s).map(Some),
        (None, _) => Err(Error::config(format!(
            "{prefix} range needs {prefix}_from, {prefix}_to and {prefix}_step"
        ))),
    }
}
