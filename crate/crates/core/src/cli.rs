//! Command-line front end: `synthesize`, `simulate`, `sweep` and
//! `ablate-decoder`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::codes::LlrKind;
use crate::harness::{
    decoder_ablation, parse_scheme, range_grid, run_experiment, write_csv, ExperimentConfig, Grid,
    MetricsRow,
};
use crate::pattern::{conv_pattern, hamming_pattern};
use crate::protocols::CodedMode;
use crate::synthesis::{coverage_contrast_db, BeamSynthesizer, Codebook, SynthesisParams};
use crate::{exact_log2, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "coded-beam", version, about = "Coded beam training simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a codebook and write it in the binary codebook format.
    Synthesize(SynthesizeArgs),
    /// Run one experiment (a config file and/or a single SNR or distance).
    Simulate(SimulateArgs),
    /// Run schemes over an SNR or distance range.
    Sweep(SweepArgs),
    /// Compare chi-squared, Gaussian and ML decoding on shared measurements.
    AblateDecoder(AblateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    Hamming,
    Conv,
    Hierarchical,
    Dft,
}

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    #[arg(long, default_value_t = 128)]
    pub antennas: usize,
    #[arg(long, value_enum, default_value_t = CodeKind::Conv)]
    pub code: CodeKind,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Manifold samples per antenna.
    #[arg(long, default_value_t = crate::synthesis::DEFAULT_OVERSAMPLING)]
    pub oversampling: usize,
    #[arg(long, default_value_t = crate::synthesis::DEFAULT_MAX_ITERS)]
    pub iters: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the 0/1 beam pattern as text.
    #[arg(long)]
    pub pattern_out: Option<PathBuf>,
}

/// Options shared by the experiment subcommands; they override the config.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// `key = value` experiment config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Scheme name; repeat or comma-separate for several.
    #[arg(long = "scheme", value_delimiter = ',')]
    pub schemes: Vec<String>,
    #[arg(long)]
    pub antennas: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// `chi2` or `gaussian`, used by `fixed-coded` and `adaptive-coded`.
    #[arg(long)]
    pub llr: Option<String>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// CSV destination; stdout when absent here and in the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "distance_m")]
    pub snr_db: Option<f64>,
    #[arg(long)]
    pub distance_m: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, allow_negative_numbers = true, requires_all = ["snr_to", "snr_step"], conflicts_with = "dist_from")]
    pub snr_from: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "snr_from")]
    pub snr_to: Option<f64>,
    #[arg(long, requires = "snr_from")]
    pub snr_step: Option<f64>,
    #[arg(long, requires_all = ["dist_to", "dist_step"])]
    pub dist_from: Option<f64>,
    #[arg(long, requires = "dist_from")]
    pub dist_to: Option<f64>,
    #[arg(long, requires = "dist_from")]
    pub dist_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub range: RangeArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fixed,
    Adaptive,
}

#[derive(Debug, Args)]
pub struct AblateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Adaptive)]
    pub mode: ModeArg,
}

impl CommonArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(n) = self.antennas {
            cfg.n_antennas = n;
        }
        if let Some(t) = self.trials {
            cfg.n_trials = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.threads {
            cfg.threads = Some(t);
        }
        if let Some(kind) = &self.llr {
            cfg.llr_kind = LlrKind::parse(kind).ok_or_else(|| {
                Error::Config(format!("--llr: expected chi2 or gaussian, got {kind:?}"))
            })?;
        }
        if !self.schemes.is_empty() {
            cfg.schemes = self
                .schemes
                .iter()
                .map(|s| parse_scheme(s, cfg.llr_kind))
                .collect::<Result<_>>()?;
        }
        if let Some(out) = &self.out {
            cfg.output = Some(out.clone());
        }
        Ok(cfg)
    }
}

impl RangeArgs {
    fn grid(&self) -> Result<Option<Grid>> {
        match (self.snr_from, self.dist_from) {
            (Some(a), _) => Ok(Some(Grid::SnrDb(range_grid(
                a,
                self.snr_to.unwrap_or(a),
                self.snr_step.unwrap_or(1.0),
            )?))),
            (None, Some(a)) => Ok(Some(Grid::DistanceM(range_grid(
                a,
                self.dist_to.unwrap_or(a),
                self.dist_step.unwrap_or(1.0),
            )?))),
            (None, None) => Ok(None),
        }
    }
}

fn emit(rows: &[MetricsRow], cfg: &ExperimentConfig) -> Result<()> {
    match &cfg.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(rows, &mut w)?;
            w.flush()?;
        }
        None => write_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

fn synthesize(args: &SynthesizeArgs) -> Result<()> {
    let n = args.antennas;
    let bits = exact_log2(n)
        .filter(|&b| b >= 2)
        .ok_or_else(|| Error::Config(format!("--antennas {n} is not a power of two >= 4")))?;
    let synth = BeamSynthesizer::new(
        n,
        SynthesisParams {
            oversampling: args.oversampling,
            max_iters: args.iters,
            seed: args.seed,
        },
    )?;
    let (codebook, pattern) = match args.code {
        CodeKind::Hamming => {
            if n != 16 {
                return Err(Error::Config("--code hamming needs --antennas 16".into()));
            }
            let p = hamming_pattern();
            (Codebook::from_pattern(&p, &synth)?, Some(p))
        }
        CodeKind::Conv => {
            let p = conv_pattern(bits - 1)?;
            (Codebook::from_pattern(&p, &synth)?, Some(p))
        }
        CodeKind::Hierarchical => (Codebook::hierarchical(&synth)?, None),
        CodeKind::Dft => (Codebook::dft(n)?, None),
    };
    let mut w = BufWriter::new(File::create(&args.out)?);
    codebook.write_to(&mut w)?;
    w.flush()?;
    if let (Some(path), Some(p)) = (&args.pattern_out, &pattern) {
        std::fs::write(path, p.to_text())?;
    }

    let worst = codebook
        .layers
        .iter()
        .flatten()
        .map(|cw| coverage_contrast_db(&cw.weights, &cw.coverage, 16 * n))
        .fold(f64::INFINITY, f64::min);
    eprintln!(
        "wrote {} codewords in {} layers to {} (worst in/out contrast {:.1} dB)",
        codebook.n_codewords(),
        codebook.layers.len(),
        args.out.display(),
        worst
    );
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synthesize(args) => synthesize(&args),
        Command::Simulate(args) => {
            let mut cfg = args.common.config()?;
            if let Some(s) = args.snr_db {
                cfg.grid = Grid::SnrDb(vec![s]);
            }
            if let Some(d) = args.distance_m {
                cfg.grid = Grid::DistanceM(vec![d]);
            }
            emit(&run_experiment(&cfg)?, &cfg)
        }
        Command::Sweep(args) => {
            let mut cfg = args.common.config()?;
            if let Some(g) = args.range.grid()? {
                cfg.grid = g;
            }
            emit(&run_experiment(&cfg)?, &cfg)
        }
        Command::AblateDecoder(args) => {
            let mut cfg = args.common.config()?;
            if let Some(g) = args.range.grid()? {
                cfg.grid = g;
            }
            let mode = match args.mode {
                ModeArg::Fixed => CodedMode::Fixed,
                ModeArg::Adaptive => CodedMode::Adaptive,
            };
            emit(&decoder_ablation(&cfg, mode)?, &cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from([
            "coded-beam",
            "sweep",
            "--scheme",
            "exhaustive,adaptive-coded",
            "--snr-from",
            "-4",
            "--snr-to",
            "4",
            "--snr-step",
            "2",
            "--trials",
            "10",
        ])
        .unwrap();
        let Command::Sweep(args) = cli.command else {
            panic!()
        };
        let cfg = args.common.config().unwrap();
        assert_eq!(cfg.schemes.len(), 2);
        assert_eq!(cfg.n_trials, 10);
        assert_eq!(
            args.range.grid().unwrap(),
            Some(Grid::SnrDb(vec![-4.0, -2.0, 0.0, 2.0, 4.0]))
        );

        assert!(Cli::try_parse_from(["coded-beam", "sweep", "--snr-from", "0"]).is_err());
        assert!(Cli::try_parse_from([
            "coded-beam",
            "simulate",
            "--snr-db",
            "0",
            "--distance-m",
            "5"
        ])
        .is_err());
        let cli = Cli::try_parse_from(["coded-beam", "ablate-decoder", "--mode", "fixed"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::AblateDecoder(AblateArgs {
                mode: ModeArg::Fixed,
                ..
            })
        ));
    }

    #[test]
    fn bad_scheme_is_a_config_error() {
        let cli = Cli::try_parse_from(["coded-beam", "simulate", "--scheme", "nope"]).unwrap();
        assert!(matches!(run(cli), Err(Error::Config(_))));
    }
}
