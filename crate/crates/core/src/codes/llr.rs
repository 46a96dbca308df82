//! Per-layer log-likelihood ratios for "direction covered" vs "not covered".
//!
//! A covered layer sees `|A + n|²`, an uncovered one `|n|²`, with
//! `n ~ CN(0, σ²)`. The exact ratio of the noncentral and central
//! chi-squared densities (two degrees of freedom) is
//! `-A²/σ² + log I₀(2·sqrt(A²x)/σ²)`.

use super::bessel::log_i0_unchecked;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LlrKind {
    #[default]
    ChiSquared,
    /// Mismatched decoder that treats powers as Gaussian with means σ²
    /// and σ² + A² and common variance σ⁴.
    Gaussian,
}

impl LlrKind {
    pub fn name(self) -> &'static str {
        match self {
            LlrKind::ChiSquared => "chi2",
            LlrKind::Gaussian => "gaussian",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chi2" | "chi-squared" | "chisquared" => Some(LlrKind::ChiSquared),
            "gaussian" | "gauss" => Some(LlrKind::Gaussian),
            _ => None,
        }
    }
}

fn check(power: f64, amplitude: f64, noise_power: f64) -> Result<()> {
    if !(noise_power > 0.0) {
        return Err(Error::invalid(format!(
            "noise power must be positive, got {noise_power}"
        )));
    }
    if !(amplitude >= 0.0) {
        return Err(Error::invalid(format!(
            "amplitude must be nonnegative, got {amplitude}"
        )));
    }
    if !(power >= 0.0) {
        return Err(Error::invalid(format!(
            "received power must be nonnegative, got {power}"
        )));
    }
    Ok(())
}

pub fn chi2_llr(power: f64, amplitude: f64, noise_power: f64) -> Result<f64> {
    check(power, amplitude, noise_power)?;
    Ok(chi2_unchecked(power, amplitude, noise_power))
}

fn chi2_unchecked(power: f64, amplitude: f64, noise_power: f64) -> f64 {
    let a2 = amplitude * amplitude;
    -a2 / noise_power + log_i0_unchecked(2.0 * (a2 * power).sqrt() / noise_power)
}

/// `(x − σ² − A²/2) · A² / σ⁴`.
pub fn gaussian_llr(power: f64, amplitude: f64, noise_power: f64) -> Result<f64> {
    check(power, amplitude, noise_power)?;
    Ok(gaussian_unchecked(power, amplitude, noise_power))
}

fn gaussian_unchecked(power: f64, amplitude: f64, noise_power: f64) -> f64 {
    let a2 = amplitude * amplitude;
    (power - noise_power - 0.5 * a2) * a2 / (noise_power * noise_power)
}

/// LLR calculator for one layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LlrModel {
    kind: LlrKind,
    amplitude: f64,
    noise_power: f64,
}

impl LlrModel {
    pub fn new(kind: LlrKind, amplitude: f64, noise_power: f64) -> Result<Self> {
        check(0.0, amplitude, noise_power)?;
        Ok(Self {
            kind,
            amplitude,
            noise_power,
        })
    }

    pub fn kind(&self) -> LlrKind {
        self.kind
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn llr(&self, power: f64) -> Result<f64> {
        if !(power >= 0.0) {
            return Err(Error::invalid(format!(
                "received power must be nonnegative, got {power}"
            )));
        }
        Ok(match self.kind {
            LlrKind::ChiSquared => chi2_unchecked(power, self.amplitude, self.noise_power),
            LlrKind::Gaussian => gaussian_unchecked(power, self.amplitude, self.noise_power),
        })
    }
}
