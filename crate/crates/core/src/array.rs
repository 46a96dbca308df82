//! Uniform linear array manifold, line-of-sight channel and received power.
//!
//! Conventions used throughout the crate:
//!
//! - a steering vector `α(φ)` is a *row* vector with entries
//!   `exp(-jπkφ)/sqrt(N_T)`,
//! - a channel is the row vector `h = sqrt(N_T) · β · α(φ)`,
//! - a beamformer (codeword) `w` is a *column* vector applied as `h · w`
//!   without conjugation, so the beamformer pointing at `φ` is `α(φ)ᴴ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Unit-norm ULA response toward one spatial direction.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    entries: Vec<Complex64>,
    direction: f64,
}

impl SteeringVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn direction(&self) -> f64 {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The beamformer `α(φ)ᴴ` that points at this direction.
    pub fn beamformer(&self) -> Vec<Complex64> {
        self.entries.iter().map(|z| z.conj()).collect()
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }
}

/// `α(φ)` for an `n_antennas`-element half-wavelength ULA.
pub fn steering_vector(phi: f64, n_antennas: usize) -> Result<SteeringVector> {
    if n_antennas == 0 {
        return Err(Error::invalid("array needs at least one antenna"));
    }
    if !(-1.0..=1.0).contains(&phi) {
        return Err(Error::invalid(format!(
            "spatial direction {phi} outside [-1, 1]"
        )));
    }
    Ok(SteeringVector {
        entries: steering_entries(phi, n_antennas),
        direction: phi,
    })
}

/// Unchecked steering entries; `phi` may be any real (the response is
/// 2-periodic in `phi`).
pub(crate) fn steering_entries(phi: f64, n_antennas: usize) -> Vec<Complex64> {
    let scale = 1.0 / (n_antennas as f64).sqrt();
    (0..n_antennas)
        .map(|k| Complex64::from_polar(scale, -PI * k as f64 * phi))
        .collect()
}

/// One channel draw: path gains, directions and the assembled row vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    gains: Vec<Complex64>,
    directions: Vec<f64>,
    row_vector: Vec<Complex64>,
}

impl ChannelRealization {
    /// `h = sqrt(N_T / L_0) Σ β_l α(φ_l)`.
    pub fn multipath(gains: &[Complex64], directions: &[f64], n_antennas: usize) -> Result<Self> {
        if gains.is_empty() || gains.len() != directions.len() {
            return Err(Error::invalid(
                "need one direction per path gain and at least one path",
            ));
        }
        let scale = (n_antennas as f64 / gains.len() as f64).sqrt();
        let mut row = vec![Complex64::new(0.0, 0.0); n_antennas];
        for (&beta, &phi) in gains.iter().zip(directions) {
            let alpha = steering_vector(phi, n_antennas)?;
            for (h, a) in row.iter_mut().zip(alpha.entries()) {
                *h += scale * beta * a;
            }
        }
        Ok(Self {
            gains: gains.to_vec(),
            directions: directions.to_vec(),
            row_vector: row,
        })
    }

    pub fn gains(&self) -> &[Complex64] {
        &self.gains
    }

    pub fn directions(&self) -> &[f64] {
        &self.directions
    }

    pub fn n_paths(&self) -> usize {
        self.gains.len()
    }

    pub fn row_vector(&self) -> &[Complex64] {
        &self.row_vector
    }

    pub fn n_antennas(&self) -> usize {
        self.row_vector.len()
    }

    /// Direction of the first (line-of-sight) path.
    pub fn los_direction(&self) -> f64 {
        self.directions[0]
    }

    /// `h · w`, no conjugation.
    pub fn response(&self, beamformer: &[Complex64]) -> Result<Complex64> {
        if beamformer.len() != self.row_vector.len() {
            return Err(Error::DimensionMismatch {
                expected: self.row_vector.len(),
                found: beamformer.len(),
            });
        }
        Ok(self
            .row_vector
            .iter()
            .zip(beamformer)
            .map(|(h, w)| h * w)
            .sum())
    }
}

/// Single-path line-of-sight channel `sqrt(N_T) · β · α(φ)`.
pub fn los_channel(beta: Complex64, phi: f64, n_antennas: usize) -> Result<ChannelRealization> {
    ChannelRealization::multipath(&[beta], &[phi], n_antennas)
}

/// Transmit power, receiver noise and large-scale attenuation of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    transmit_power: f64,
    noise_power: f64,
    pathloss_gain: f64,
    carrier_frequency: Option<f64>,
    distance: Option<f64>,
}

impl LinkBudget {
    /// Normalized-SNR link: `σ² = 1`, `γ = 1`, `P = 10^(snr_db/10)`.
    ///
    /// The SNR is per antenna; the array gain `N_T` of a matched beam shows
    /// up on top of it.
    pub fn normalized(snr_db: f64) -> Self {
        Self {
            transmit_power: db_to_linear(snr_db),
            noise_power: 1.0,
            pathloss_gain: 1.0,
            carrier_frequency: None,
            distance: None,
        }
    }

    /// Explicit powers in watts with unit pathloss gain.
    pub fn new(transmit_power: f64, noise_power: f64) -> Result<Self> {
        if !(transmit_power > 0.0 && noise_power > 0.0) {
            return Err(Error::invalid("powers must be strictly positive"));
        }
        Ok(Self {
            transmit_power,
            noise_power,
            pathloss_gain: 1.0,
            carrier_frequency: None,
            distance: None,
        })
    }

    /// Free-space link at `distance` meters; powers in watts.
    pub fn at_distance(
        transmit_power: f64,
        noise_power: f64,
        carrier_frequency: f64,
        distance: f64,
    ) -> Result<Self> {
        let mut budget = Self::new(transmit_power, noise_power)?;
        budget.pathloss_gain = pathloss_gain(distance, carrier_frequency)?;
        budget.carrier_frequency = Some(carrier_frequency);
        budget.distance = Some(distance);
        Ok(budget)
    }

    pub fn transmit_power(&self) -> f64 {
        self.transmit_power
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn pathloss_gain(&self) -> f64 {
        self.pathloss_gain
    }

    pub fn carrier_frequency(&self) -> Option<f64> {
        self.carrier_frequency
    }

    pub fn distance(&self) -> Option<f64> {
        self.distance
    }

    /// Received amplitude scale `sqrt(P) · γ`.
    pub fn amplitude_scale(&self) -> f64 {
        self.transmit_power.sqrt() * self.pathloss_gain
    }

    /// Per-antenna SNR `P γ² / σ²`.
    pub fn snr(&self) -> f64 {
        self.transmit_power * self.pathloss_gain.powi(2) / self.noise_power
    }
}

/// `y = sqrt(P) · γ · (h · w) + n` with the pilot symbol fixed to 1.
pub fn received_sample(
    channel: &ChannelRealization,
    beamformer: &[Complex64],
    budget: &LinkBudget,
    noise: Complex64,
) -> Result<Complex64> {
    Ok(budget.amplitude_scale() * channel.response(beamformer)? + noise)
}

pub fn received_power(sample: Complex64) -> f64 {
    sample.norm_sqr()
}

/// Free-space amplitude attenuation `λ / (4π d)`.
pub fn pathloss_gain(distance: f64, carrier_frequency: f64) -> Result<f64> {
    if !(distance > 0.0 && carrier_frequency > 0.0) {
        return Err(Error::invalid(format!(
            "distance ({distance} m) and carrier frequency ({carrier_frequency} Hz) must be positive"
        )));
    }
    let wavelength = SPEED_OF_LIGHT / carrier_frequency;
    Ok(wavelength / (4.0 * PI * distance))
}

/// Circularly-symmetric complex Gaussian draw with the given variance.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let scale = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(scale * re, scale * im)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

/// `Σ_k a_k · b_k` without conjugation.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
