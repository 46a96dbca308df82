//! Slot-by-slot access to the simulated downlink.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;

use crate::array::{complex_gaussian, received_sample, ChannelRealization, LinkBudget};
use crate::{Bit, Result};

/// What happened in one training or feedback slot.
#[derive(Debug, Clone, PartialEq)]
pub enum SlotEvent {
    Measurement {
        phase: &'static str,
        codeword: String,
        power: f64,
    },
    Feedback {
        phase: &'static str,
        bits: Vec<Bit>,
    },
}

/// A training run's view of the link: transmits codewords, returns noisy
/// received powers and counts training and feedback slots.
pub struct TrainingLink<'a, R: Rng> {
    channel: &'a ChannelRealization,
    budget: &'a LinkBudget,
    rng: R,
    training_slots: usize,
    feedback_slots: usize,
    trace: Option<Vec<SlotEvent>>,
}

impl<'a, R: Rng> TrainingLink<'a, R> {
    pub fn new(channel: &'a ChannelRealization, budget: &'a LinkBudget, rng: R) -> Self {
        Self {
            channel,
            budget,
            rng,
            training_slots: 0,
            feedback_slots: 0,
            trace: None,
        }
    }

    /// Also keep a per-slot trace.
    pub fn traced(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn channel(&self) -> &ChannelRealization {
        self.channel
    }

    pub fn budget(&self) -> &LinkBudget {
        self.budget
    }

    pub fn n_antennas(&self) -> usize {
        self.channel.n_antennas()
    }

    pub fn training_slots(&self) -> usize {
        self.training_slots
    }

    pub fn feedback_slots(&self) -> usize {
        self.feedback_slots
    }

    /// Amplitude `sqrt(P) γ |β|` a unit beam gain would produce.
    pub fn reference_amplitude(&self) -> f64 {
        self.budget.amplitude_scale() * self.channel.gains()[0].norm()
    }

    /// One training slot: `|sqrt(P) γ h w + n|²`.
    pub fn measure(
        &mut self,
        phase: &'static str,
        codeword: impl FnOnce() -> String,
        weights: &[Complex64],
    ) -> Result<f64> {
        let noise = complex_gaussian(&mut self.rng, self.budget.noise_power());
        let power = received_sample(self.channel, weights, self.budget, noise)?.norm_sqr();
        self.training_slots += 1;
        if let Some(trace) = &mut self.trace {
            trace.push(SlotEvent::Measurement {
                phase,
                codeword: codeword(),
                power,
            });
        }
        Ok(power)
    }

    /// One feedback slot from the UE.
    pub fn feedback(&mut self, phase: &'static str, bits: &[Bit]) {
        self.feedback_slots += 1;
        if let Some(trace) = &mut self.trace {
            trace.push(SlotEvent::Feedback {
                phase,
                bits: bits.to_vec(),
            });
        }
    }

    pub fn trace(&self) -> &[SlotEvent] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn into_trace(self) -> Vec<SlotEvent> {
        self.trace.unwrap_or_default()
    }
}

/// Trace as CSV: `slot,kind,phase,codeword,power,feedback_bits`.
///
/// Training slots are numbered from 1; a feedback row carries the number of
/// the training slot it follows.
pub fn trace_csv(events: &[SlotEvent]) -> String {
    let mut out = String::from("slot,kind,phase,codeword,power,feedback_bits\n");
    let mut slot = 0;
    for e in events {
        match e {
            SlotEvent::Measurement {
                phase,
                codeword,
                power,
            } => {
                slot += 1;
                let _ = writeln!(out, "{slot},train,{phase},{codeword},{power},");
            }
            SlotEvent::Feedback { phase, bits } => {
                let bits: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
                let _ = writeln!(out, "{slot},feedback,{phase},,,{bits}");
            }
        }
    }
    out
}
