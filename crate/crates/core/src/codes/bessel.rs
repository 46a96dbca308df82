use crate::{Error, Result};

const SERIES_LIMIT: f64 = 20.0;

/// `log I₀(z)` for `z ≥ 0`.
///
/// Power series `Σ (z²/4)^m / (m!)²` up to `z = 20`, Hankel asymptotic
/// expansion above.
pub fn log_bessel_i0(z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::invalid(format!("log I0 needs z >= 0, got {z}")));
    }
    Ok(log_i0_unchecked(z))
}

pub(crate) fn log_i0_unchecked(z: f64) -> f64 {
    if z <= SERIES_LIMIT {
        // sum of the m >= 1 terms, kept apart from the leading 1 for ln_1p
        let q = 0.25 * z * z;
        let mut term = 1.0;
        let mut tail = 0.0;
        let mut m = 1.0;
        loop {
            term *= q / (m * m);
            tail += term;
            if term <= tail * 1e-17 {
                break;
            }
            m += 1.0;
        }
        tail.ln_1p()
    } else {
        // I0(z) ~ e^z / sqrt(2πz) · Σ_k ((2k-1)!!)² / (k! (8z)^k)
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..30 {
            let k = k as f64;
            let next = term * (2.0 * k - 1.0).powi(2) / (8.0 * k * z);
            if next >= term {
                break;
            }
            term = next;
            sum += term;
            if term < 1e-17 {
                break;
            }
        }
        z - 0.5 * (2.0 * std::f64::consts::PI * z).ln() + sum.ln()
    }
}
