use std::io::Write;

use crate::{Error, Result};

pub const CSV_HEADER: &str =
    "scheme,point_kind,point_value,n_trials,successes,success_rate,mean_rate,se_rate,slots,feedback_slots";

/// Aggregate of one `(scheme, operating point)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub scheme: String,
    /// `snr_db` or `distance_m`.
    pub point_kind: String,
    pub point_value: f64,
    pub n_trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Mean achievable rate, bit/s/Hz.
    pub mean_rate: f64,
    /// Standard error of `mean_rate`.
    pub se_rate: f64,
    pub slots: usize,
    pub feedback_slots: usize,
}

impl MetricsRow {
    /// Binomial standard error of `success_rate`.
    pub fn se_success(&self) -> f64 {
        let p = self.success_rate;
        (p * (1.0 - p) / self.n_trials as f64).sqrt()
    }

    fn to_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.scheme,
            self.point_kind,
            self.point_value,
            self.n_trials,
            self.successes,
            self.success_rate,
            self.mean_rate,
            self.se_rate,
            self.slots,
            self.feedback_slots
        )
    }
}

/// Header plus one line per row; floats in shortest round-trip form.
pub fn write_csv<W: Write>(rows: &[MetricsRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_line())?;
    }
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<MetricsRow>> {
    let err = |line: usize, detail: String| Error::Format {
        what: "metrics CSV",
        detail: format!("line {line}: {detail}"),
    };
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(err(1, "unexpected header".into()));
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 10 {
                return Err(err(i + 2, format!("expected 10 fields, found {}", f.len())));
            }
            let float = |k: usize| f[k].parse::<f64>().map_err(|e| err(i + 2, e.to_string()));
            let int = |k: usize| f[k].parse::<usize>().map_err(|e| err(i + 2, e.to_string()));
            Ok(MetricsRow {
                scheme: f[0].to_string(),
                point_kind: f[1].to_string(),
                point_value: float(2)?,
                n_trials: int(3)?,
                successes: int(4)?,
                success_rate: float(5)?,
                mean_rate: float(6)?,
                se_rate: float(7)?,
                slots: int(8)?,
                feedback_slots: int(9)?,
            })
        })
        .collect()
}
