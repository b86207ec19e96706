use std::io::Write;

use avn::verifier::{noisy_sweep, CLASSICAL_BOUND};
use serde::{Deserialize, Serialize};

use crate::format;

pub const CSV_HEADER: [&str; 4] = ["F", "expectation_O", "lhv_bound", "violates"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "F")]
    pub fidelity: f64,
    #[serde(rename = "expectation_O")]
    pub expectation_o: f64,
    pub lhv_bound: f64,
    pub violates: bool,
}

impl SweepRow {
    pub fn new(fidelity: f64, expectation_o: f64) -> Self {
        SweepRow {
            fidelity,
            expectation_o,
            lhv_bound: CLASSICAL_BOUND,
            violates: expectation_o.abs() > CLASSICAL_BOUND,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.violates == (self.expectation_o.abs() > self.lhv_bound)
    }
}

/// `steps` evenly spaced fidelities from `from` to `to` inclusive.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + (to - from) * i as f64 / last
            }
        })
        .collect()
}

pub fn sweep(from: f64, to: f64, steps: usize) -> avn::Result<Vec<SweepRow>> {
    Ok(noisy_sweep(&grid(from, to, steps))?
        .into_iter()
        .map(|(f, e)| SweepRow::new(f, e))
        .collect())
}

/// LF-terminated CSV in the fixed column formats.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            format::fidelity(r.fidelity),
            format::significant12(r.expectation_o),
            format::compact(r.lhv_bound),
            r.violates.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
