use std::fmt;

use super::swap::SWAP_ORDER;
use super::{ghz_state, GhzIndex};
use crate::qcore::StateVector;
use crate::{Error, Result};

/// What the linear-optics analyzer reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnalyzerOutcome {
    Phi0Plus,
    Phi0Minus,
    /// Any of the six GHZ states with `k ≠ 0`.
    Fail,
}

impl AnalyzerOutcome {
    pub const ALL: [AnalyzerOutcome; 3] = [
        AnalyzerOutcome::Phi0Plus,
        AnalyzerOutcome::Phi0Minus,
        AnalyzerOutcome::Fail,
    ];

    pub fn from_ghz(g: GhzIndex) -> Self {
        match g {
            GhzIndex::PHI0_PLUS => AnalyzerOutcome::Phi0Plus,
            GhzIndex::PHI0_MINUS => AnalyzerOutcome::Phi0Minus,
            _ => AnalyzerOutcome::Fail,
        }
    }

    pub fn is_accepted(self) -> bool {
        self != AnalyzerOutcome::Fail
    }

    pub fn ascii_label(self) -> &'static str {
        match self {
            AnalyzerOutcome::Phi0Plus => "Phi0+",
            AnalyzerOutcome::Phi0Minus => "Phi0-",
            AnalyzerOutcome::Fail => "fail",
        }
    }
}

impl fmt::Display for AnalyzerOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyzerOutcome::Phi0Plus => f.write_str("Φ₀⁺"),
            AnalyzerOutcome::Phi0Minus => f.write_str("Φ₀⁻"),
            AnalyzerOutcome::Fail => f.write_str("fail"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord<O> {
    pub outcome: O,
    pub probability: f64,
    /// Normalized post-measurement state of the unmeasured qubits (1,3,5),
    /// or the zero-qubit scalar when a three-qubit input was measured
    /// directly. `None` when the outcome has no support or aggregates
    /// several branches.
    pub conditional_state: Option<StateVector>,
}

/// Unnormalized remainder after projecting Debbie's qubits onto `g`.
fn project(psi: &StateVector, g: GhzIndex) -> Result<StateVector> {
    match psi.n_qubits() {
        6 => psi.permute_qubits(&SWAP_ORDER)?.project_leading(&ghz_state(g)),
        3 => psi.project_leading(&ghz_state(g)),
        n => Err(Error::DimensionMismatch { expected: 6, found: n }),
    }
}

/// Condition on GHZ outcome `g` for Debbie's qubits. Accepts the full
/// six-qubit register or Debbie's three qubits alone.
pub fn postselect(psi: &StateVector, outcome: GhzIndex) -> Result<MeasurementRecord<GhzIndex>> {
    let rest = project(psi, outcome)?;
    let probability = rest.norm_sqr();
    if probability < 1e-15 {
        return Err(Error::NoSupport { probability });
    }
    Ok(MeasurementRecord {
        outcome,
        probability,
        conditional_state: Some(rest.normalize()?),
    })
}

/// All eight GHZ outcomes, including zero-probability ones.
pub fn ghz_measure(psi: &StateVector) -> Result<Vec<MeasurementRecord<GhzIndex>>> {
    GhzIndex::ALL
        .iter()
        .map(|&g| {
            let rest = project(psi, g)?;
            let probability = rest.norm_sqr();
            Ok(MeasurementRecord {
                outcome: g,
                probability,
                conditional_state: (probability >= 1e-15).then(|| rest.normalize()).transpose()?,
            })
        })
        .collect()
}

/// The two identifiable outcomes plus an aggregated failure record.
pub fn analyzer_measure(psi: &StateVector) -> Result<Vec<MeasurementRecord<AnalyzerOutcome>>> {
    let all = ghz_measure(psi)?;
    let mut out: Vec<MeasurementRecord<AnalyzerOutcome>> = all
        .iter()
        .filter(|r| r.outcome.is_identifiable())
        .map(|r| MeasurementRecord {
            outcome: AnalyzerOutcome::from_ghz(r.outcome),
            probability: r.probability,
            conditional_state: r.conditional_state.clone(),
        })
        .collect();
    out.push(MeasurementRecord {
        outcome: AnalyzerOutcome::Fail,
        probability: all
            .iter()
            .filter(|r| !r.outcome.is_identifiable())
            .map(|r| r.probability)
            .sum(),
        conditional_state: None,
    });
    Ok(out)
}
