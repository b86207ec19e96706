use num_complex::Complex64;

use super::{ghz_eigen_table, ghz_state, GhzIndex};
use crate::qcore::{PauliAxis, StateVector};
use crate::verifier::{LOCAL_PARTS, TRIPLES};
use crate::{Error, Result, Sign, TOLERANCE};

/// Eigenstate of X or Y with eigenvalue `sign`: `|±⟩` or `|R⟩`, `|L⟩`.
pub fn single_eigenstate(axis: PauliAxis, sign: Sign) -> Result<StateVector> {
    match (axis, sign) {
        (PauliAxis::X, Sign::Plus) => Ok(StateVector::plus()),
        (PauliAxis::X, Sign::Minus) => Ok(StateVector::minus()),
        (PauliAxis::Y, Sign::Plus) => Ok(StateVector::right()),
        (PauliAxis::Y, Sign::Minus) => Ok(StateVector::left()),
        (other, _) => Err(Error::BadAxis(other.symbol().to_ascii_uppercase())),
    }
}

/// Product of single-qubit X/Y eigenstates, first factor most significant.
pub fn product_eigenstate(axes: [PauliAxis; 3], signs: [Sign; 3]) -> Result<StateVector> {
    axes.iter().zip(signs).try_fold(StateVector::scalar(), |acc, (&a, s)| {
        acc.kron(&single_eigenstate(a, s)?)
    })
}

/// Single-qubit axes measured before the analyzer when testing identity
/// `index` (1..=4): XYY, YXY, YYX, XXX.
pub fn identity_axes(index: usize) -> Result<[PauliAxis; 3]> {
    let parts = LOCAL_PARTS
        .get(index.wrapping_sub(1))
        .ok_or(Error::BadIdentityIndex(index))?;
    Ok(parts.map(|p| PauliAxis::from_char(p.chars().next().expect("nonempty label")).expect("x or y")))
}

/// GHZ expansion of the all-`+` product state for identity `index`, with
/// the global factor 1/2 removed.
pub fn reference_expansion(index: usize) -> Result<Vec<(GhzIndex, Complex64)>> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let g = |k: u8, s: Sign| GhzIndex::new(k, s).expect("k < 4");
    use Sign::{Minus as M, Plus as P};
    Ok(match index {
        1 => vec![(g(0, M), one), (g(1, M), one), (g(2, P), i), (g(3, P), i)],
        2 => vec![(g(0, M), one), (g(1, P), i), (g(2, M), one), (g(3, P), i)],
        3 => vec![(g(0, M), one), (g(1, P), i), (g(2, P), i), (g(3, M), one)],
        4 => vec![(g(0, P), one), (g(1, P), one), (g(2, P), one), (g(3, P), one)],
        other => return Err(Error::BadIdentityIndex(other)),
    })
}

#[derive(Debug, Clone)]
pub struct ContextualityRun {
    pub identity_index: usize,
    pub axes: [PauliAxis; 3],
    pub signs: [Sign; 3],
    pub state: StateVector,
    /// Nonzero GHZ coefficients in outcome order.
    pub support: Vec<(GhzIndex, Complex64)>,
    pub triple_label: &'static str,
    pub triple_value: Sign,
    pub identity_holds: bool,
    pub identifiable_probability: f64,
}

impl ContextualityRun {
    pub fn support_set(&self) -> Vec<GhzIndex> {
        self.support.iter().map(|(g, _)| *g).collect()
    }
}

/// Prepare the product eigenstate for identity `index` with local outcomes
/// `signs`, expand it in the GHZ basis and read the triple value each
/// support state would report.
pub fn contextuality_run(index: usize, signs: [Sign; 3]) -> Result<ContextualityRun> {
    let axes = identity_axes(index)?;
    let triple_label = TRIPLES[index - 1];
    let state = product_eigenstate(axes, signs)?;
    let table = ghz_eigen_table()?;

    let mut support = Vec::new();
    for g in GhzIndex::ALL {
        let c = ghz_state(g).inner(&state)?;
        if c.norm() > TOLERANCE {
            support.push((g, c));
        }
    }
    let values: Vec<Sign> = support
        .iter()
        .map(|(g, _)| table.value(*g, triple_label).expect("triple is a table column"))
        .collect();
    let triple_value = values[0];
    if values.iter().any(|&v| v != triple_value) {
        return Err(Error::PhysicsViolation(format!(
            "support of identity {index} with signs {signs:?} mixes {triple_label} eigenvalues"
        )));
    }
    let identifiable_probability = support
        .iter()
        .filter(|(g, _)| g.is_identifiable())
        .map(|(_, c)| c.norm_sqr())
        .sum();
    Ok(ContextualityRun {
        identity_index: index,
        axes,
        signs,
        state,
        support,
        triple_label,
        triple_value,
        identity_holds: triple_value == Sign::product(signs),
        identifiable_probability,
    })
}

/// All four identities against all eight sign tuples, identity-major.
pub fn all_contextuality_runs() -> Result<Vec<ContextualityRun>> {
    let mut out = Vec::with_capacity(32);
    for index in 1..=4 {
        for bits in 0..8u8 {
            let signs = [0, 1, 2].map(|q| Sign::from_bit(bits >> (2 - q) & 1 == 1));
            out.push(contextuality_run(index, signs)?);
        }
    }
    Ok(out)
}
