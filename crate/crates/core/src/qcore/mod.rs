//! Dense complex linear algebra for registers of at most six qubits.
//!
//! Conventions used throughout the crate:
//!
//! - qubit 1 (position 0) is the most significant bit of an amplitude index;
//! - `|0⟩ = |H⟩`, `|1⟩ = |V⟩`;
//! - `|+⟩ = (|0⟩+|1⟩)/√2` is the +1 eigenstate of X and
//!   `|R⟩ = (|0⟩+i|1⟩)/√2` is the +1 eigenstate of Y;
//! - `Y = [[0, -i], [i, 0]]`, so `Y|0⟩ = i|1⟩`.

mod density;
mod matrix;
mod observable;
mod pauli;
mod state;

pub use density::DensityMatrix;
pub use matrix::ComplexMatrix;
pub use observable::{expectation, Observable, QuantumState};
pub use pauli::{PauliAxis, PauliProduct, PauliString};
pub use state::StateVector;

pub use num_complex::Complex64;

use crate::Result;

/// Largest register handled by this crate.
pub const MAX_QUBITS: usize = 6;

/// Tensor product with `a` as the more significant block.
pub fn kron(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    a.kron(b)
}

/// `P·s`, computed by per-qubit bit flips and phases.
pub fn apply_pauli(p: &PauliString, s: &StateVector) -> Result<StateVector> {
    p.apply_to(s)
}

pub fn pauli_matrix(p: &PauliString) -> ComplexMatrix {
    p.matrix()
}

pub fn dm_from_state(s: &StateVector) -> Result<DensityMatrix> {
    DensityMatrix::from_state(s)
}

pub fn dm_mix(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
    DensityMatrix::mix(parts)
}

pub fn dm_kron(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    a.kron(b)
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(crate::Error::Capacity {
            requested: n,
            max: MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}
