use num_complex::Complex64;

use super::{ComplexMatrix, DensityMatrix, StateVector};
use crate::{Error, Result, TOLERANCE};

/// A linear operator on a fixed register that can act on amplitudes without
/// materializing its matrix.
pub trait Observable {
    fn n_qubits(&self) -> usize;

    fn label(&self) -> String;

    /// Unitary operators preserve the normalization marker of their input.
    fn is_unitary(&self) -> bool {
        false
    }

    /// Action on an amplitude slice of length `2^n_qubits`.
    fn act(&self, amps: &[Complex64]) -> Vec<Complex64>;

    /// Dense matrix, built column by column from [`Observable::act`].
    fn matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.n_qubits();
        let mut m = ComplexMatrix::zeros(dim);
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        for c in 0..dim {
            e[c] = Complex64::new(1.0, 0.0);
            for (r, v) in self.act(&e).into_iter().enumerate() {
                m.set(r, c, v);
            }
            e[c] = Complex64::new(0.0, 0.0);
        }
        m
    }

    fn apply_to(&self, s: &StateVector) -> Result<StateVector> {
        if s.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: s.n_qubits(),
            });
        }
        let out = StateVector::unnormalized(s.n_qubits(), self.act(s.amplitudes()))?;
        if self.is_unitary() && s.is_normalized() {
            Ok(out.mark_normalized())
        } else {
            Ok(out)
        }
    }
}

/// Anything an expectation value can be taken in.
pub trait QuantumState {
    fn n_qubits(&self) -> usize;

    /// `⟨ψ|Op|ψ⟩` or `Tr(ρ·Op)` before the imaginary part is checked.
    fn raw_expectation<O: Observable + ?Sized>(&self, op: &O) -> Complex64;
}

impl QuantumState for StateVector {
    fn n_qubits(&self) -> usize {
        StateVector::n_qubits(self)
    }

    fn raw_expectation<O: Observable + ?Sized>(&self, op: &O) -> Complex64 {
        let a = self.amplitudes();
        a.iter().zip(op.act(a)).map(|(x, y)| x.conj() * y).sum()
    }
}

impl QuantumState for DensityMatrix {
    fn n_qubits(&self) -> usize {
        DensityMatrix::n_qubits(self)
    }

    fn raw_expectation<O: Observable + ?Sized>(&self, op: &O) -> Complex64 {
        // Tr(ρ·Op) = Σᵢ Σⱼ ρᵢⱼ (Op eᵢ)ⱼ
        let dim = self.dim();
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            e[i] = Complex64::new(1.0, 0.0);
            for (j, v) in op.act(&e).into_iter().enumerate() {
                if v != Complex64::new(0.0, 0.0) {
                    total += self.entry(i, j) * v;
                }
            }
            e[i] = Complex64::new(0.0, 0.0);
        }
        total
    }
}

/// Real expectation value of a Hermitian operator.
///
/// Fails with [`Error::NumericalIntegrity`] if the imaginary residue exceeds
/// [`TOLERANCE`].
///
/// ```
/// use avn::qcore::{expectation, PauliString, StateVector};
///
/// let z = PauliString::from_label("z1", &[1]).unwrap();
/// assert_eq!(expectation(&z, &StateVector::zero()).unwrap(), 1.0);
/// ```
pub fn expectation<O, S>(op: &O, state: &S) -> Result<f64>
where
    O: Observable + ?Sized,
    S: QuantumState + ?Sized,
{
    if op.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: op.n_qubits(),
            found: state.n_qubits(),
        });
    }
    let z = state.raw_expectation(op);
    if z.im.abs() > TOLERANCE {
        return Err(Error::NumericalIntegrity { residue: z.im.abs() });
    }
    Ok(z.re)
}
