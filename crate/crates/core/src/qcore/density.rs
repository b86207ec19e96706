use num_complex::Complex64;

use super::state::{check_permutation, permute_index};
use super::{check_qubits, ComplexMatrix, StateVector};
use crate::{Error, Result, TOLERANCE};

/// Most negative eigenvalue tolerated by the positivity check.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// A Hermitian, unit-trace, positive semidefinite operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        check_qubits(n_qubits)?;
        if matrix.dim() != 1 << n_qubits {
            return Err(Error::BadLength {
                n_qubits,
                len: matrix.dim(),
            });
        }
        if matrix.data().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidDensity("non-finite entry".into()));
        }
        let defect = matrix.hermiticity_defect();
        if defect > TOLERANCE {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (max |M - M†| = {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        if matrix.cholesky_shifted(PSD_TOLERANCE).is_none() {
            return Err(Error::InvalidDensity(format!(
                "an eigenvalue is below -{PSD_TOLERANCE:e}"
            )));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// `|s⟩⟨s|` for a normalized state.
    pub fn from_state(s: &StateVector) -> Result<Self> {
        if !s.is_normalized() {
            return Err(Error::NotNormalized { norm: s.norm() });
        }
        Self::new(s.n_qubits(), ComplexMatrix::outer(s.amplitudes()))
    }

    /// `I / 2ⁿ`
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1 << n_qubits;
        Ok(Self {
            n_qubits,
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        })
    }

    /// Convex combination `Σ wᵢ ρᵢ`.
    pub fn mix(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let sum: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.is_empty() || parts.iter().any(|(w, _)| w.is_nan() || *w < 0.0) || (sum - 1.0).abs() > TOLERANCE {
            return Err(Error::WeightSum { sum });
        }
        let n = parts[0].1.n_qubits;
        let mut acc = ComplexMatrix::zeros(1 << n);
        for (w, rho) in parts {
            if rho.n_qubits != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: rho.n_qubits,
                });
            }
            acc = acc.add(&rho.matrix.scale(Complex64::new(*w, 0.0)));
        }
        Self::new(n, acc)
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        check_qubits(n)?;
        Ok(Self {
            n_qubits: n,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.matrix.get(r, c)
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn population(&self, psi: &StateVector) -> Result<f64> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: psi.n_qubits(),
            });
        }
        let rho_psi = self.matrix.apply(psi.amplitudes());
        let v: Complex64 = psi.amplitudes().iter().zip(&rho_psi).map(|(a, b)| a.conj() * b).sum();
        Ok(v.re)
    }

    /// Same convention as [`StateVector::permute_qubits`].
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        check_permutation(n, order)?;
        let dim = self.dim();
        let map: Vec<usize> = (0..dim).map(|i| permute_index(i, order, n)).collect();
        let mut out = ComplexMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                out.set(map[r], map[c], self.matrix.get(r, c));
            }
        }
        Ok(Self {
            n_qubits: n,
            matrix: out,
        })
    }

    /// Project the leading qubits onto `bra` and return the Born probability
    /// together with the normalized state of the remaining qubits.
    pub fn condition_leading(&self, bra: &StateVector) -> Result<(f64, DensityMatrix)> {
        let k = bra.n_qubits();
        if k > self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: k,
            });
        }
        let rest = self.n_qubits - k;
        let block = 1 << rest;
        let g = bra.amplitudes();
        let mut out = ComplexMatrix::zeros(block);
        for (a, ga) in g.iter().enumerate() {
            if ga.norm_sqr() == 0.0 {
                continue;
            }
            for (ap, gap) in g.iter().enumerate() {
                if gap.norm_sqr() == 0.0 {
                    continue;
                }
                let w = ga.conj() * gap;
                for r in 0..block {
                    for c in 0..block {
                        let v = out.get(r, c) + w * self.matrix.get(a * block + r, ap * block + c);
                        out.set(r, c, v);
                    }
                }
            }
        }
        let p = out.trace().re;
        if p < 1e-15 {
            return Err(Error::NoSupport { probability: p });
        }
        let conditional = out.scale(Complex64::new(1.0 / p, 0.0));
        Ok((p, DensityMatrix::new(rest, conditional)?))
    }
}
