use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{ghz_basis, GhzIndex};
use crate::qcore::{Complex64 as C, StateVector};
use crate::{Error, Result, Sign, TOLERANCE};

/// Tensor positions of qubits (2,4,6,1,3,5) in the natural register.
pub const SWAP_ORDER: [usize; 6] = [1, 3, 5, 0, 2, 4];
/// Inverse of [`SWAP_ORDER`].
pub const UNSWAP_ORDER: [usize; 6] = [3, 0, 4, 1, 5, 2];

/// Reference expansion of the three-singlet state in products
/// `Φ(2,4,6) ⊗ Φ(1,3,5)`, each with weight `sign/√8`.
pub const REFERENCE_SWAP_EXPANSION: [(GhzIndex, GhzIndex, Sign); 8] = {
    let g = GhzIndex::ALL;
    [
        (g[1], g[0], Sign::Plus),
        (g[0], g[1], Sign::Minus),
        (g[2], g[3], Sign::Plus),
        (g[3], g[2], Sign::Minus),
        (g[4], g[5], Sign::Plus),
        (g[5], g[4], Sign::Minus),
        (g[6], g[7], Sign::Plus),
        (g[7], g[6], Sign::Minus),
    ]
};

/// Coefficients `c(g, h)` of `Σ c(g,h) Φ_g(2,4,6) ⊗ Φ_h(1,3,5)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapDecomposition {
    coefficients: [[Complex64; 8]; 8],
}

impl SwapDecomposition {
    pub fn coefficient(&self, debbie: GhzIndex, remote: GhzIndex) -> Complex64 {
        self.coefficients[debbie.position()][remote.position()]
    }

    pub fn coefficients(&self) -> &[[Complex64; 8]; 8] {
        &self.coefficients
    }

    pub fn total_weight(&self) -> f64 {
        self.coefficients.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    /// Nonzero coefficients (modulus above `tol`) in outcome order.
    pub fn support(&self, tol: f64) -> Vec<(GhzIndex, GhzIndex, Complex64)> {
        let mut out = Vec::new();
        for g in GhzIndex::ALL {
            for h in GhzIndex::ALL {
                let c = self.coefficient(g, h);
                if c.norm() > tol {
                    out.push((g, h, c));
                }
            }
        }
        out
    }

    /// `Σ c(g,h) g⊗h`, moved back to qubit order 1..6.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let basis = ghz_basis();
        let mut products = Vec::with_capacity(64);
        for g in GhzIndex::ALL {
            for h in GhzIndex::ALL {
                let c = self.coefficient(g, h);
                if c != C::new(0.0, 0.0) {
                    products.push((c, basis[g.position()].kron(&basis[h.position()])?));
                }
            }
        }
        let terms: Vec<(Complex64, &StateVector)> = products.iter().map(|(c, s)| (*c, s)).collect();
        StateVector::linear_combination(6, &terms)?.permute_qubits(&UNSWAP_ORDER)
    }

    /// The common phase `φ` with `c(g,h) = φ·sign/√8` on exactly the
    /// reference support and zero elsewhere; `None` if no such phase exists.
    pub fn global_phase_against(&self, reference: &[(GhzIndex, GhzIndex, Sign)]) -> Option<Complex64> {
        let amp = 0.5 * FRAC_1_SQRT_2;
        let (g0, h0, s0) = *reference.first()?;
        let phase = self.coefficient(g0, h0) / (amp * s0.as_f64());
        if (phase.norm() - 1.0).abs() > TOLERANCE {
            return None;
        }
        for g in GhzIndex::ALL {
            for h in GhzIndex::ALL {
                let want = reference
                    .iter()
                    .find(|(rg, rh, _)| *rg == g && *rh == h)
                    .map(|(_, _, s)| phase * amp * s.as_f64())
                    .unwrap_or(C::new(0.0, 0.0));
                if (self.coefficient(g, h) - want).norm() > TOLERANCE {
                    return None;
                }
            }
        }
        Some(phase)
    }
}

/// Project a six-qubit state onto every product `Φ_g(2,4,6) ⊗ Φ_h(1,3,5)`.
pub fn decompose_swap(psi: &StateVector) -> Result<SwapDecomposition> {
    if psi.n_qubits() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: psi.n_qubits(),
        });
    }
    let reordered = psi.permute_qubits(&SWAP_ORDER)?;
    let basis = ghz_basis();
    let mut coefficients = [[C::new(0.0, 0.0); 8]; 8];
    for g in GhzIndex::ALL {
        let rest = reordered.project_leading(&basis[g.position()])?;
        for h in GhzIndex::ALL {
            coefficients[g.position()][h.position()] = basis[h.position()].inner(&rest)?;
        }
    }
    Ok(SwapDecomposition { coefficients })
}
