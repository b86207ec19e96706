//! The three-singlet state and the quantum side of the argument.
//!
//! `|Ψ⟩ = |ψ⁻⟩₁₂ ⊗ |ψ⁻⟩₃₄ ⊗ |ψ⁻⟩₅₆` is a simultaneous −1 eigenstate of five
//! four-party correlations. Four of them pair one of Debbie's triple
//! observables with single-qubit observables held by Alice, Bob and
//! Charlie; the fifth is the product of the four triples, which equals
//! `−I` on Debbie's qubits regardless of the state.
//!
//! The same triples satisfy five state-independent identities on qubits
//! 2, 4, 6 alone. Both families are checked numerically here; the hidden
//! variable side lives in [`crate::hv`].

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::qcore::{expectation, ComplexMatrix, DensityMatrix, Observable, PauliProduct, PauliString, StateVector};
use crate::{Error, Result, Sign, TOLERANCE};

/// Physical qubits held by Debbie, in tensor order for 3-qubit operators.
pub const DEBBIE_QUBITS: [usize; 3] = [2, 4, 6];
/// Physical qubits held by Alice, Bob and Charlie.
pub const REMOTE_QUBITS: [usize; 3] = [1, 3, 5];
pub const ALL_QUBITS: [usize; 6] = [1, 2, 3, 4, 5, 6];

/// Debbie's triple observables, in the order of the Mermin operator terms.
pub const TRIPLES: [&str; 4] = ["x2y4y6", "y2x4y6", "y2y4x6", "x2x4x6"];

/// Remote single-qubit observables correlated with each entry of [`TRIPLES`].
pub const REMOTE_PARTNERS: [[&str; 3]; 4] = [
    ["x1", "y3", "y5"],
    ["y1", "x3", "y5"],
    ["y1", "y3", "x5"],
    ["x1", "x3", "x5"],
];

/// Debbie's own single-qubit observables making up each entry of [`TRIPLES`].
pub const LOCAL_PARTS: [[&str; 3]; 4] = [
    ["x2", "y4", "y6"],
    ["y2", "x4", "y6"],
    ["y2", "y4", "x6"],
    ["x2", "x4", "x6"],
];

/// Factor order of the product relation `x2x4x6·x2y4y6·y2x4y6·y2y4x6 = −I`.
pub const TRIPLE_PRODUCT_ORDER: [&str; 4] = ["x2x4x6", "x2y4y6", "y2x4y6", "y2y4x6"];

/// Classical bound on `|⟨O⟩|` and `|⟨O′⟩|` when the triples obey the product rule.
pub const CLASSICAL_BOUND: f64 = 2.0;

fn on_register(label: &str) -> PauliString {
    PauliString::from_label(label, &ALL_QUBITS).expect("static label")
}

fn on_debbie(label: &str) -> PauliString {
    PauliString::from_label(label, &DEBBIE_QUBITS).expect("static label")
}

fn product(labels: &[&str], make: fn(&str) -> PauliString) -> PauliProduct {
    PauliProduct::new(labels.iter().map(|l| make(l)).collect()).expect("same register")
}

/// `(|01⟩ − |10⟩)/√2`
pub fn build_singlet() -> StateVector {
    let h = FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    StateVector::new(2, vec![z, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), z]).expect("singlet is normalized")
}

/// Three singlets on pairs (1,2), (3,4), (5,6).
pub fn build_psi() -> StateVector {
    let s = build_singlet();
    s.kron(&s).and_then(|ss| ss.kron(&s)).expect("six qubits fit")
}

#[derive(Debug, Clone)]
pub struct Eigenequation {
    pub label: String,
    pub operator: PauliProduct,
    pub eigenvalue: f64,
}

/// The five correlations with eigenvalue −1 on `|Ψ⟩`, as products of
/// local observables on the six-qubit register.
pub fn eigen_system() -> Vec<Eigenequation> {
    let mut out: Vec<Eigenequation> = TRIPLES
        .iter()
        .zip(REMOTE_PARTNERS)
        .map(|(t, partners)| {
            let mut labels = vec![*t];
            labels.extend(partners);
            let operator = product(&labels, on_register);
            Eigenequation {
                label: operator.label().to_string(),
                operator,
                eigenvalue: -1.0,
            }
        })
        .collect();
    let operator = product(&TRIPLE_PRODUCT_ORDER, on_register);
    out.push(Eigenequation {
        label: operator.label().to_string(),
        operator,
        eigenvalue: -1.0,
    });
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenCheckResult {
    pub operator_label: String,
    pub expected_eigenvalue: f64,
    /// `‖Op·s − λ·s‖₂`
    pub residual: f64,
}

pub fn verify_eigenequations(state: &StateVector) -> Result<Vec<EigenCheckResult>> {
    eigen_system()
        .into_iter()
        .map(|eq| {
            let applied = eq.operator.apply_to(state)?;
            let target = state.scaled(Complex64::new(eq.eigenvalue, 0.0));
            Ok(EigenCheckResult {
                operator_label: eq.label,
                expected_eigenvalue: eq.eigenvalue,
                residual: applied.distance(&target)?,
            })
        })
        .collect()
}

/// A product of mutually commuting observables on Debbie's qubits that
/// equals `rhs · I₈`.
#[derive(Debug, Clone)]
pub struct OperatorIdentity {
    pub label: String,
    pub product: PauliProduct,
    pub rhs: Sign,
}

pub fn operator_identities() -> Vec<OperatorIdentity> {
    let mut out: Vec<OperatorIdentity> = TRIPLES
        .iter()
        .zip(LOCAL_PARTS)
        .map(|(t, parts)| {
            let mut labels = vec![*t];
            labels.extend(parts);
            let product = product(&labels, on_debbie);
            OperatorIdentity {
                label: product.label().to_string(),
                product,
                rhs: Sign::Plus,
            }
        })
        .collect();
    let product = product(&TRIPLE_PRODUCT_ORDER, on_debbie);
    out.push(OperatorIdentity {
        label: product.label().to_string(),
        product,
        rhs: Sign::Minus,
    });
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub label: String,
    pub rhs: Sign,
    pub max_deviation: f64,
}

/// Materialize both sides of every identity as 8×8 matrices.
pub fn verify_identities() -> Vec<IdentityCheck> {
    let identity = ComplexMatrix::identity(8);
    operator_identities()
        .into_iter()
        .map(|id| {
            let rhs = identity.scale(Complex64::new(id.rhs.as_f64(), 0.0));
            IdentityCheck {
                max_deviation: id.product.matrix().max_abs_diff(&rhs),
                label: id.label,
                rhs: id.rhs,
            }
        })
        .collect()
}

/// A signed sum of Pauli products on one register.
#[derive(Debug, Clone)]
pub struct MerminOperator {
    label: String,
    terms: Vec<(f64, PauliProduct)>,
}

impl MerminOperator {
    pub fn new(label: impl Into<String>, terms: Vec<(f64, PauliProduct)>) -> Result<Self> {
        let n = terms.first().map(|(_, t)| Observable::n_qubits(t)).unwrap_or(0);
        if let Some((_, bad)) = terms.iter().find(|(_, t)| Observable::n_qubits(t) != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: Observable::n_qubits(bad),
            });
        }
        Ok(Self {
            label: label.into(),
            terms,
        })
    }

    pub fn terms(&self) -> &[(f64, PauliProduct)] {
        &self.terms
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl Observable for MerminOperator {
    fn n_qubits(&self) -> usize {
        self.terms.first().map(|(_, t)| Observable::n_qubits(t)).unwrap_or(0)
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn act(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (c, term) in &self.terms {
            for (o, v) in out.iter_mut().zip(term.act(amps)) {
                *o += c * v;
            }
        }
        out
    }
}

/// `O`: the four correlations of [`eigen_system`] (without the product
/// relation), each with coefficient +1, on six qubits.
pub fn mermin_o() -> MerminOperator {
    let terms = eigen_system()
        .into_iter()
        .take(4)
        .map(|eq| (1.0, eq.operator))
        .collect();
    MerminOperator::new("O", terms).expect("common register")
}

/// `O′`: the four `+I` identities on Debbie's qubits, each with coefficient +1.
pub fn mermin_o_prime() -> MerminOperator {
    let terms = operator_identities()
        .into_iter()
        .take(4)
        .map(|id| (1.0, id.product))
        .collect();
    MerminOperator::new("O'", terms).expect("common register")
}

/// Werner-noise fidelity of each singlet pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    fidelity: f64,
}

impl NoiseParams {
    pub fn new(fidelity: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::FidelityOutOfRange(fidelity));
        }
        Ok(Self { fidelity })
    }

    pub fn ideal() -> Self {
        Self { fidelity: 1.0 }
    }

    pub fn fidelity(self) -> f64 {
        self.fidelity
    }
}

/// `F|ψ⁻⟩⟨ψ⁻| + (1−F)·I/4`
pub fn noisy_singlet(p: NoiseParams) -> DensityMatrix {
    let pure = DensityMatrix::from_state(&build_singlet()).expect("normalized");
    let mixed = DensityMatrix::maximally_mixed(2).expect("two qubits");
    let f = p.fidelity();
    DensityMatrix::mix(&[(f, &pure), (1.0 - f, &mixed)]).expect("weights sum to one")
}

/// Three Werner-noised singlets with the same fidelity.
pub fn noisy_psi(p: NoiseParams) -> DensityMatrix {
    noisy_psi_per_pair([p; 3])
}

/// Three Werner-noised singlets, one fidelity per pair (1,2), (3,4), (5,6).
pub fn noisy_psi_per_pair(pairs: [NoiseParams; 3]) -> DensityMatrix {
    let [a, b, c] = pairs.map(noisy_singlet);
    a.kron(&b).and_then(|ab| ab.kron(&c)).expect("six qubits fit")
}

/// `Tr[(ρ(F)⊗ρ(F)⊗ρ(F))·O]` by full 64×64 contraction.
pub fn expectation_o_noisy(p: NoiseParams) -> Result<f64> {
    expectation(&mermin_o(), &noisy_psi(p))
}

/// The closed form `−4F³` of [`expectation_o_noisy`].
pub fn expectation_o_closed_form(p: NoiseParams) -> f64 {
    -4.0 * p.fidelity().powi(3)
}

/// Evaluate [`expectation_o_noisy`] on a grid of fidelities in parallel.
pub fn noisy_sweep(grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    grid.par_iter()
        .map(|&f| Ok((f, expectation_o_noisy(NoiseParams::new(f)?)?)))
        .collect()
}

/// Absolute tolerance on the fidelity returned by [`violation_threshold`].
pub const THRESHOLD_TOLERANCE: f64 = 1e-9;

/// Smallest fidelity at which `|⟨O⟩|` reaches `bound`, found by bisection on
/// the density-matrix expectation (not on the closed form).
pub fn violation_threshold(bound: f64) -> Result<f64> {
    if !(bound > 0.0 && bound <= 4.0) {
        return Err(Error::NotBracketed { bound });
    }
    let gap = |f: f64| -> Result<f64> { Ok(expectation_o_noisy(NoiseParams::new(f)?)?.abs() - bound) };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    if g_lo.abs() <= TOLERANCE {
        return Ok(lo);
    }
    if g_hi.abs() <= TOLERANCE {
        return Ok(hi);
    }
    if g_lo > 0.0 || g_hi < 0.0 {
        return Err(Error::NotBracketed { bound });
    }
    while hi - lo > THRESHOLD_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
