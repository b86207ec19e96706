use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;

use super::check_qubits;
use crate::{Error, Result, TOLERANCE};

/// Amplitudes of an `n`-qubit pure state, qubit 1 most significant.
///
/// States built through [`StateVector::new`] are normalized to within
/// [`TOLERANCE`]. Intermediate results such as projections and linear
/// combinations are built with [`StateVector::unnormalized`] and carry a
/// marker reported by [`StateVector::is_normalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
    normalized: bool,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl StateVector {
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::unnormalized(n_qubits, amps)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        s.normalized = true;
        Ok(s)
    }

    pub fn unnormalized(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::BadLength {
                n_qubits,
                len: amps.len(),
            });
        }
        if let Some(index) = amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            n_qubits,
            amps,
            normalized: false,
        })
    }

    /// Infers the qubit count from the amplitude count.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::BadLength { n_qubits: 0, len });
        }
        Self::new(len.trailing_zeros() as usize, amps)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        if index >= amps.len() {
            return Err(Error::BadLength {
                n_qubits,
                len: index + 1,
            });
        }
        amps[index] = ONE;
        Self::new(n_qubits, amps)
    }

    /// The zero-qubit state with a single unit amplitude; neutral for `kron`.
    pub fn scalar() -> Self {
        Self {
            n_qubits: 0,
            amps: vec![ONE],
            normalized: true,
        }
    }

    fn qubit(a: Complex64, b: Complex64) -> Self {
        Self {
            n_qubits: 1,
            amps: vec![a, b],
            normalized: true,
        }
    }

    pub fn zero() -> Self {
        Self::qubit(ONE, ZERO)
    }

    pub fn one() -> Self {
        Self::qubit(ZERO, ONE)
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::qubit(h, h)
    }

    /// `(|0⟩ - |1⟩)/√2`
    pub fn minus() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::qubit(h, -h)
    }

    /// `(|0⟩ + i|1⟩)/√2`
    pub fn right() -> Self {
        Self::qubit(Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2))
    }

    /// `(|0⟩ - i|1⟩)/√2`
    pub fn left() -> Self {
        Self::qubit(Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, -FRAC_1_SQRT_2))
    }

    /// A random normalized state. Components are drawn uniformly from the unit
    /// square before normalization, which is enough for property checks.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n_qubits)?;
        loop {
            let amps: Vec<Complex64> = (0..1usize << n_qubits)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let s = Self::unnormalized(n_qubits, amps)?;
            if s.norm() > 1e-3 {
                return s.normalize();
            }
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub(crate) fn mark_normalized(mut self) -> Self {
        self.normalized = true;
        self
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescale to unit norm. Fails on a (numerically) zero vector.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < 1e-15 {
            return Err(Error::NoSupport {
                probability: norm * norm,
            });
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a / norm).collect(),
            normalized: true,
        })
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_size(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `‖self − other‖₂`
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Tensor product; `self` occupies the more significant qubits.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        check_qubits(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            n_qubits: n,
            amps,
            normalized: self.normalized && other.normalized,
        })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a * factor).collect(),
            normalized: self.normalized && (factor.norm() - 1.0).abs() <= TOLERANCE,
        }
    }

    /// `Σ cᵢ |vᵢ⟩`, marked unnormalized.
    pub fn linear_combination(n_qubits: usize, terms: &[(Complex64, &StateVector)]) -> Result<Self> {
        check_qubits(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        for (c, v) in terms {
            if v.n_qubits != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: v.n_qubits,
                });
            }
            for (out, a) in amps.iter_mut().zip(&v.amps) {
                *out += c * a;
            }
        }
        Self::unnormalized(n_qubits, amps)
    }

    /// Reorder tensor factors: position `j` of the result holds the qubit that
    /// sat at position `order[j]` of `self` (positions are 0-based).
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        check_permutation(n, order)?;
        let mut amps = vec![ZERO; self.amps.len()];
        for (old, a) in self.amps.iter().enumerate() {
            amps[permute_index(old, order, n)] = *a;
        }
        Ok(Self {
            n_qubits: n,
            amps,
            normalized: self.normalized,
        })
    }

    /// `(⟨bra| ⊗ I)|self⟩` where `bra` covers the leading qubits.
    /// The remainder is unnormalized; its squared norm is the Born weight.
    pub fn project_leading(&self, bra: &StateVector) -> Result<Self> {
        if bra.n_qubits > self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: bra.n_qubits,
            });
        }
        let rest = self.n_qubits - bra.n_qubits;
        let block = 1 << rest;
        let mut amps = vec![ZERO; block];
        for (a, b) in bra.amps.iter().enumerate() {
            let bc = b.conj();
            for (j, out) in amps.iter_mut().enumerate() {
                *out += bc * self.amps[a * block + j];
            }
        }
        Self::unnormalized(rest, amps)
    }
}

pub(crate) fn check_permutation(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: order.len(),
        });
    }
    for &q in order {
        if q >= n || seen[q] {
            return Err(Error::DimensionMismatch { expected: n, found: q });
        }
        seen[q] = true;
    }
    Ok(())
}

/// Index of basis state `old` after the qubit reordering `order`.
pub(crate) fn permute_index(old: usize, order: &[usize], n: usize) -> usize {
    let mut new = 0;
    for (j, &q) in order.iter().enumerate() {
        let bit = (old >> (n - 1 - q)) & 1;
        new |= bit << (n - 1 - j);
    }
    new
}
