use std::fmt;

use num_complex::Complex64;

use super::{check_qubits, ComplexMatrix, Observable};
use crate::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliAxis {
    Id,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::Id, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'i' => Some(PauliAxis::Id),
            'x' => Some(PauliAxis::X),
            'y' => Some(PauliAxis::Y),
            'z' => Some(PauliAxis::Z),
            _ => None,
        }
    }

    /// Lower-case letter used in operator labels such as `x2y4y6`.
    pub fn symbol(self) -> char {
        match self {
            PauliAxis::Id => 'i',
            PauliAxis::X => 'x',
            PauliAxis::Y => 'y',
            PauliAxis::Z => 'z',
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        let entries = match self {
            PauliAxis::Id => [ONE, z, z, ONE],
            PauliAxis::X => [z, ONE, ONE, z],
            PauliAxis::Y => [z, -I, I, z],
            PauliAxis::Z => [ONE, z, z, -ONE],
        };
        ComplexMatrix::from_rows(2, entries.to_vec())
    }

    /// `self · other = phase · result`
    pub fn compose(self, other: PauliAxis) -> (Complex64, PauliAxis) {
        use PauliAxis::*;
        match (self, other) {
            (Id, p) | (p, Id) => (ONE, p),
            (a, b) if a == b => (ONE, Id),
            (X, Y) => (I, Z),
            (Y, X) => (-I, Z),
            (Y, Z) => (I, X),
            (Z, Y) => (-I, X),
            (Z, X) => (I, Y),
            (X, Z) => (-I, Y),
            _ => unreachable!(),
        }
    }

    /// Action on a single basis bit: whether it flips, and the phase picked up.
    #[inline]
    fn action(self, bit: usize) -> (bool, Complex64) {
        match (self, bit) {
            (PauliAxis::Id, _) => (false, ONE),
            (PauliAxis::X, _) => (true, ONE),
            (PauliAxis::Y, 0) => (true, I),
            (PauliAxis::Y, _) => (true, -I),
            (PauliAxis::Z, 0) => (false, ONE),
            (PauliAxis::Z, _) => (false, -ONE),
        }
    }
}

/// A tensor product of single-qubit Paulis, one factor per qubit position.
///
/// The label names the operator in terms of physical qubit numbers, for
/// example `x2y4y6` for a string on Debbie's qubits 2, 4 and 6.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    factors: Vec<PauliAxis>,
    label: String,
}

impl PauliString {
    pub fn new(factors: Vec<PauliAxis>) -> Result<Self> {
        check_qubits(factors.len())?;
        let label = default_label(&factors);
        Ok(Self { factors, label })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(vec![PauliAxis::Id; n_qubits])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Parse a label such as `x2y4y6`. `qubits[j]` is the physical qubit
    /// number stored at tensor position `j`; qubits not named are identity.
    ///
    /// ```
    /// use avn::qcore::{PauliAxis, PauliString};
    ///
    /// let p = PauliString::from_label("x2y6", &[2, 4, 6]).unwrap();
    /// assert_eq!(p.factors(), &[PauliAxis::X, PauliAxis::Id, PauliAxis::Y]);
    /// ```
    pub fn from_label(label: &str, qubits: &[usize]) -> Result<Self> {
        check_qubits(qubits.len())?;
        let bad = || Error::BadPauliLabel(label.to_string());
        let mut factors = vec![PauliAxis::Id; qubits.len()];
        let mut chars = label.chars().peekable();
        if label.is_empty() || label == "I" {
            return Ok(Self {
                factors,
                label: label.to_string(),
            });
        }
        while let Some(c) = chars.next() {
            let axis = PauliAxis::from_char(c).ok_or_else(bad)?;
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let qubit: usize = digits.parse().map_err(|_| bad())?;
            let pos = qubits.iter().position(|&q| q == qubit).ok_or_else(bad)?;
            if factors[pos] != PauliAxis::Id {
                return Err(bad());
            }
            factors[pos] = axis;
        }
        Ok(Self {
            factors,
            label: label.to_string(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[PauliAxis] {
        &self.factors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|&a| a == PauliAxis::Id)
    }

    /// Place this string's factors at `positions` of an `n_qubits` register.
    pub fn embed(&self, n_qubits: usize, positions: &[usize]) -> Result<Self> {
        check_qubits(n_qubits)?;
        if positions.len() != self.factors.len() || positions.iter().any(|&p| p >= n_qubits) {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: positions.len(),
            });
        }
        let mut factors = vec![PauliAxis::Id; n_qubits];
        for (&p, &a) in positions.iter().zip(&self.factors) {
            factors[p] = a;
        }
        Ok(Self {
            factors,
            label: self.label.clone(),
        })
    }

    /// `self · other = phase · string`.
    pub fn compose(&self, other: &Self) -> Result<(Complex64, PauliString)> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: other.n_qubits(),
            });
        }
        let mut phase = ONE;
        let factors: Vec<PauliAxis> = self
            .factors
            .iter()
            .zip(&other.factors)
            .map(|(&a, &b)| {
                let (p, c) = a.compose(b);
                phase *= p;
                c
            })
            .collect();
        Ok((phase, PauliString::new(factors)?))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        let anti = self
            .factors
            .iter()
            .zip(&other.factors)
            .filter(|(&a, &b)| a != PauliAxis::Id && b != PauliAxis::Id && a != b)
            .count();
        anti % 2 == 0
    }

    /// Bit mask of flipped positions and the phase for basis index `i`.
    fn act_on_index(&self, i: usize) -> (usize, Complex64) {
        let n = self.factors.len();
        let mut mask = 0;
        let mut phase = ONE;
        for (q, axis) in self.factors.iter().enumerate() {
            let shift = n - 1 - q;
            let (flip, ph) = axis.action((i >> shift) & 1);
            if flip {
                mask |= 1 << shift;
            }
            phase *= ph;
        }
        (mask, phase)
    }
}

fn default_label(factors: &[PauliAxis]) -> String {
    let s: String = factors
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != PauliAxis::Id)
        .map(|(q, a)| format!("{}{}", a.symbol(), q + 1))
        .collect();
    if s.is_empty() {
        "I".to_string()
    } else {
        s
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Observable for PauliString {
    fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn is_unitary(&self) -> bool {
        true
    }

    fn act(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (i, a) in amps.iter().enumerate() {
            let (mask, phase) = self.act_on_index(i);
            out[i ^ mask] = phase * a;
        }
        out
    }

    fn matrix(&self) -> ComplexMatrix {
        self.factors
            .iter()
            .fold(ComplexMatrix::identity(1), |acc, a| acc.kron(&a.matrix()))
    }
}

/// An ordered product `P₁·P₂·…·Pₖ` of Pauli strings on a common register.
///
/// Factors act right to left. Each factor typically names one local
/// observable, so the product keeps the per-party structure of a correlation
/// such as `x2y4y6 · x1 · y3 · y5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliProduct {
    factors: Vec<PauliString>,
    label: String,
}

impl PauliProduct {
    pub fn new(factors: Vec<PauliString>) -> Result<Self> {
        let n = factors.first().map(|f| f.n_qubits()).unwrap_or(0);
        if let Some(bad) = factors.iter().find(|f| f.n_qubits() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n_qubits(),
            });
        }
        let label = factors.iter().map(|f| f.label()).collect::<Vec<_>>().join("·");
        Ok(Self { factors, label })
    }

    pub fn factors(&self) -> &[PauliString] {
        &self.factors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Collapse to a single string with its phase.
    pub fn combined(&self) -> (Complex64, PauliString) {
        let n = Observable::n_qubits(self);
        let start = (ONE, PauliString::identity(n).expect("factor sizes already checked"));
        self.factors.iter().fold(start, |(ph, acc), f| {
            let (p, s) = acc.compose(f).expect("factor sizes already checked");
            (ph * p, s)
        })
    }

    /// True when every pair of factors commutes, so the product is Hermitian.
    pub fn factors_commute(&self) -> bool {
        self.factors
            .iter()
            .enumerate()
            .all(|(i, a)| self.factors[i + 1..].iter().all(|b| a.commutes_with(b)))
    }
}

impl fmt::Display for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Observable for PauliProduct {
    fn n_qubits(&self) -> usize {
        self.factors.first().map(|f| f.n_qubits()).unwrap_or(0)
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn is_unitary(&self) -> bool {
        true
    }

    fn act(&self, amps: &[Complex64]) -> Vec<Complex64> {
        self.factors.iter().rev().fold(amps.to_vec(), |v, f| f.act(&v))
    }

    fn matrix(&self) -> ComplexMatrix {
        let dim = 1 << Observable::n_qubits(self);
        self.factors
            .iter()
            .fold(ComplexMatrix::identity(dim), |acc, f| &acc * &f.matrix())
    }
}
