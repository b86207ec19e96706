use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::qcore::{Observable, PauliString, StateVector};
use crate::verifier::{DEBBIE_QUBITS, TRIPLE_PRODUCT_ORDER};
use crate::{Error, Result, Sign, TOLERANCE};

/// `Φₖ±` with `k ∈ {0,1,2,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhzIndex {
    k: u8,
    sign: Sign,
}

impl GhzIndex {
    /// Fixed order: k ascending, `+` before `−`.
    pub const ALL: [GhzIndex; 8] = [
        GhzIndex { k: 0, sign: Sign::Plus },
        GhzIndex {
            k: 0,
            sign: Sign::Minus,
        },
        GhzIndex { k: 1, sign: Sign::Plus },
        GhzIndex {
            k: 1,
            sign: Sign::Minus,
        },
        GhzIndex { k: 2, sign: Sign::Plus },
        GhzIndex {
            k: 2,
            sign: Sign::Minus,
        },
        GhzIndex { k: 3, sign: Sign::Plus },
        GhzIndex {
            k: 3,
            sign: Sign::Minus,
        },
    ];

    pub const PHI0_PLUS: GhzIndex = GhzIndex { k: 0, sign: Sign::Plus };
    pub const PHI0_MINUS: GhzIndex = GhzIndex {
        k: 0,
        sign: Sign::Minus,
    };

    pub fn new(k: u8, sign: Sign) -> Option<Self> {
        (k < 4).then_some(Self { k, sign })
    }

    pub fn k(self) -> u8 {
        self.k
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    /// Position in [`GhzIndex::ALL`].
    pub fn position(self) -> usize {
        2 * self.k as usize + self.sign.is_minus() as usize
    }

    pub fn from_position(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Same `k`, opposite sign.
    pub fn partner(self) -> Self {
        Self {
            k: self.k,
            sign: -self.sign,
        }
    }

    pub fn is_identifiable(self) -> bool {
        self.k == 0
    }

    /// `Phi0+`
    pub fn ascii_label(self) -> String {
        format!("Phi{}{}", self.k, self.sign.symbol())
    }

    /// `Φ₀⁺`
    pub fn unicode_label(self) -> String {
        let sub = ['₀', '₁', '₂', '₃'][self.k as usize];
        let sup = if self.sign.is_minus() { '⁻' } else { '⁺' };
        format!("Φ{sub}{sup}")
    }

    /// Basis string whose amplitude carries the `+` branch: 000, 100, 010, 001.
    fn low_pattern(self) -> usize {
        [0b000, 0b100, 0b010, 0b001][self.k as usize]
    }
}

impl fmt::Display for GhzIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode_label())
    }
}

/// `(|abc⟩ ± |āb̄c̄⟩)/√2`
pub fn ghz_state(idx: GhzIndex) -> StateVector {
    let low = idx.low_pattern();
    let high = low ^ 0b111;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[low] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[high] = Complex64::new(idx.sign.as_f64() * FRAC_1_SQRT_2, 0.0);
    StateVector::new(3, amps).expect("GHZ state is normalized")
}

/// The eight GHZ states in [`GhzIndex::ALL`] order.
pub fn ghz_basis() -> Vec<StateVector> {
    GhzIndex::ALL.iter().map(|&g| ghz_state(g)).collect()
}

/// Triple observables in table column order.
pub const TABLE_COLUMNS: [&str; 4] = TRIPLE_PRODUCT_ORDER;

/// Published eigenvalue table, rows in [`GhzIndex::ALL`] order and columns
/// in [`TABLE_COLUMNS`] order.
pub const REFERENCE_TABLE: [[Sign; 4]; 8] = {
    use Sign::{Minus as M, Plus as P};
    [
        [P, M, M, M],
        [M, P, P, P],
        [P, M, P, P],
        [M, P, M, M],
        [P, P, M, P],
        [M, M, P, M],
        [P, P, P, M],
        [M, M, M, P],
    ]
};

/// Eigenvalues of the four triples on each GHZ state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhzEigenTable {
    rows: [[Sign; 4]; 8],
}

impl GhzEigenTable {
    pub fn rows(&self) -> &[[Sign; 4]; 8] {
        &self.rows
    }

    pub fn row(&self, g: GhzIndex) -> [Sign; 4] {
        self.rows[g.position()]
    }

    /// Eigenvalue of the triple named `label` on `g`.
    pub fn value(&self, g: GhzIndex, label: &str) -> Option<Sign> {
        let col = TABLE_COLUMNS.iter().position(|&c| c == label)?;
        Some(self.rows[g.position()][col])
    }

    pub fn row_product(&self, g: GhzIndex) -> Sign {
        Sign::product(self.row(g))
    }
}

/// Apply each triple to each GHZ state and read off the eigenvalue. Fails if
/// a basis state is not an exact eigenstate.
pub fn ghz_eigen_table() -> Result<GhzEigenTable> {
    let mut rows = [[Sign::Plus; 4]; 8];
    for g in GhzIndex::ALL {
        let state = ghz_state(g);
        for (col, label) in TABLE_COLUMNS.iter().enumerate() {
            let op = PauliString::from_label(label, &DEBBIE_QUBITS)?;
            let image = op.apply_to(&state)?;
            let lambda = state.inner(&image)?.re;
            let not_eigen = |residual| Error::NotEigenstate {
                state: g.unicode_label(),
                operator: label.to_string(),
                residual,
            };
            let sign = Sign::from_f64(lambda, TOLERANCE).ok_or_else(|| not_eigen(f64::NAN))?;
            let residual = image.distance(&state.scaled(Complex64::new(sign.as_f64(), 0.0)))?;
            if residual > TOLERANCE {
                return Err(not_eigen(residual));
            }
            rows[g.position()][col] = sign;
        }
    }
    Ok(GhzEigenTable { rows })
}
