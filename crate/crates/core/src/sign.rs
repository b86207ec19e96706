use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use crate::Error;

/// A ±1 value: a measurement outcome, an eigenvalue or a required product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    /// Nearest sign to a real number; `None` when it is not within `tol` of ±1.
    pub fn from_f64(x: f64, tol: f64) -> Option<Sign> {
        if (x - 1.0).abs() <= tol {
            Some(Sign::Plus)
        } else if (x + 1.0).abs() <= tol {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn from_bit(bit: bool) -> Sign {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn product<I: IntoIterator<Item = Sign>>(it: I) -> Sign {
        it.into_iter().fold(Sign::Plus, |a, b| a * b)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" | "−" | "−1" => Ok(Sign::Minus),
            _ => Err(Error::BadSign(s.to_string())),
        }
    }
}

/// Parse a compact sign string such as `"+-+"`.
pub fn parse_signs(s: &str) -> Option<Vec<Sign>> {
    s.chars()
        .map(|c| match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        assert_eq!(Sign::Plus * Sign::Plus, Sign::Plus);
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert_eq!(Sign::product([Sign::Minus; 5]), Sign::Minus);
    }

    #[test]
    fn parse_compact() {
        assert_eq!(parse_signs("+-+"), Some(vec![Sign::Plus, Sign::Minus, Sign::Plus]));
        assert_eq!(parse_signs("+x"), None);
        assert_eq!(Sign::from_f64(-0.9999999999999, 1e-9), Some(Sign::Minus));
        assert_eq!(Sign::from_f64(0.0, 1e-9), None);
    }
}
