//! Hidden-variable value assignments and their refutation.
//!
//! Each observable gets a predetermined value ±1. The quantum relations
//! become product equations over those values. Both systems built here are
//! unsatisfiable. Two independent routes show it: exhaustive enumeration of
//! all `2^|labels|` assignments, and a parity certificate. The certificate
//! finds a set of equations in which every label occurs an even number of
//! times while the required products multiply to −1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::verifier::{self, MerminOperator, TRIPLE_PRODUCT_ORDER};
use crate::{Error, Result, Sign};

/// The sixteen observables that receive hidden values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObservableLabel {
    X1,
    Y1,
    X3,
    Y3,
    X5,
    Y5,
    X2,
    Y2,
    X4,
    Y4,
    X6,
    Y6,
    X2Y4Y6,
    Y2X4Y6,
    Y2Y4X6,
    X2X4X6,
}

impl ObservableLabel {
    pub const ALL: [ObservableLabel; 16] = {
        use ObservableLabel::*;
        [
            X1, Y1, X3, Y3, X5, Y5, X2, Y2, X4, Y4, X6, Y6, X2Y4Y6, Y2X4Y6, Y2Y4X6, X2X4X6,
        ]
    };

    pub fn as_str(self) -> &'static str {
        use ObservableLabel::*;
        match self {
            X1 => "x1",
            Y1 => "y1",
            X3 => "x3",
            Y3 => "y3",
            X5 => "x5",
            Y5 => "y5",
            X2 => "x2",
            Y2 => "y2",
            X4 => "x4",
            Y4 => "y4",
            X6 => "x6",
            Y6 => "y6",
            X2Y4Y6 => "x2y4y6",
            Y2X4Y6 => "y2x4y6",
            Y2Y4X6 => "y2y4x6",
            X2X4X6 => "x2x4x6",
        }
    }

    pub fn is_triple(self) -> bool {
        self.as_str().len() == 6
    }
}

impl PartialOrd for ObservableLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the text label.
impl Ord for ObservableLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl fmt::Display for ObservableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObservableLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// `Π v(label) = required_product`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation<L> {
    pub labels: Vec<L>,
    pub required_product: Sign,
}

impl<L: fmt::Display> fmt::Display for Equation<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "v({l})")?;
        }
        write!(f, " = {}", self.required_product)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem<L = ObservableLabel> {
    pub name: String,
    pub equations: Vec<Equation<L>>,
}

impl<L: Ord + Clone> ConstraintSystem<L> {
    pub fn new(name: impl Into<String>, equations: Vec<Equation<L>>) -> Self {
        Self {
            name: name.into(),
            equations,
        }
    }

    /// Distinct labels in sorted order; position `i` is bit `i` of an
    /// assignment index.
    pub fn universe(&self) -> Vec<L> {
        self.equations
            .iter()
            .flat_map(|e| e.labels.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn occurrences(&self) -> BTreeMap<L, usize> {
        let mut out = BTreeMap::new();
        for l in self.equations.iter().flat_map(|e| &e.labels) {
            *out.entry(l.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Copy with the required product of equation `index` negated.
    pub fn with_flipped(&self, index: usize) -> Self {
        let mut out = self.clone();
        let eq = &mut out.equations[index];
        eq.required_product = -eq.required_product;
        out
    }
}

/// Values ±1 for every label of a universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment<L = ObservableLabel> {
    values: BTreeMap<L, Sign>,
}

impl<L: Ord + Clone> Assignment<L> {
    pub fn new(values: BTreeMap<L, Sign>) -> Self {
        Self { values }
    }

    /// Bit `i` of `index` set means label `i` takes the value −1.
    pub fn from_index(universe: &[L], index: u64) -> Self {
        let values = universe
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), Sign::from_bit((index >> i) & 1 == 1)))
            .collect();
        Self { values }
    }

    pub fn get(&self, label: &L) -> Option<Sign> {
        self.values.get(label).copied()
    }

    pub fn values(&self) -> &BTreeMap<L, Sign> {
        &self.values
    }

    /// `None` if some label has no value.
    pub fn product(&self, labels: &[L]) -> Option<Sign> {
        labels
            .iter()
            .map(|l| self.get(l))
            .try_fold(Sign::Plus, |acc, v| Some(acc * v?))
    }

    pub fn satisfies(&self, eq: &Equation<L>) -> bool {
        self.product(&eq.labels) == Some(eq.required_product)
    }
}

impl<L: fmt::Display> fmt::Display for Assignment<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(l, v)| format!("{l}={}", v.symbol())).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn labels_of(names: &[&str]) -> Vec<ObservableLabel> {
    names
        .iter()
        .map(|n| n.parse().expect("label from the static operator tables"))
        .collect()
}

/// Local-realistic value equations, read off the factor labels and
/// eigenvalues of [`verifier::eigen_system`].
pub fn lhv_system() -> ConstraintSystem {
    let equations = verifier::eigen_system()
        .into_iter()
        .map(|eq| {
            let names: Vec<&str> = eq.operator.factors().iter().map(|f| f.label()).collect();
            Equation {
                labels: labels_of(&names),
                required_product: Sign::from_f64(eq.eigenvalue, 0.0).expect("eigenvalue is ±1"),
            }
        })
        .collect();
    ConstraintSystem::new("LHV", equations)
}

/// Noncontextual value equations, read off [`verifier::operator_identities`].
pub fn nchv_system() -> ConstraintSystem {
    let equations = verifier::operator_identities()
        .into_iter()
        .map(|id| {
            let names: Vec<&str> = id.product.factors().iter().map(|f| f.label()).collect();
            Equation {
                labels: labels_of(&names),
                required_product: id.rhs,
            }
        })
        .collect();
    ConstraintSystem::new("NCHV", equations)
}

/// The analyzer-enforced rule: the four triple values multiply to −1.
pub fn triple_product_constraint() -> Equation<ObservableLabel> {
    Equation {
        labels: labels_of(&TRIPLE_PRODUCT_ORDER),
        required_product: Sign::Minus,
    }
}

/// Value-level terms `±Π v(label)` of a Mermin operator.
pub fn mermin_terms(op: &MerminOperator) -> Result<Vec<(Vec<ObservableLabel>, Sign)>> {
    op.terms()
        .iter()
        .map(|(c, product)| {
            let labels = product
                .factors()
                .iter()
                .map(|f| f.label().parse())
                .collect::<Result<Vec<_>>>()?;
            let sign = Sign::from_f64(*c, 0.0)
                .ok_or_else(|| Error::PhysicsViolation(format!("coefficient {c} of {} is not ±1", op.label())))?;
            Ok((labels, sign))
        })
        .collect()
}

/// Largest label universe accepted by the exhaustive routines.
pub const MAX_UNIVERSE: usize = 20;

#[derive(Debug, Clone)]
pub struct Enumeration<L = ObservableLabel> {
    pub total: u64,
    pub count: u64,
    pub witnesses: Vec<Assignment<L>>,
}

fn mask_of<L: Ord>(universe: &[L], labels: &[L]) -> u64 {
    labels.iter().fold(0, |m, l| {
        let i = universe.binary_search(l).expect("label in universe");
        m ^ (1 << i)
    })
}

fn check_universe(size: usize) -> Result<()> {
    if size > MAX_UNIVERSE {
        Err(Error::UniverseTooLarge {
            size,
            max: MAX_UNIVERSE,
        })
    } else {
        Ok(())
    }
}

/// Scan every assignment of the system's universe and keep the satisfying ones.
pub fn enumerate_satisfying<L>(system: &ConstraintSystem<L>) -> Result<Enumeration<L>>
where
    L: Ord + Clone + Send + Sync,
{
    let universe = system.universe();
    check_universe(universe.len())?;
    // Π v = −1 iff an odd number of the labels (counted with multiplicity) are −1.
    let rows: Vec<(u64, u32)> = system
        .equations
        .iter()
        .map(|e| (mask_of(&universe, &e.labels), e.required_product.is_minus() as u32))
        .collect();
    let total = 1u64 << universe.len();
    let hits: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&idx| rows.iter().all(|&(m, odd)| (idx & m).count_ones() % 2 == odd))
        .collect();
    Ok(Enumeration {
        total,
        count: hits.len() as u64,
        witnesses: hits.into_iter().map(|i| Assignment::from_index(&universe, i)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCertificate {
    pub unsatisfiable: bool,
    /// 0-based indices of the parity-blocked equations (empty when satisfiable).
    pub equations: Vec<usize>,
    pub reason: String,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Search for a subset of equations whose left-hand sides multiply to +1
/// (every label occurs an even number of times) while their right-hand
/// sides multiply to −1. Such a subset exists iff the system has no
/// solution. Works by elimination over GF(2), independently of enumeration.
pub fn parity_certificate<L: Ord + Clone>(system: &ConstraintSystem<L>) -> ParityCertificate {
    let universe = system.universe();
    let n_eq = system.equations.len();
    struct Row {
        labels: Bits,
        rhs: bool,
        combo: Bits,
    }
    let mut rows: Vec<Row> = system
        .equations
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let mut labels = Bits::new(universe.len());
            for l in &e.labels {
                labels.flip(universe.binary_search(l).expect("label in universe"));
            }
            let mut combo = Bits::new(n_eq);
            combo.flip(k);
            Row {
                labels,
                rhs: e.required_product.is_minus(),
                combo,
            }
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..universe.len() {
        let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].labels.get(col)) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let (p_labels, p_rhs, p_combo) = {
            let p = &rows[pivot_row];
            (p.labels.clone(), p.rhs, p.combo.clone())
        };
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row.labels.get(col) {
                row.labels.xor(&p_labels);
                row.rhs ^= p_rhs;
                row.combo.xor(&p_combo);
            }
        }
        pivot_row += 1;
    }

    let blocked = rows.iter().find(|r| r.labels.is_zero() && r.rhs);
    match blocked {
        Some(row) => {
            let equations: Vec<usize> = (0..n_eq).filter(|&k| row.combo.get(k)).collect();
            let listed: Vec<String> = equations.iter().map(|k| (k + 1).to_string()).collect();
            let scope = if equations.len() == n_eq {
                "all equations".to_string()
            } else {
                format!("equations {{{}}}", listed.join(","))
            };
            ParityCertificate {
                unsatisfiable: true,
                reason: format!(
                    "parity: every label occurs an even number of times across {scope}, \
                     so their left-hand sides multiply to +1, but the required products multiply to -1"
                ),
                equations,
            }
        }
        None => ParityCertificate {
            unsatisfiable: false,
            equations: Vec::new(),
            reason: "not parity-blocked: no subset of equations has even label occurrences with right-hand product -1"
                .into(),
        },
    }
}

#[derive(Debug, Clone)]
pub struct ClassicalBound<L = ObservableLabel> {
    pub max_value: i32,
    /// Lexicographically smallest maximizer: values compared in label order
    /// with +1 before −1.
    pub argmax: Assignment<L>,
    pub min_value: i32,
    /// Number of assignments admitted by the constraint.
    pub admissible: u64,
}

/// Extremes of `Σ signᵢ·Π v(labelᵢⱼ)` over all assignments that satisfy
/// the optional constraint.
pub fn classical_bound<L>(terms: &[(Vec<L>, Sign)], constraint: Option<&Equation<L>>) -> Result<ClassicalBound<L>>
where
    L: Ord + Clone,
{
    let universe: Vec<L> = terms
        .iter()
        .flat_map(|(ls, _)| ls.iter().cloned())
        .chain(constraint.into_iter().flat_map(|c| c.labels.iter().cloned()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = universe.len();
    check_universe(n)?;
    let term_rows: Vec<(u64, i32)> = terms
        .iter()
        .map(|(ls, s)| (mask_of(&universe, ls), s.value()))
        .collect();
    let constraint_row = constraint.map(|c| (mask_of(&universe, &c.labels), c.required_product.is_minus() as u32));

    // ordering key: label 0 is the most significant position
    let key = |idx: u64| -> u64 {
        if n == 0 {
            0
        } else {
            idx.reverse_bits() >> (64 - n)
        }
    };

    let mut best: Option<(i32, u64)> = None;
    let mut min_value = i32::MAX;
    let mut admissible = 0;
    for idx in 0..(1u64 << n) {
        if let Some((m, odd)) = constraint_row {
            if (idx & m).count_ones() % 2 != odd {
                continue;
            }
        }
        admissible += 1;
        let value: i32 = term_rows
            .iter()
            .map(|&(m, s)| if (idx & m).count_ones() % 2 == 1 { -s } else { s })
            .sum();
        min_value = min_value.min(value);
        match best {
            Some((v, k)) if v > value || (v == value && k <= key(idx)) => {}
            _ => best = Some((value, key(idx))),
        }
    }
    let (max_value, best_key) =
        best.ok_or_else(|| Error::PhysicsViolation("constraint admits no assignment".into()))?;
    let idx = if n == 0 { 0 } else { best_key.reverse_bits() >> (64 - n) };
    Ok(ClassicalBound {
        max_value,
        argmax: Assignment::from_index(&universe, idx),
        min_value,
        admissible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ObservableLabel::*;

    #[test]
    fn label_round_trip_and_order() {
        for l in ObservableLabel::ALL {
            assert_eq!(l.as_str().parse::<ObservableLabel>().unwrap(), l);
        }
        assert!("z1".parse::<ObservableLabel>().is_err());
        assert!(X1 < X2Y4Y6 && X2X4X6 < X2Y4Y6 && Y6 > Y5);
    }

    #[test]
    fn single_equation_is_not_parity_blocked() {
        let sys = ConstraintSystem::new(
            "one",
            vec![Equation {
                labels: vec![X1, Y1, X3, Y3],
                required_product: Sign::Plus,
            }],
        );
        let cert = parity_certificate(&sys);
        assert!(!cert.unsatisfiable);
        assert!(cert.reason.starts_with("not parity-blocked"));
        assert_eq!(enumerate_satisfying(&sys).unwrap().count, 8);
    }

    #[test]
    fn universe_too_large() {
        let sys = ConstraintSystem::new(
            "big",
            vec![Equation {
                labels: (0..21u32).collect(),
                required_product: Sign::Plus,
            }],
        );
        assert!(matches!(
            enumerate_satisfying(&sys),
            Err(Error::UniverseTooLarge { size: 21, .. })
        ));
        let terms = vec![((0..21u32).collect::<Vec<_>>(), Sign::Plus)];
        assert!(classical_bound(&terms, None).is_err());
    }

    #[test]
    fn partial_subset_certificate() {
        // {a,b} = +1 and {a,b} = −1 are contradictory; {c} is unrelated
        let sys = ConstraintSystem::new(
            "mixed",
            vec![
                Equation {
                    labels: vec![0u8, 1],
                    required_product: Sign::Plus,
                },
                Equation {
                    labels: vec![2u8],
                    required_product: Sign::Plus,
                },
                Equation {
                    labels: vec![1u8, 0],
                    required_product: Sign::Minus,
                },
            ],
        );
        let cert = parity_certificate(&sys);
        assert!(cert.unsatisfiable);
        assert_eq!(cert.equations, vec![0, 2]);
        assert_eq!(enumerate_satisfying(&sys).unwrap().count, 0);
    }

    #[test]
    fn tie_break_prefers_plus_on_first_label() {
        // v(a)·v(b) is maximal at (+,+) and (−,−); expect (+,+)
        let b = classical_bound(&[(vec!['a', 'b'], Sign::Plus)], None).unwrap();
        assert_eq!(b.max_value, 1);
        assert_eq!(b.argmax.get(&'a'), Some(Sign::Plus));
        assert_eq!(b.argmax.get(&'b'), Some(Sign::Plus));
        // −v(a): maximal only with a = −1
        let c = classical_bound(&[(vec!['a'], Sign::Minus), (vec!['b'], Sign::Plus)], None).unwrap();
        assert_eq!(c.max_value, 2);
        assert_eq!(c.argmax.get(&'a'), Some(Sign::Minus));
    }
}
