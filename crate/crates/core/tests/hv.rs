use std::collections::BTreeMap;

use avn::hv::*;
use avn::verifier::{mermin_o, mermin_o_prime};
use avn::Sign;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ObservableLabel::*;

/// Brute-force satisfiability without bit tricks: build every assignment as
/// a map and multiply values label by label.
fn naive_count<L: Ord + Clone>(sys: &ConstraintSystem<L>) -> u64 {
    let universe = sys.universe();
    let mut count = 0;
    for idx in 0..(1u64 << universe.len()) {
        let values: BTreeMap<L, i32> = universe
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), if idx >> i & 1 == 1 { -1 } else { 1 }))
            .collect();
        let ok = sys
            .equations
            .iter()
            .all(|e| e.labels.iter().map(|l| values[l]).product::<i32>() == e.required_product.value());
        count += ok as u64;
    }
    count
}

#[test]
fn lhv_system_shape() {
    let sys = lhv_system();
    assert_eq!(sys.name, "LHV");
    assert_eq!(sys.equations.len(), 5);
    assert_eq!(sys.equations[0].labels, vec![X2Y4Y6, X1, Y3, Y5]);
    assert!(sys.equations.iter().all(|e| e.labels.len() == 4));
    assert!(sys.equations.iter().all(|e| e.required_product == Sign::Minus));
    let universe = sys.universe();
    assert_eq!(universe.len(), 10);
    assert_eq!(universe.iter().filter(|l| !l.is_triple()).count(), 6);
    assert!(sys.occurrences().values().all(|&n| n == 2));
}

#[test]
fn nchv_system_shape() {
    let sys = nchv_system();
    assert_eq!(sys.equations.len(), 5);
    assert_eq!(sys.equations[4].labels, vec![X2X4X6, X2Y4Y6, Y2X4Y6, Y2Y4X6]);
    assert_eq!(sys.equations[4].required_product, Sign::Minus);
    assert_eq!(sys.equations[0].labels, vec![X2Y4Y6, X2, Y4, Y6]);
    let rhs: Vec<Sign> = sys.equations.iter().map(|e| e.required_product).collect();
    assert_eq!(rhs, [Sign::Plus, Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus]);
    assert_eq!(sys.universe().len(), 10);
    assert!(sys.occurrences().values().all(|&n| n == 2));
}

#[test]
fn both_systems_are_unsatisfiable() {
    for sys in [lhv_system(), nchv_system()] {
        let e = enumerate_satisfying(&sys).unwrap();
        assert_eq!(e.total, 1024);
        assert_eq!(e.count, 0, "{}", sys.name);
        assert!(e.witnesses.is_empty());
        assert_eq!(naive_count(&sys), 0);
        let cert = parity_certificate(&sys);
        assert!(cert.unsatisfiable);
        assert_eq!(cert.equations, vec![0, 1, 2, 3, 4]);
        assert!(cert.reason.starts_with("parity"));
    }
}

#[test]
fn flipping_the_last_equation_restores_solutions() {
    for sys in [lhv_system(), nchv_system()] {
        let control = sys.with_flipped(4);
        let e = enumerate_satisfying(&control).unwrap();
        assert!(e.count > 0);
        assert_eq!(e.count, naive_count(&control));
        assert!(!parity_certificate(&control).unsatisfiable);
        for w in &e.witnesses {
            for eq in &control.equations {
                assert!(w.satisfies(eq));
            }
        }
    }
}

fn random_system<R: Rng>(rng: &mut R) -> ConstraintSystem<u8> {
    let n_labels = rng.gen_range(4..=12u8);
    let n_eq = rng.gen_range(1..=8);
    let equations = (0..n_eq)
        .map(|_| Equation {
            labels: (0..4).map(|_| rng.gen_range(0..n_labels)).collect(),
            required_product: if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
        })
        .collect();
    ConstraintSystem::new("random", equations)
}

#[test]
fn certificate_agrees_with_enumeration_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut unsat = 0;
    for _ in 0..100 {
        let sys = random_system(&mut rng);
        let e = enumerate_satisfying(&sys).unwrap();
        let cert = parity_certificate(&sys);
        assert_eq!(cert.unsatisfiable, e.count == 0, "{sys:?}");
        assert_eq!(e.count, naive_count(&sys));
        for w in &e.witnesses {
            assert!(sys.equations.iter().all(|eq| w.satisfies(eq)));
        }
        if cert.unsatisfiable {
            unsat += 1;
            // the reported equations really are parity-blocked
            let mut counts = BTreeMap::new();
            let mut rhs = Sign::Plus;
            for &k in &cert.equations {
                for l in &sys.equations[k].labels {
                    *counts.entry(*l).or_insert(0) += 1;
                }
                rhs = rhs * sys.equations[k].required_product;
            }
            assert!(counts.values().all(|c| c % 2 == 0));
            assert_eq!(rhs, Sign::Minus);
        }
    }
    assert!(unsat > 0 && unsat < 100, "random family should mix outcomes ({unsat})");
}

#[test]
fn classical_bounds() {
    let constraint = triple_product_constraint();
    let o = mermin_terms(&mermin_o()).unwrap();
    let op = mermin_terms(&mermin_o_prime()).unwrap();
    assert_eq!(o[0].0, vec![X2Y4Y6, X1, Y3, Y5]);

    let b = classical_bound(&o, Some(&constraint)).unwrap();
    assert_eq!(b.max_value, 2);
    assert_eq!(b.min_value, -2);
    assert_eq!(b.admissible, 512);
    assert!(b.argmax.satisfies(&constraint));
    let v: i32 = o
        .iter()
        .map(|(ls, s)| s.value() * b.argmax.product(ls).unwrap().value())
        .sum();
    assert_eq!(v, 2);

    assert_eq!(classical_bound(&op, Some(&constraint)).unwrap().max_value, 2);

    let free = classical_bound(&o, None).unwrap();
    assert_eq!(free.max_value, 4);
    assert!(free.argmax.values().values().all(|&s| s == Sign::Plus));
}

#[test]
fn classical_bound_invariant_under_label_negation() {
    let constraint = triple_product_constraint();
    let o = mermin_terms(&mermin_o()).unwrap();
    let base = classical_bound(&o, Some(&constraint)).unwrap().max_value;
    for label in [X1, Y1, X3, Y3, X5, Y5] {
        let negated: Vec<_> = o
            .iter()
            .map(|(ls, s)| {
                let hits = ls.iter().filter(|l| **l == label).count();
                (ls.clone(), if hits % 2 == 1 { -*s } else { *s })
            })
            .collect();
        assert_eq!(classical_bound(&negated, Some(&constraint)).unwrap().max_value, base);
    }
}

#[test]
fn argmax_is_deterministic() {
    let constraint = triple_product_constraint();
    let o = mermin_terms(&mermin_o()).unwrap();
    let a = classical_bound(&o, Some(&constraint)).unwrap();
    let b = classical_bound(&o, Some(&constraint)).unwrap();
    assert_eq!(a.argmax, b.argmax);
    // smallest in label order with + before −: the first labels x1, x2x4x6 stay +
    assert_eq!(a.argmax.get(&X1), Some(Sign::Plus));
}
