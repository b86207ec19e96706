//! One function per report section. Each returns a [`Section`] whose status
//! compares floating-point metrics against `tol`; exact checks (counts,
//! signs) ignore `tol`.

use std::collections::BTreeMap;

use avn::ghz::{
    all_contextuality_runs, contextuality_run, decompose_swap, ghz_eigen_table, ghz_state, reference_expansion,
    GhzIndex, REFERENCE_SWAP_EXPANSION, REFERENCE_TABLE, TABLE_COLUMNS,
};
use avn::hv::{
    classical_bound, enumerate_satisfying, lhv_system, mermin_terms, nchv_system, parity_certificate,
    triple_product_constraint, ConstraintSystem,
};
use avn::qcore::{expectation, Complex64, ComplexMatrix, DensityMatrix, Observable, PauliString};
use avn::verifier::{
    build_psi, mermin_o, mermin_o_prime, verify_eigenequations, verify_identities, MerminOperator, CLASSICAL_BOUND,
    DEBBIE_QUBITS,
};
use avn::Sign;
use serde_json::json;

use crate::report::Section;

pub fn all_sections(tol: f64) -> avn::Result<BTreeMap<String, Section>> {
    let mut out = BTreeMap::new();
    out.insert("eigenequations".into(), eigenequations(tol)?);
    out.insert("identities".into(), identities(tol));
    out.insert("hv_lhv".into(), hidden_variables(&lhv_system(), &mermin_o())?);
    out.insert("hv_nchv".into(), hidden_variables(&nchv_system(), &mermin_o_prime())?);
    out.insert("mermin".into(), mermin(tol)?);
    out.insert("table1".into(), table1(tol)?);
    out.insert("swap".into(), swap(tol)?);
    out.insert("contextuality".into(), contextuality(tol)?);
    Ok(out)
}

pub fn eigenequations(tol: f64) -> avn::Result<Section> {
    let checks = verify_eigenequations(&build_psi())?;
    let max = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let details: Vec<_> = checks
        .iter()
        .map(|c| json!({"operator": c.operator_label, "eigenvalue": c.expected_eigenvalue, "residual": c.residual}))
        .collect();
    Ok(Section::new(
        checks.len() == 5 && checks.iter().all(|c| c.residual < tol),
        [("count", checks.len() as f64), ("max_residual", max)],
        json!(details),
    ))
}

pub fn identities(tol: f64) -> Section {
    let checks = verify_identities();
    let max = checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let details: Vec<_> = checks
        .iter()
        .map(|c| json!({"identity": c.label, "rhs": c.rhs.value(), "max_deviation": c.max_deviation}))
        .collect();
    Section::new(
        checks.len() == 5 && checks.iter().all(|c| c.max_deviation < tol),
        [("count", checks.len() as f64), ("max_deviation", max)],
        json!(details),
    )
}

/// Enumeration, parity certificate, sign-flipped control and the classical
/// bound of `op` with and without the triple-product constraint.
pub fn hidden_variables(system: &ConstraintSystem, op: &MerminOperator) -> avn::Result<Section> {
    let e = enumerate_satisfying(system)?;
    let cert = parity_certificate(system);
    let last = system.equations.len() - 1;
    let control = system.with_flipped(last);
    let control_count = enumerate_satisfying(&control)?.count;
    let control_cert = parity_certificate(&control);
    let terms = mermin_terms(op)?;
    let constraint = triple_product_constraint();
    let constrained = classical_bound(&terms, Some(&constraint))?;
    let unconstrained = classical_bound(&terms, None)?;

    let ok = e.count == 0
        && cert.unsatisfiable
        && control_count > 0
        && !control_cert.unsatisfiable
        && f64::from(constrained.max_value) == CLASSICAL_BOUND;
    let equations: Vec<String> = system.equations.iter().map(|eq| eq.to_string()).collect();
    Ok(Section::new(
        ok,
        [
            ("satisfying", e.count as f64),
            ("total", e.total as f64),
            ("control_satisfying", control_count as f64),
            ("bound_constrained", f64::from(constrained.max_value)),
            ("bound_unconstrained", f64::from(unconstrained.max_value)),
        ],
        json!({
            "model": system.name,
            "operator": op.label(),
            "equations": equations,
            "parity_unsatisfiable": cert.unsatisfiable,
            "parity_equations": cert.equations,
            "parity_reason": cert.reason,
            "control_parity_unsatisfiable": control_cert.unsatisfiable,
            "argmax": constrained.argmax.to_string(),
        }),
    ))
}

/// `⟨Ψ|O|Ψ⟩ = −4`, every `O′` term equal to the identity, and both
/// constrained classical bounds equal to 2.
pub fn mermin(tol: f64) -> avn::Result<Section> {
    let psi = build_psi();
    let o = mermin_o();
    let value = expectation(&o, &psi)?;
    let o_dev = (value + 4.0).abs();

    let prime = mermin_o_prime();
    let id = ComplexMatrix::identity(1 << prime.n_qubits());
    let mut prime_dev: f64 = 0.0;
    for (coef, term) in prime.terms() {
        let m = term.matrix().scale(Complex64::new(*coef, 0.0));
        prime_dev = prime_dev.max(m.max_abs_diff(&id));
    }
    // reduced state of qubits 2,4,6: each is half of a singlet
    let prime_value = expectation(&prime, &DensityMatrix::maximally_mixed(prime.n_qubits())?)?;

    let constraint = triple_product_constraint();
    let bound_o = classical_bound(&mermin_terms(&o)?, Some(&constraint))?.max_value;
    let bound_p = classical_bound(&mermin_terms(&prime)?, Some(&constraint))?.max_value;
    let ok = o_dev < tol
        && prime_dev < tol
        && f64::from(bound_o) == CLASSICAL_BOUND
        && f64::from(bound_p) == CLASSICAL_BOUND;
    Ok(Section::new(
        ok,
        [
            ("expectation_O", value),
            ("O_deviation", o_dev),
            ("expectation_O_prime", prime_value),
            ("O_prime_term_deviation", prime_dev),
            ("classical_bound_O", f64::from(bound_o)),
            ("classical_bound_O_prime", f64::from(bound_p)),
        ],
        json!({"O_terms": term_labels(&o), "O_prime_terms": term_labels(&prime)}),
    ))
}

fn term_labels(op: &MerminOperator) -> Vec<String> {
    op.terms()
        .iter()
        .map(|(c, t)| format!("{}{}", if *c < 0.0 { '-' } else { '+' }, t.label()))
        .collect()
}

pub fn table1(tol: f64) -> avn::Result<Section> {
    let table = ghz_eigen_table()?;
    let mismatches = table
        .rows()
        .iter()
        .zip(REFERENCE_TABLE.iter())
        .map(|(a, b)| a.iter().zip(b).filter(|(x, y)| x != y).count())
        .sum::<usize>();
    let bad_products = GhzIndex::ALL
        .iter()
        .filter(|&&g| table.row_product(g) != Sign::Minus)
        .count();
    let mut max_dev: f64 = 0.0;
    let mut rows = BTreeMap::new();
    for g in GhzIndex::ALL {
        let state = ghz_state(g);
        for (col, label) in TABLE_COLUMNS.iter().enumerate() {
            let op = PauliString::from_label(label, &DEBBIE_QUBITS)?;
            max_dev = max_dev.max((expectation(&op, &state)? - table.row(g)[col].as_f64()).abs());
        }
        rows.insert(
            g.ascii_label(),
            table.row(g).iter().map(|s| s.value()).collect::<Vec<_>>(),
        );
    }
    Ok(Section::new(
        mismatches == 0 && bad_products == 0 && max_dev < tol,
        [
            ("entries", 32.0),
            ("mismatches", mismatches as f64),
            ("row_product_failures", bad_products as f64),
            ("max_expectation_deviation", max_dev),
        ],
        json!({"columns": TABLE_COLUMNS, "rows": rows}),
    ))
}

pub fn swap(tol: f64) -> avn::Result<Section> {
    let psi = build_psi();
    let d = decompose_swap(&psi)?;
    let support = d.support(avn::TOLERANCE);
    let amp = 0.125f64.sqrt();
    let mag_dev = support
        .iter()
        .map(|(_, _, c)| (c.norm() - amp).abs())
        .fold(0.0, f64::max);
    let pairing_violations = support.iter().filter(|(g, h, _)| *h != g.partner()).count();
    let recon = d.reconstruct()?.max_abs_diff(&psi)?;
    let phase = d.global_phase_against(&REFERENCE_SWAP_EXPANSION);
    let coefficients: Vec<_> = support
        .iter()
        .map(|(g, h, c)| json!({"debbie": g.ascii_label(), "remote": h.ascii_label(), "re": c.re, "im": c.im}))
        .collect();
    Ok(Section::new(
        support.len() == 8 && mag_dev < tol && pairing_violations == 0 && recon < tol && phase.is_some(),
        [
            ("nonzero", support.len() as f64),
            ("max_magnitude_deviation", mag_dev),
            ("pairing_violations", pairing_violations as f64),
            ("reconstruction_error", recon),
            ("phase_matched", f64::from(u8::from(phase.is_some()))),
        ],
        json!({
            "coefficients": coefficients,
            "global_phase": phase.map(|p| json!({"re": p.re, "im": p.im})),
        }),
    ))
}

/// All 32 runs, plus a coefficient comparison for the four printed states.
pub fn contextuality(tol: f64) -> avn::Result<Section> {
    let runs = all_contextuality_runs()?;
    let holds = runs.iter().filter(|r| r.identity_holds).count();
    let mut coef_dev: f64 = 0.0;
    let mut prob_dev: f64 = 0.0;
    let mut support_mismatches = 0;
    let mut printed = Vec::new();
    for index in 1..=4 {
        let run = contextuality_run(index, [Sign::Plus; 3])?;
        let reference = reference_expansion(index)?;
        if run.support.len() != reference.len() {
            support_mismatches += 1;
        }
        for ((g, c), (rg, rc)) in run.support.iter().zip(&reference) {
            if g != rg {
                support_mismatches += 1;
            }
            coef_dev = coef_dev.max((c - rc * 0.5).norm());
        }
        prob_dev = prob_dev.max((run.identifiable_probability - 0.25).abs());
        printed.push(json!({
            "identity": index,
            "support": run.support_set().iter().map(|g| g.ascii_label()).collect::<Vec<_>>(),
            "triple": run.triple_label,
            "value": run.triple_value.value(),
        }));
    }
    Ok(Section::new(
        runs.len() == 32 && holds == 32 && support_mismatches == 0 && coef_dev < tol && prob_dev < tol,
        [
            ("runs", runs.len() as f64),
            ("identity_holds", holds as f64),
            ("printed_support_mismatches", f64::from(support_mismatches)),
            ("printed_coefficient_deviation", coef_dev),
            ("probability_deviation", prob_dev),
        ],
        json!({"printed_states": printed}),
    ))
}
