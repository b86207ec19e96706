//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p avn-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use avn::ghz::{
    all_contextuality_runs, contextuality_run, decompose_swap, ghz_eigen_table, ghz_state, reference_expansion,
    sample_shots, GhzIndex, SettingPolicy, REFERENCE_SWAP_EXPANSION, TABLE_COLUMNS,
};
use avn::hv::{
    classical_bound, enumerate_satisfying, lhv_system, mermin_terms, nchv_system, parity_certificate,
    triple_product_constraint,
};
use avn::qcore::{expectation, Complex64, PauliString, StateVector};
use avn::verifier::{
    build_psi, expectation_o_noisy, mermin_o, mermin_o_prime, verify_eigenequations, verify_identities,
    violation_threshold, NoiseParams, DEBBIE_QUBITS,
};
use avn::Sign;
use avn_cli::{SweepRow, VerificationReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn eigenequations() -> Verdict {
    let checks = verify_eigenequations(&build_psi()).map_err(|e| e.to_string())?;
    let max = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let all_minus = checks.iter().all(|c| c.expected_eigenvalue == -1.0);
    check(
        checks.len() == 5 && all_minus && max < 1e-12,
        format!("5 residuals, max {max:.1e}"),
    )
}

fn identities() -> Verdict {
    let checks = verify_identities();
    let max = checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let minus: Vec<_> = checks.iter().filter(|c| c.rhs == Sign::Minus).collect();
    let product_of_triples = minus.len() == 1 && TABLE_COLUMNS.iter().all(|t| minus[0].label.contains(t));
    check(
        checks.len() == 5 && product_of_triples && max < 1e-12,
        format!(
            "5 identities, one equal to -I8 ({}), max deviation {max:.1e}",
            minus.first().map_or("none", |c| c.label.as_str())
        ),
    )
}

fn hidden_variables() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for sys in [lhv_system(), nchv_system()] {
        let e = enumerate_satisfying(&sys).map_err(|e| e.to_string())?;
        let cert = parity_certificate(&sys);
        let control = sys.with_flipped(sys.equations.len() - 1);
        let c = enumerate_satisfying(&control).map_err(|e| e.to_string())?;
        ok &= e.total == 1024 && e.count == 0 && cert.unsatisfiable && c.count > 0;
        parts.push(format!(
            "{} {}/{} (parity {}, control {})",
            sys.name,
            e.count,
            e.total,
            if cert.unsatisfiable { "unsat" } else { "sat" },
            c.count
        ));
    }
    check(ok, parts.join("; "))
}

fn quantum_classical_gap() -> Verdict {
    let o = mermin_o();
    let value = expectation(&o, &build_psi()).map_err(|e| e.to_string())?;
    let constraint = triple_product_constraint();
    let bound = |op| -> Result<i32, String> {
        let terms = mermin_terms(op).map_err(|e| e.to_string())?;
        Ok(classical_bound(&terms, Some(&constraint))
            .map_err(|e| e.to_string())?
            .max_value)
    };
    let (b_o, b_p) = (bound(&o)?, bound(&mermin_o_prime())?);
    let prime = mermin_o_prime();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    let mut prime_dev: f64 = 0.0;
    for _ in 0..100 {
        let s = StateVector::random(3, &mut rng).map_err(|e| e.to_string())?;
        prime_dev = prime_dev.max((expectation(&prime, &s).map_err(|e| e.to_string())? - 4.0).abs());
    }
    check(
        (value + 4.0).abs() < 1e-12 && b_o == 2 && b_p == 2 && prime_dev < 1e-12,
        format!("<O>={value:.15}, classical max O={b_o} O'={b_p}, max |<O'>-4| over 100 states {prime_dev:.1e}"),
    )
}

fn noise_threshold() -> Verdict {
    let mut max_dev: f64 = 0.0;
    for i in 0..=10 {
        let f = f64::from(i) / 10.0;
        let v = expectation_o_noisy(NoiseParams::new(f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        max_dev = max_dev.max((v + 4.0 * f * f * f).abs());
    }
    let t = violation_threshold(2.0).map_err(|e| e.to_string())?;
    check(
        max_dev < 1e-10 && (t - 0.793700526).abs() < 1e-6,
        format!("grid max deviation {max_dev:.1e}, threshold {t:.9}"),
    )
}

fn swap_expansion() -> Verdict {
    let psi = build_psi();
    let d = decompose_swap(&psi).map_err(|e| e.to_string())?;
    let support = d.support(1e-12);
    let amp = 1.0 / 8f64.sqrt();
    let mag = support
        .iter()
        .map(|(_, _, c)| (c.norm() - amp).abs())
        .fold(0.0, f64::max);
    // (0,∓)↔(0,±) and (k,±)↔(k,∓): same k, opposite sign
    let paired = support.iter().all(|(g, h, _)| g.k() == h.k() && g.sign() == -h.sign());
    let phase = d.global_phase_against(&REFERENCE_SWAP_EXPANSION);
    let recon = d
        .reconstruct()
        .and_then(|r| r.max_abs_diff(&psi))
        .map_err(|e| e.to_string())?;
    check(
        support.len() == 8 && mag < 1e-12 && paired && phase.is_some() && recon < 1e-12,
        format!(
            "{} terms, magnitude deviation {mag:.1e}, global phase {}, reconstruction {recon:.1e}",
            support.len(),
            phase.map_or("none".into(), |p| format!("{:+.6}", p.re))
        ),
    )
}

fn table1() -> Verdict {
    use Sign::{Minus as M, Plus as P};
    let expected = [
        [P, M, M, M],
        [M, P, P, P],
        [P, M, P, P],
        [M, P, M, M],
        [P, P, M, P],
        [M, M, P, M],
        [P, P, P, M],
        [M, M, M, P],
    ];
    let table = ghz_eigen_table().map_err(|e| e.to_string())?;
    let mut agree = 0;
    for g in GhzIndex::ALL {
        for (col, label) in TABLE_COLUMNS.iter().enumerate() {
            let op = PauliString::from_label(label, &DEBBIE_QUBITS).map_err(|e| e.to_string())?;
            let e = expectation(&op, &ghz_state(g)).map_err(|e| e.to_string())?;
            let want = expected[g.position()][col];
            if table.row(g)[col] == want && (e - want.as_f64()).abs() < 1e-12 {
                agree += 1;
            }
        }
    }
    let products = GhzIndex::ALL.iter().filter(|&&g| table.row_product(g) == M).count();
    check(
        agree == 32 && products == 8,
        format!("{agree}/32 entries, {products}/8 row products -1"),
    )
}

fn contextuality() -> Verdict {
    let runs = all_contextuality_runs().map_err(|e| e.to_string())?;
    let holds = runs
        .iter()
        .filter(|r| r.identity_holds && r.triple_value == Sign::product(r.signs))
        .count();
    let mut printed_ok = 0;
    for index in 1..=4 {
        let run = contextuality_run(index, [Sign::Plus; 3]).map_err(|e| e.to_string())?;
        let reference = reference_expansion(index).map_err(|e| e.to_string())?;
        let same_support = run.support_set() == reference.iter().map(|(g, _)| *g).collect::<Vec<_>>();
        let same_coefs = run
            .support
            .iter()
            .zip(&reference)
            .all(|((_, c), (_, r))| (c - r * Complex64::new(0.5, 0.0)).norm() < 1e-12);
        if same_support && same_coefs && (run.identifiable_probability - 0.25).abs() < 1e-12 {
            printed_ok += 1;
        }
    }
    check(
        runs.len() == 32 && holds == 32 && printed_ok == 4,
        format!(
            "{holds}/{} runs homogeneous, {printed_ok}/4 printed states match with P=0.25",
            runs.len()
        ),
    )
}

fn monte_carlo() -> Verdict {
    let n = 100_000u64;
    let ideal = sample_shots(n, 7, NoiseParams::ideal(), SettingPolicy::RoundRobin).map_err(|e| e.to_string())?;
    let zero_var = ideal.per_setting.iter().all(|s| s.variance == 0.0);
    let sigma = (0.25 * 0.75 / n as f64).sqrt();
    let acc_z = (ideal.acceptance_fraction() - 0.25) / sigma;
    let noisy = sample_shots(
        n,
        7,
        NoiseParams::new(0.9).map_err(|e| e.to_string())?,
        SettingPolicy::RoundRobin,
    )
    .map_err(|e| e.to_string())?;
    let noisy_z = (noisy.estimate + 2.916) / noisy.std_error;
    check(
        ideal.estimate == -4.0 && ideal.std_error == 0.0 && zero_var && acc_z.abs() < 5.0 && noisy_z.abs() < 5.0,
        format!(
            "F=1: {} (var 0: {zero_var}), acceptance {:.5} ({acc_z:+.2} sigma); F=0.9: {:.4} ± {:.4} ({noisy_z:+.2} se)",
            ideal.estimate,
            ideal.acceptance_fraction(),
            noisy.estimate,
            noisy.std_error
        ),
    )
}

fn cli_contract() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_avn");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map_err(|e| e.to_string());

    let v = run(&["verify", "--format", "json"])?;
    let report: VerificationReport = serde_json::from_slice(&v.stdout).map_err(|e| e.to_string())?;
    report.validate()?;
    let verify_ok = v.status.code() == Some(0) && report.passed() && report.sections.len() == 8;

    let mut hv_ok = true;
    for model in ["lhv", "nchv"] {
        let o = run(&["hv", "--model", model])?;
        let text = String::from_utf8_lossy(&o.stdout);
        hv_ok &= o.status.code() == Some(0)
            && text.contains("0 / 1024 satisfying")
            && text.contains("bound(constrained)=2")
            && text.contains("bound(unconstrained)=4");
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("sweep.csv");
    let n = run(&[
        "noise",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "11",
        "--out",
        path.to_str().unwrap(),
    ])?;
    let rows: Vec<SweepRow> = csv::Reader::from_path(&path)
        .map_err(|e| e.to_string())?
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let csv_ok = n.status.code() == Some(0)
        && rows.len() == 11
        && rows.iter().all(|r| r.violates == (r.expectation_o.abs() > 2.0));

    check(
        verify_ok && hv_ok && csv_ok,
        format!("verify exit 0 with 8 sections: {verify_ok}; hv lhv/nchv: {hv_ok}; noise CSV consistent: {csv_ok}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("eigenequations", eigenequations),
        ("operator identities", identities),
        ("hidden-variable unsatisfiability", hidden_variables),
        ("quantum vs classical gap", quantum_classical_gap),
        ("noise threshold", noise_threshold),
        ("swap expansion", swap_expansion),
        ("GHZ eigenvalue table", table1),
        ("contextuality strategy", contextuality),
        ("Monte-Carlo experiment", monte_carlo),
        ("CLI contract", cli_contract),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", i + 1);
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
