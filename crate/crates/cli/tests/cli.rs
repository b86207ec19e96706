use std::process::{Command, Output};

use avn_cli::report::SECTION_NAMES;
use avn_cli::{SweepRow, VerificationReport};

fn avn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn report(args: &[&str]) -> (i32, VerificationReport) {
    let o = avn(args);
    let r: VerificationReport = serde_json::from_slice(&o.stdout).expect("valid report JSON");
    (o.status.code().unwrap(), r)
}

#[test]
fn verify_json_passes() {
    let (code, r) = report(&["verify", "--format", "json"]);
    assert_eq!(code, 0);
    r.validate().unwrap();
    assert!(r.passed());
    assert_eq!(r.sections.len(), SECTION_NAMES.len());
    assert!(r.sections["eigenequations"].metric("max_residual").unwrap() < 1e-12);
    assert_eq!(r.sections["hv_lhv"].metric("satisfying"), Some(0.0));
    assert_eq!(r.sections["hv_nchv"].metric("bound_unconstrained"), Some(4.0));
    assert_eq!(r.sections["mermin"].metric("classical_bound_O_prime"), Some(2.0));
    assert_eq!(r.sections["swap"].metric("nonzero"), Some(8.0));
    assert_eq!(r.sections["contextuality"].metric("identity_holds"), Some(32.0));
}

#[test]
fn verify_report_round_trips() {
    let (_, r) = report(&["verify", "--format", "json"]);
    let again: VerificationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn verify_unreachable_tolerance_fails() {
    let (code, r) = report(&["verify", "--format", "json", "--tolerance", "1e-30"]);
    assert_eq!(code, 1);
    r.validate().unwrap();
    assert!(!r.passed());
    // exact sections do not depend on the tolerance
    assert!(r.sections["hv_lhv"].status.is_pass());
    assert!(r.sections["hv_nchv"].status.is_pass());
}

#[test]
fn verify_output_is_stable() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(avn(&["verify", "--format", "json"]));
    let b = strip(avn(&["verify", "--format", "json"]));
    assert_eq!(a, b);
    let t1 = avn(&["verify"]);
    let t2 = avn(&["verify"]);
    assert_eq!(t1.stdout, t2.stdout);
    assert!(stdout(&t1).ends_with("overall         pass\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--format", "yaml"][..],
        &["verify", "--tolerance", "-1"],
        &["hv", "--model", "foo"],
        &["hv"],
        &["noise", "--from", "0.6", "--to", "0.4"],
        &["noise", "--steps", "1"],
        &["noise", "--to", "1.5"],
        &["context", "--identity", "0", "--signs", "+++"],
        &["context", "--identity", "1", "--signs", "++"],
        &["context", "--identity", "1", "--signs", "+x+"],
        &["sample", "--fidelity", "1.2"],
        &["sample", "--shots", "0"],
        &["sample", "--policy", "fixed:9"],
        &["bogus"],
    ] {
        assert_eq!(avn(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_on_every_subcommand() {
    for sub in ["verify", "hv", "noise", "swap", "table1", "context", "sample"] {
        let o = avn(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("Usage"));
    }
}

#[test]
fn hv_models() {
    for (model, labels) in [("lhv", "v(x1)"), ("nchv", "v(x2)")] {
        let o = avn(&["hv", "--model", model]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(
            text.contains("0 / 1024 satisfying; parity-unsatisfiable; bound(constrained)=2"),
            "{text}"
        );
        assert!(text.contains("bound(unconstrained)=4"));
        assert!(text.contains(labels));
    }
    let o = avn(&["hv", "--model", "lhv", "--list-witnesses"]);
    assert!(stdout(&o).contains("no witnesses"));
}

#[test]
fn noise_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = avn(&[
        "noise",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let threshold: f64 = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("threshold F="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((threshold - 0.5f64.cbrt()).abs() < 1e-6);

    let raw = std::fs::read_to_string(&path).unwrap();
    assert!(raw.starts_with("F,expectation_O,lhv_bound,violates\n"));
    assert!(!raw.contains('\r'));
    assert!(raw.contains("\n0.500000000,-0.500000000000,2,false\n"));
    assert!(raw.ends_with("\n1.000000000,-4.00000000000,2,true\n"));

    let rows: Vec<SweepRow> = csv::Reader::from_path(&path)
        .unwrap()
        .deserialize()
        .map(Result::unwrap)
        .collect();
    assert_eq!(rows.len(), 11);
    for w in rows.windows(2) {
        assert!(w[0].fidelity < w[1].fidelity);
    }
    for r in &rows {
        assert!(r.is_consistent());
        assert_eq!(r.lhv_bound, 2.0);
        assert!((r.expectation_o + 4.0 * r.fidelity.powi(3)).abs() < 1e-10);
    }
}

#[test]
fn noise_to_unwritable_path_fails() {
    let o = avn(&["noise", "--out", "/nonexistent-dir/sweep.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table1_rows() {
    let o = avn(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Φ₀⁺: +1 -1 -1 -1\n"));
    assert!(text.contains("Φ₃⁻: -1 -1 -1 +1\n"));
}

#[test]
fn swap_listing() {
    let o = avn(&["swap"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("0.353553390593").count(), 8);
    assert!(text.contains("global phase -1.000000000000"));
}

#[test]
fn context_runs() {
    let o = avn(&["context", "--identity", "1", "--signs", "+++"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("support {Φ₀⁻,Φ₁⁻,Φ₂⁺,Φ₃⁺}; x2y4y6=+1; identity holds; P(identifiable)=0.25"));
    let o = avn(&["context", "--identity", "4", "--signs", "+--"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x2x4x6=+1; identity holds"));
}

#[test]
fn sample_is_deterministic() {
    let a = avn(&["sample", "--shots", "20000", "--seed", "3", "--fidelity", "0.95"]);
    let b = avn(&["sample", "--shots", "20000", "--seed", "3", "--fidelity", "0.95"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = avn(&["sample", "--shots", "20000", "--fidelity", "1.0"]);
    assert!(stdout(&o).contains("estimate -4.000000 ± 0.000000"));
}
