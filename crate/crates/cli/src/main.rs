//! `avn` command-line front end. Exit codes: 0 all checks pass, 1
//! verification or I/O failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use avn::ghz::{
    contextuality_run, decompose_swap, ghz_eigen_table, sample_shots, GhzIndex, SettingPolicy,
    REFERENCE_SWAP_EXPANSION, REFERENCE_TABLE, TABLE_COLUMNS,
};
use avn::hv::{
    classical_bound, enumerate_satisfying, lhv_system, mermin_terms, nchv_system, parity_certificate,
    triple_product_constraint,
};
use avn::qcore::PauliAxis;
use avn::verifier::{build_psi, mermin_o, mermin_o_prime, violation_threshold, NoiseParams, CLASSICAL_BOUND};
use avn::{Sign, TOLERANCE};
use avn_cli::{format, sections, sweep, VerificationReport};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "avn",
    version,
    about = "Verify the three-singlet all-versus-nothing argument numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check and emit a report
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        /// Upper bound on residuals and deviations.
        #[arg(long, default_value_t = 1e-12, value_parser = positive_real)]
        tolerance: f64,
    },

    /// Exhaustive hidden-variable search
    Hv {
        #[arg(long, value_enum)]
        model: Model,

        /// Print every satisfying assignment.
        #[arg(long)]
        list_witnesses: bool,
    },

    /// Sweep ⟨O⟩ over Werner fidelity and write CSV
    Noise {
        #[arg(long, default_value_t = 0.0, value_parser = unit_interval)]
        from: f64,

        #[arg(long, default_value_t = 1.0, value_parser = unit_interval)]
        to: f64,

        /// Grid points, endpoints included.
        #[arg(long, default_value_t = 11)]
        steps: usize,

        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Expand the state in GHZ pairs across the two triples
    Swap,

    /// Triple eigenvalues on the GHZ basis
    Table1,

    /// Post-selection on one product eigenstate of qubits 1,3,5
    Context {
        /// Which identity's local axes (1..=4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        identity: u8,

        /// Local eigenvalue signs, e.g. `++-`.
        #[arg(long, value_parser = three_signs, allow_hyphen_values = true)]
        signs: [Sign; 3],
    },

    /// Monte-Carlo run of the post-selected measurement
    Sample {
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,

        #[arg(long, default_value_t = 7)]
        seed: u64,

        #[arg(long, default_value_t = 1.0, value_parser = unit_interval)]
        fidelity: f64,

        /// `round-robin`, `fixed` or `fixed:N`.
        #[arg(long, default_value = "round-robin", value_parser = policy)]
        policy: SettingPolicy,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Lhv,
    Nchv,
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive real, got `{s}`")),
    }
}

fn unit_interval(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if (0.0..=1.0).contains(&x) => Ok(x),
        _ => Err(format!("expected a real in [0, 1], got `{s}`")),
    }
}

fn three_signs(s: &str) -> Result<[Sign; 3], String> {
    avn::sign::parse_signs(s)
        .and_then(|v| <[Sign; 3]>::try_from(v).ok())
        .ok_or_else(|| format!("expected three of `+`/`-`, got `{s}`"))
}

fn policy(s: &str) -> Result<SettingPolicy, String> {
    s.parse().map_err(|e: avn::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { format, tolerance } => verify(format, tolerance),
        Command::Hv { model, list_witnesses } => hv(model, list_witnesses),
        Command::Noise { from, to, steps, out } => {
            if steps < 2 || from >= to {
                Cli::command()
                    .error(ErrorKind::ValueValidation, "noise needs --from < --to and --steps >= 2")
                    .exit();
            }
            noise(from, to, steps, out)
        }
        Command::Swap => swap(),
        Command::Table1 => table1(),
        Command::Context { identity, signs } => context(identity.into(), signs),
        Command::Sample {
            shots,
            seed,
            fidelity,
            policy,
        } => sample(shots, seed, fidelity, policy),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn verify(format: Format, tolerance: f64) -> Result<bool> {
    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let report = VerificationReport::new(timestamp, tolerance, sections::all_sections(tolerance)?);
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(report.passed())
}

fn hv(model: Model, list_witnesses: bool) -> Result<bool> {
    let (system, op) = match model {
        Model::Lhv => (lhv_system(), mermin_o()),
        Model::Nchv => (nchv_system(), mermin_o_prime()),
    };
    let e = enumerate_satisfying(&system)?;
    let cert = parity_certificate(&system);
    let terms = mermin_terms(&op)?;
    let constrained = classical_bound(&terms, Some(&triple_product_constraint()))?;
    let unconstrained = classical_bound(&terms, None)?;

    let mut out = io::stdout().lock();
    writeln!(out, "model {} ({} equations)", system.name, system.equations.len())?;
    for (i, eq) in system.equations.iter().enumerate() {
        writeln!(out, "  ({}) {eq}", i + 1)?;
    }
    let verdict = if cert.unsatisfiable {
        "parity-unsatisfiable"
    } else {
        "not parity-blocked"
    };
    writeln!(
        out,
        "{} / {} satisfying; {verdict}; bound(constrained)={}",
        e.count, e.total, constrained.max_value
    )?;
    writeln!(out, "bound(unconstrained)={}", unconstrained.max_value)?;
    writeln!(out, "certificate: {}", cert.reason)?;
    writeln!(out, "constrained argmax: {}", constrained.argmax)?;
    if list_witnesses {
        if e.witnesses.is_empty() {
            writeln!(out, "no witnesses")?;
        }
        for w in &e.witnesses {
            writeln!(out, "witness {w}")?;
        }
    }
    Ok(e.count == 0 && cert.unsatisfiable && f64::from(constrained.max_value) == CLASSICAL_BOUND)
}

fn noise(from: f64, to: f64, steps: usize, out: Option<PathBuf>) -> Result<bool> {
    let rows = sweep::sweep(from, to, steps)?;
    let threshold = violation_threshold(CLASSICAL_BOUND)?;
    match &out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            sweep::write_csv(&rows, BufWriter::new(file))?;
            println!("wrote {} rows to {}", rows.len(), path.display());
            println!("threshold F={}", format::fidelity(threshold));
        }
        None => {
            sweep::write_csv(&rows, io::stdout().lock())?;
            eprintln!("threshold F={}", format::fidelity(threshold));
        }
    }
    Ok(rows.iter().all(|r| r.is_consistent()))
}

fn swap() -> Result<bool> {
    let psi = build_psi();
    let d = decompose_swap(&psi)?;
    let support = d.support(TOLERANCE);
    let mut out = io::stdout().lock();
    writeln!(out, "Φ(2,4,6) ⊗ Φ(1,3,5)  coefficient")?;
    for (g, h, c) in &support {
        writeln!(
            out,
            "{} ⊗ {}            {}",
            g.unicode_label(),
            h.unicode_label(),
            format::complex(*c)
        )?;
    }
    let recon = d.reconstruct()?.max_abs_diff(&psi)?;
    let phase = d.global_phase_against(&REFERENCE_SWAP_EXPANSION);
    writeln!(
        out,
        "nonzero={} total_weight={}",
        support.len(),
        format::compact(d.total_weight())
    )?;
    writeln!(out, "reconstruction_error={}", format::compact(recon))?;
    match phase {
        Some(p) => writeln!(out, "matches reference up to global phase {}", format::complex(p))?,
        None => writeln!(out, "does not match reference up to a global phase")?,
    }
    Ok(support.len() == 8 && recon < TOLERANCE && phase.is_some())
}

fn table1() -> Result<bool> {
    let table = ghz_eigen_table()?;
    let mut out = io::stdout().lock();
    writeln!(out, "    {}", TABLE_COLUMNS.map(|c| format!("{c:>6}")).join(" "))?;
    for g in GhzIndex::ALL {
        let row: Vec<String> = table.row(g).iter().map(|s| format!("{s:+}")).collect();
        writeln!(out, "{}: {}", g.unicode_label(), row.join(" "))?;
    }
    let ok = table.rows() == &REFERENCE_TABLE && GhzIndex::ALL.iter().all(|&g| table.row_product(g) == Sign::Minus);
    writeln!(
        out,
        "row products all -1 and reference match: {}",
        if ok { "yes" } else { "no" }
    )?;
    Ok(ok)
}

fn state_label(axes: [PauliAxis; 3], signs: [Sign; 3]) -> String {
    axes.iter()
        .zip(signs)
        .map(|(a, s)| match (a, s) {
            (PauliAxis::X, Sign::Plus) => '+',
            (PauliAxis::X, Sign::Minus) => '-',
            (_, Sign::Plus) => 'R',
            (_, Sign::Minus) => 'L',
        })
        .collect()
}

fn context(identity: usize, signs: [Sign; 3]) -> Result<bool> {
    let run = contextuality_run(identity, signs)?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "identity {identity}: qubits 1,3,5 in |{}⟩",
        state_label(run.axes, run.signs)
    )?;
    for (g, c) in &run.support {
        writeln!(out, "  {}  {}", g.unicode_label(), format::complex(*c))?;
    }
    let support: Vec<String> = run.support_set().iter().map(|g| g.unicode_label()).collect();
    writeln!(
        out,
        "support {{{}}}; {}={:+}; identity {}; P(identifiable)={}",
        support.join(","),
        run.triple_label,
        run.triple_value,
        if run.identity_holds { "holds" } else { "fails" },
        format::compact(run.identifiable_probability)
    )?;
    Ok(run.identity_holds)
}

fn sample(shots: u64, seed: u64, fidelity: f64, policy: SettingPolicy) -> Result<bool> {
    let s = sample_shots(shots, seed, NoiseParams::new(fidelity)?, policy)?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "shots {shots}, seed {seed}, F={}, policy {policy}",
        format::fidelity(fidelity)
    )?;
    for st in &s.per_setting {
        writeln!(
            out,
            "  setting {}: accepted {:>7}  mean {:+.6}",
            st.setting, st.accepted, st.mean
        )?;
    }
    writeln!(out, "estimate {:.6} ± {:.6}", s.estimate, s.std_error)?;
    writeln!(
        out,
        "acceptance {:.6} ({} / {})",
        s.acceptance_fraction(),
        s.accepted,
        s.shots_requested
    )?;
    Ok(true)
}
