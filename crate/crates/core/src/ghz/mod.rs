//! GHZ-basis measurements on Debbie's qubits.
//!
//! Debbie's GHZ measurement on qubits 2, 4, 6 swaps the entanglement of the
//! three singlets onto qubits 1, 3, 5. A linear-optics analyzer only
//! identifies `Φ₀⁺` and `Φ₀⁻`; every other outcome is reported as a failure
//! and discarded by post-selection.
//!
//! The analyzer is modeled as an ideal projective measurement followed by a
//! two-of-eight identification step. Acceptance statistics come from Born
//! weights alone. The optical losses before the analyzer (the chance that
//! all three photons reach it at all) are not modeled; with Born weights the
//! identifiable fraction is 1/4 for every input considered here.

mod analyzer;
mod basis;
mod context;
mod sampling;
mod swap;

pub use analyzer::{analyzer_measure, ghz_measure, postselect, AnalyzerOutcome, MeasurementRecord};
pub use basis::{ghz_basis, ghz_eigen_table, ghz_state, GhzEigenTable, GhzIndex, REFERENCE_TABLE, TABLE_COLUMNS};
pub use context::{
    all_contextuality_runs, contextuality_run, identity_axes, product_eigenstate, reference_expansion,
    single_eigenstate, ContextualityRun,
};
pub use sampling::{sample_shots, SampleSummary, SettingPolicy, SettingStats, ShotResult};
pub use swap::{decompose_swap, SwapDecomposition, REFERENCE_SWAP_EXPANSION, SWAP_ORDER, UNSWAP_ORDER};
