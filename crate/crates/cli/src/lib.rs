//! Report schema, verification sections and output formatting behind the
//! `avn` binary.

pub mod format;
pub mod report;
pub mod sections;
pub mod sweep;

pub use report::{Section, Status, VerificationReport, SCHEMA_VERSION};
pub use sweep::SweepRow;
