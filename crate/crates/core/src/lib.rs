//! Exact, dense simulation of a six-qubit all-versus-nothing argument.
//!
//! Three singlet pairs are shared between four parties. Debbie holds qubits
//! 2, 4 and 6; Alice, Bob and Charlie hold qubits 1, 3 and 5. The same state
//! rules out local hidden variables (through perfect correlations across the
//! four parties) and noncontextual hidden variables (through a set of
//! operator identities on Debbie's three qubits alone).
//!
//! The crate is split along the lines of that argument:
//!
//! - [`qcore`]: state vectors, density matrices and Pauli algebra for up to
//!   six qubits.
//! - [`verifier`]: the three-singlet state, its eigenequations, the operator
//!   identities, the Mermin operators and the Werner-noise threshold.
//! - [`hv`]: hidden-variable value assignments, exhaustive search, parity
//!   certificates and classical bounds.
//! - [`ghz`]: the GHZ basis, entanglement-swapping expansion, the partial GHZ
//!   analyzer with post-selection, the product-state contextuality runs and a
//!   finite-shot Monte-Carlo experiment.
//!
//! Qubit 1 is the most significant bit of every amplitude index.
//!
//! ```
//! use avn::verifier;
//!
//! let psi = verifier::build_psi();
//! for check in verifier::verify_eigenequations(&psi).unwrap() {
//!     assert!(check.residual < 1e-12);
//! }
//! ```

pub mod error;
pub mod ghz;
pub mod hv;
pub mod qcore;
pub mod sign;
pub mod verifier;

pub use error::{Error, Result};
pub use sign::Sign;

/// Absolute tolerance for identities that hold exactly in real arithmetic.
pub const TOLERANCE: f64 = 1e-12;
