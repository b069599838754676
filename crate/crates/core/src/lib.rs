//! Canonicalization of closed additive subgroups `M` of `R^d` containing
//! `Z^d`, and decision procedures for the extra invariance of finitely
//! generated shift-invariant spaces, via exact lattice algebra and windowed
//! Gramian fiberization.
//!
//! The crate is organized in four layers:
//!
//! - [`exact_linalg`]: arbitrary-precision integer/rational matrices, Smith
//!   and Hermite normal forms, dual bases, constraint lattices.
//! - [`subgroup`]: canonical form `(V, W, a_1..a_q)` of a closed subgroup,
//!   dual lattices, membership, and residue reduction of integer tiles.
//! - [`fibered`]: windowed Fourier-domain generators, Gramian fields,
//!   the rank / fiber / modulation invariance tests, brackets, projections,
//!   exactly-invariant constructions, and support accounting.
//! - [`oracle`]: independent brute-force verifiers used to ground test
//!   expectations; they share no code with the main paths.

pub mod error;
pub mod exact_linalg;
pub mod fibered;
pub mod oracle;
pub mod subgroup;

pub use error::{Error, Result};

/// Default relative tolerance for numerical rank and residual decisions.
pub const DEFAULT_TOL_REL: f64 = 1e-8;
