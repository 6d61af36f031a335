//! Exact-arithmetic toolkit for subspaces of binary forms.
//!
//! Everything here runs over arbitrary-precision rationals, so results are
//! exact and reproducible. The library provides:
//!
//! * [`linalg`] — canonical (row-reduced) subspaces of `Q^n` and the lattice
//!   operations on them: span, kernel, sum, intersection, preimage.
//! * [`forms`] — binary forms of degree `d`, the derivation operators on
//!   them, contraction spaces `∂T` and `∂⁻¹T`, catalecticant matrices and
//!   secant-variety membership, apolarity annihilators.
//! * [`classify`] — the numerical type `(a, b₁, …, b_r)` of a subspace
//!   `T ⊆ S^dU`, its decomposition into a curve-generated part plus
//!   derivative systems, and the Kronecker pencil cross-check.
//! * [`strata`] — enumeration of admissible numerical types for given
//!   `(d, e)`, stratum dimension formulas, the generic type, and monomial
//!   fixture subspaces realizing each type.
//! * [`curves`] — degree-`d` rational curves in `P^s` obtained by projecting
//!   the rational normal curve from a vertex, splitting types of the
//!   restricted tangent bundle (computed two independent ways), and
//!   construction of curves with a prescribed splitting type.
//! * [`verify`] — batch self-check drivers used by the CLI and the test
//!   suite.

pub mod classify;
pub mod curves;
mod error;
pub mod forms;
pub mod linalg;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
