//! Exact finite-size logarithmic bipartite fidelity of the open XXZ chain at
//! anisotropy `Δ = -1/2` with the one-parameter family of diagonal boundary
//! fields `p = (1/2 - x)/2`, `p̄ = (1/2 - 1/x)/2`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact_arith`]: rationals, the cyclotomic field `Q(ω)`, integer
//!   polynomials, multivariate Laurent polynomials and fraction-free
//!   determinants.
//! - [`combinatorics`]: alternating-sign-matrix and plane-partition counts.
//! - [`vertex_model`]: six-vertex `Ř`/`K` matrices, the boundary qKZ vectors for
//!   up to three sites and the generalised overlap `Ω`, with symbolic checks of
//!   every exchange, reflection and reduction identity.
//! - [`spin_chain`]: the sector Hamiltonian and its exact ground state.
//! - [`overlap_fidelity`]: overlaps by direct contraction and by the binomial
//!   determinant formulas, plus the fidelity itself.
//! - [`characters`]: symplectic characters of the double-staircase partition.
//! - [`asymptotics`]: the large-`N` series, Gorin–Panova coefficients, the ODE
//!   residual test and the conformal-field-theory comparison.
//! - [`verify`]: the property suites driven by the CLI and the acceptance tests.

pub mod asymptotics;
pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod exact_arith;
pub mod exec;
pub mod hp;
pub mod overlap_fidelity;
pub mod spin_chain;
pub mod verify;
pub mod vertex_model;

pub use error::{Error, Result};
pub use exec::Execution;
