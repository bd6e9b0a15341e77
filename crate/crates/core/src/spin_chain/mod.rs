//! The open XXZ chain at `Δ = -1/2` with diagonal boundary fields.
//!
//! Everything lives in the sector with `⌊N/2⌋` down spins, where the ground
//! state sits. The ground energy is known in closed form, so the exact ground
//! state is a kernel computation rather than an eigenvalue problem.

mod basis;
mod ground_state;
mod hamiltonian;
mod lanczos;

pub use basis::SectorBasis;
pub use ground_state::{ground_state, ground_state_with, GroundStateVector};
pub use hamiltonian::{boundary_fields, build_hamiltonian, ground_energy, SectorHamiltonian};
pub use lanczos::{ground_state_float, FloatGroundState};
