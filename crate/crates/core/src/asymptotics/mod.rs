//! Large-`N` behaviour of the fidelity.
//!
//! The series in `N` with its amplitude `D` and `1/N` coefficients, the
//! leading large-`N` form of the normalized character and a fit of its `1/N`
//! correction, the second-order ODE it satisfies, the free-boson prediction
//! for the `ξ` profile, and the exact-versus-series sweep.

pub mod cft;
pub mod compare;
pub mod ode;
pub mod series;
pub mod tau;

pub use cft::{cft_f, cft_g, CftCharges};
pub use compare::{
    compare_fig1, max_abs_diff, summarize, sweep_pairs, ComparisonRow, ComparisonSummary,
};
pub use ode::{check_ode, check_ode_exact, ode_coefficients, ode_sample_points, OdeResidual};
pub use series::{
    amplitude_at_one, coeffs, energy_expansion, energy_expansion_exact, gp_prefactor,
    gp_prefactor_complex, inverse_n_coefficient, lbf_asymptotic, ln_gp_prefactor, r_from_x, x_of_r,
    xi_profile, AsymptoticCoeffs, BoundaryParam, EnergyExpansion, Order, PairParity,
};
pub use tau::{estimate_tau, fit_sizes, Parity, TauFit};
