//! Spectra, exceptional points and perturbation series of PT-symmetric
//! model Hamiltonians.
//!
//! The crate builds truncated matrix representations of five model
//! families ([`model`]), diagonalizes them with in-house QR solvers
//! ([`eig`]), locates the couplings where eigenvalue pairs coalesce
//! ([`ep`]), computes Rayleigh–Schrödinger series for the box model
//! ([`pt`]) and fits scaling laws to the resulting tables ([`fit`]).
//! The [`cli`] module drives all of it from the `ptcrit` binary.

pub mod cli;
pub mod eig;
pub mod ep;
pub mod fit;
pub mod matrix;
pub mod model;
pub mod pt;
pub mod scalar;

pub use num_complex::Complex64;

pub use eig::{eig_dense, eig_tridiagonal, match_trajectories, EigError, Matching, OrderConvention, Spectrum};
pub use ep::{
    converge_critical, find_complex_ep, find_critical, pair_gap_sq, ComplexEp, CriticalPoint, EpError,
};
pub use fit::{fit_linear, fit_power_law, fit_power_law_with, FitError, FitOptions, FitResult};
pub use matrix::DenseMatrix;
pub use model::{
    bk_scale, box_position_element, build_hamiltonian, ho_power_matrix, Family, HamiltonianMatrix,
    ModelError, ModelSpec, Storage,
};
pub use pt::{eval_series, radius_sequence, rs_coefficients_box, PtError, SeriesCoefficients};
pub use scalar::{DoubleDouble, Real};
