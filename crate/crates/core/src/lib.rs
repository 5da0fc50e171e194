//! Dirichlet spectra of Sturm–Liouville problems whose weight is a finite
//! sum of point masses, `-y'' + q y = λ Σ m_i δ(x - t_i) y` on `[0, 1]`,
//! and recovery of `q` from the single-mass eigenvalue curve.

// `!(x > 0.0)` is how NaN gets rejected along with the nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod classify;
pub mod cli;
mod error;
pub mod fundamental;
pub mod inverse;
pub mod io;
pub mod polynomial;
pub mod potential;
pub mod quadrature;
pub mod shooting;
mod tolerances;
pub mod tridiag;

pub use assembly::{
    characteristic_polynomial, closed_form_coefficients, coefficient_chain, discriminant,
    transfer_matrix, tridiagonal_system, CharacteristicPolynomial, CoefficientChain, DiracWeight,
    TransferMatrix, TridiagonalSystem,
};
pub use classify::{
    check_hypotheses, classify_spectrum, eigenfunction, solve_spectrum, Classification,
    Eigenfunction, HypothesisReport, Method, Spectrum,
};
pub use error::{Error, Result};
pub use fundamental::{build_basis, propagate_state, BasisCase, FundamentalBasis, State};
pub use inverse::{
    forward_curve, forward_lambda, reconstruct_basis, recover_potential, validate_spectrum_like,
    ProbeSpec, RecoveredPotential, SpectrumLikeFunction, ValidationReport,
};
pub use io::{emit_csv, parse_problem, read_problem, ProblemFile, SpectrumReport};
pub use polynomial::RealPolynomial;
pub use potential::Potential;
pub use shooting::{default_window, miss, scan_spectrum, MissFunction};
pub use tolerances::Tolerances;
