//! Explicit eigenfunctions of the Stokes eigenvalue problem on the cube
//! `(0, π)³` with free-slip (Navier-type) boundary conditions, their
//! closed-form sup norms, the integral bounds built on the function `Υ`,
//! and the constrained maximum of `Γ` over the unit sphere.
//!
//! Every closed form comes paired with an independent numerical route:
//!
//! * [`eigenbasis`] evaluates the five families `X0, Y0, Z0, V, W` and checks
//!   them with finite differences and trapezoid quadrature.
//! * [`supnorms`] holds the sup-norm formulas and a grid maximization oracle.
//! * [`integrals`] holds `Υ`, the closed integrals, adaptive quadrature of the
//!   improper integrals and spectral partial sums.
//! * [`gamma_opt`] reduces `max Γ` to a one-dimensional problem and compares it
//!   with a sphere grid search.

pub mod eigenbasis;
pub mod error;
pub mod gamma_opt;
pub mod integrals;
pub mod quadrature;
pub mod sampling;
pub mod supnorms;

pub use eigenbasis::{
    divergence, enumerate_modes, evaluate, factorization_residual, fd_residual, gram_matrix,
    inner_product, Family, FieldValue, Mode, Point3, QuadScheme, QuadSpec,
};
pub use error::{Error, Result};
pub use gamma_opt::{
    find_sigma, g_profile, gamma, gamma_max_closed, gamma_max_oracle, gamma_restricted, Constants,
    SphereSearchSpec,
};
pub use integrals::{
    angular_max_integral, closed_integral, combined_sum_bound, family_sum_bound,
    family_sum_partial, quad_integral, upsilon, IntegralKind, IntegralQuery, SumSpec,
};
pub use quadrature::AdaptiveTol;
pub use supnorms::{
    case22_value, dir_sup_norm_sq, grid_sup_sq_oracle, sup_norm_sq, Direction, GridSpec,
    ProjectionCoeffs,
};
