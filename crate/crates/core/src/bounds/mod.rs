//! Lower bounds from explicit constructions, limit densities, and the
//! algebraic check on the A5 bound.

mod construction;
mod limits;
mod minpoly;
mod objective;
mod optimize;
pub mod poly;

pub use construction::{construction_density, s_construction_sizes, two_branch_q4_densities};
pub use limits::{limit_density_complete, CD22_BINARY_INDUCIBILITY};
pub use minpoly::{
    verify_minimal_polynomial, MinimalPolynomial, MinpolyReport, BRACKET, MIN_CANDIDATE_DIGITS, NEWTON_TOLERANCE,
};
pub use objective::{eval_small, lower_bound_q4, maximize_small, objective_f, small_derivative, SMALL_CRITICAL_POINTS};
pub use optimize::{digits_to_bits, lower_bound_a5, maximize_objective_f, simplex_start, FMaximum, OptimizeConfig};
pub use poly::Poly3;
