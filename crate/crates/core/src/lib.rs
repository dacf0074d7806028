//! L1 discretization of the Caputo fractional derivative.
//!
//! The crate provides the discrete operator on uniform grids, reference
//! Caputo derivatives (power rule and singular quadrature), weighted
//! Lebesgue/Sobolev norms with Muckenhoupt-type weights, an L1 solver for
//! `D^α y + λ y = f`, and a harness for extrapolated convergence orders.

pub mod caputo;
pub mod error;
pub mod experiments;
pub mod fode;
pub mod grid;
pub mod l1;
pub mod profile;
pub mod quadrature;
pub mod special;
pub mod weights;

pub use caputo::{caputo_power, caputo_quadrature, caputo_reference, rl_integral};
pub use error::{Error, Result};
pub use fode::{global_error, solve_fode, ErrorReport, FodeProblem, FodeSolution};
pub use grid::{FractionalOrder, UniformGrid};
pub use l1::{l1_apply, l1_apply_single, l1_coefficients, DiscreteDerivative, L1Coefficients};
pub use profile::TestFunction;
pub use quadrature::QuadratureSettings;
pub use weights::{LebesgueExponent, WeightSpec};
