//! Companion calculus for the α-derivative: the weighted α-integral
//! ∫ f(s) k(s)^(α-1) ds with its endpoint-singular weight, a
//! fundamental-theorem residual, and a solver for scalar equations
//! y^(α) = F(t, y) by reduction to a weighted classical ODE.
//!
//! The α-integral is this crate's construction, not a textbook operator:
//! it is the left inverse of the α-derivative consistent with the weight
//! k^(α-1) that converts α-derivatives back to classical ones.

mod integral;
mod ode;

pub use integral::{alpha_integral, alpha_integral_with_bound, ftc_residual, IntegralConfig};
pub use ode::{conformable_exp, solve_alpha_ode, OdeConfig, OdeSolution, OdeStats};
