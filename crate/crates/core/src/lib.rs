//! Numerical and symbolic engine for kernel-parameterized local fractional
//! derivatives.
//!
//! The α-derivative of `f` with respect to a kernel `k` is the limit of
//! `[f(t + ε k(t)^(1-α)) - f(t)] / ε` as ε → 0. For differentiable `f` at
//! interior points it reduces to the closed form `k(t)^(1-α) f'(t)`, and
//! the two routes are implemented independently so that one can check the
//! other. At the domain start the derivative is defined by the one-sided
//! limit of interior values, which may converge, diverge, or fail to exist.
//!
//! The crate also carries the companion calculus: the weighted α-integral
//! `∫ f(s) k(s)^(α-1) ds`, a fundamental-theorem residual, and a solver for
//! scalar equations `y^(α) = F(t, y)` via reduction to a weighted classical
//! ODE.
//!
//! Modules:
//! - [`expr`]: the expression language (parse, evaluate, differentiate).
//! - [`specialfn`]: the gamma function used by the gamma-shifted kernel.
//! - [`kernel`]: kernel construction, validation, and safe powers.
//! - [`localderiv`]: the α-derivative, both routes, plus boundary limits.
//! - [`fraccalc`]: α-integral, fundamental-theorem check, α-ODE solver.

pub mod error;
pub mod expr;
pub mod fraccalc;
pub mod kernel;
pub mod localderiv;
pub mod specialfn;

pub use error::{Error, ParseError, Result};
pub use expr::ExprAst;
pub use kernel::{builtin_kernel, custom_kernel, KernelKind, KernelSpec};
pub use localderiv::{AlphaOrder, DerivMethod, DerivResult, EstimatorConfig};
