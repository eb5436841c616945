//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Parse failure for the expression language, with the offending column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {position}: {message} (expected {expected})")]
pub struct ParseError {
    /// Human-readable description of what went wrong.
    pub message: String,
    /// Column index (0-based char offset) of the failure; at most input length.
    pub position: usize,
    /// What the parser would have accepted at that point.
    pub expected: String,
}

/// Everything that can go wrong while evaluating the calculus operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Expression text failed to parse.
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// Numeric domain violation while evaluating an expression
    /// (ln of a non-positive value, sqrt of a negative, 0 raised to a
    /// negative power, and similar).
    #[error("domain error at column {position}: {message}")]
    Domain { message: String, position: usize },

    /// Argument outside the kernel's domain [a, b].
    #[error("kernel domain error: t = {t} outside [{a}, {b}]")]
    KernelDomain { t: f64, a: f64, b: f64 },

    /// Negative power of a vanishing kernel value; the caller must switch
    /// to a limit-based route.
    #[error("singular kernel power: k = 0 at t = {t} with exponent {exponent} < 0")]
    SingularKernelPower { t: f64, exponent: f64 },

    /// Kernel construction or evaluation is invalid (k = 0 at an interior
    /// point, malformed spec, bad bounds).
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    /// A configuration struct carries an out-of-range field.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Gamma function pole at a non-positive integer.
    #[error("gamma pole: x = {x} is a non-positive integer")]
    GammaPole { x: f64 },

    /// Gamma function overflows f64 range.
    #[error("gamma overflow: x = {x} exceeds 171.6")]
    GammaOverflow { x: f64 },

    /// Fractional order outside (0, 1].
    #[error("invalid alpha: {value} is not in (0, 1]")]
    InvalidAlpha { value: f64 },

    /// Interior-point routine invoked at or below the domain start; the
    /// boundary value must go through the start-point limit.
    #[error("boundary required: t = {t} is not above the domain start a = {a}")]
    BoundaryRequired { t: f64, a: f64 },

    /// The one-sided limit at the domain start neither converged nor
    /// diverged within the sample budget.
    #[error("no limit: {0}")]
    NoLimit(String),

    /// Quadrature failed to reach the requested tolerance; carries the
    /// best estimate and its error bound.
    #[error("quadrature accuracy error: best estimate {estimate} with error bound {error_bound}")]
    Accuracy { estimate: f64, error_bound: f64 },

    /// ODE step size underflowed near the singular start point.
    #[error("ode singularity: step size underflow at t = {t}; retry with a larger start offset")]
    StepUnderflow { t: f64 },

    /// ODE step budget exhausted before reaching the end of the interval.
    #[error("ode budget exceeded: more than {max_steps} steps required")]
    Budget { max_steps: usize },
}
