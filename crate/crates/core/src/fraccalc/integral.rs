//! The α-integral I_a^α f(t) = ∫_a^t f(s) k(s)^(α-1) ds by tanh-sinh
//! (double-exponential) quadrature, and the fundamental-theorem residual.
//!
//! The weight k^(α-1) has an integrable singularity at s = a whenever the
//! kernel vanishes there; the tanh-sinh substitution clusters nodes
//! doubly-exponentially at the endpoints and never evaluates on them.
//! Integration runs in the offset variable σ = s - a so that node
//! distances from the singular endpoint stay exact down to the subnormal
//! range instead of being lost to cancellation in s itself.

use crate::error::{Error, Result};
use crate::expr::ExprAst;
use crate::kernel::{kernel_power, kernel_power_at_offset, KernelKind, KernelSpec};
use crate::localderiv::{extrapolated_quotient, AlphaOrder, EstimatorConfig};

/// Tolerances and refinement depth for the tanh-sinh scheme.
#[derive(Debug, Clone)]
pub struct IntegralConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of step halvings.
    pub max_level: usize,
}

impl Default for IntegralConfig {
    fn default() -> Self {
        IntegralConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_level: 12,
        }
    }
}

impl IntegralConfig {
    fn validate(&self) -> Result<()> {
        if self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_level >= 2 {
            Ok(())
        } else {
            Err(Error::InvalidConfig(
                "integral settings out of range".to_string(),
            ))
        }
    }
}

/// The α-integral of `f` from the domain start to `t`.
pub fn alpha_integral(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
    cfg: &IntegralConfig,
) -> Result<f64> {
    Ok(alpha_integral_with_bound(f, k, alpha, t, cfg)?.0)
}

/// As [`alpha_integral`], also returning the last refinement difference
/// as an error bound.
pub fn alpha_integral_with_bound(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
    cfg: &IntegralConfig,
) -> Result<(f64, f64)> {
    let a = k.domain_start();
    if t <= a || t > k.domain_end() || t.is_nan() {
        return Err(Error::KernelDomain {
            t,
            a,
            b: k.domain_end(),
        });
    }
    weighted_integral_offset(k, alpha, t - a, cfg, &|s| f.eval(s))
}

/// Integrate f(a + σ) · k(a + σ)^(α-1) dσ over σ ∈ (0, length).
/// Returns the value and the last refinement difference as an error bound.
pub(crate) fn weighted_integral_offset(
    k: &KernelSpec,
    alpha: AlphaOrder,
    length: f64,
    cfg: &IntegralConfig,
    f_at: &dyn Fn(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let a = k.domain_start();
    let p = alpha.value() - 1.0;
    let integrand = |sigma: f64| -> Result<Option<f64>> {
        if sigma <= 0.0 || sigma >= length {
            return Ok(None);
        }
        // Custom kernels must be evaluated at s itself; when σ is below the
        // resolution of a the node is indistinguishable from the endpoint.
        if k.kind() == KernelKind::Custom && a + sigma <= a {
            return Ok(None);
        }
        let w = match kernel_power_at_offset(k, sigma, alpha.value(), p) {
            Ok(w) => w,
            // A custom kernel value can underflow to exactly zero close to
            // the singular endpoint (e.g. k = t² below √MIN); such nodes
            // carry negligible mass and are skipped. A vanishing kernel
            // anywhere else is a genuine violation and propagates.
            Err(Error::SingularKernelPower { .. }) if sigma <= length * 1e-40 => {
                return Ok(None)
            }
            Err(e) => return Err(e),
        };
        let v = f_at(a + sigma)?;
        Ok(Some(w * v))
    };
    tanh_sinh(&integrand, length, cfg)
}

/// Tanh-sinh quadrature of `integrand` over (0, length). The integrand may
/// return `None` to skip a node whose distance from the endpoints has
/// underflowed. Non-convergence within `max_level` refinements is an
/// accuracy error carrying the best estimate.
fn tanh_sinh(
    integrand: &dyn Fn(f64) -> Result<Option<f64>>,
    length: f64,
    cfg: &IntegralConfig,
) -> Result<(f64, f64)> {
    let half = 0.5 * length;
    // Contribution of the abscissa at parameter u (left side of the
    // interval for negative u). Weights underflow to zero far out in u,
    // which terminates each sweep.
    let term = |u: f64| -> Result<f64> {
        let q = std::f64::consts::FRAC_PI_2 * u.sinh();
        let cosh_q = q.cosh();
        let sech2 = {
            let s = 1.0 / cosh_q;
            s * s
        };
        let weight = half * std::f64::consts::FRAC_PI_2 * u.cosh() * sech2;
        if weight == 0.0 || !weight.is_finite() {
            return Ok(0.0);
        }
        // Distance from the nearer endpoint: 1 - |tanh(q)| = 2/(e^{2|q|}+1).
        let edge = 2.0 / ((2.0 * q.abs()).exp() + 1.0);
        let sigma = if u < 0.0 {
            half * edge
        } else if u > 0.0 {
            length - half * edge
        } else {
            half
        };
        match integrand(sigma)? {
            Some(v) => {
                let contribution = weight * v;
                if !contribution.is_finite() {
                    return Err(Error::Domain {
                        message: format!("integrand overflow near σ = {sigma}"),
                        position: 0,
                    });
                }
                Ok(contribution)
            }
            None => Ok(0.0),
        }
    };

    // Running trapezoid total over all parameters sampled so far; each
    // level halves h and adds the odd multiples.
    let mut h = 1.0f64;
    let mut total = term(0.0)?;
    total += sweep(&term, h, 1, 1)?;
    let mut estimate = h * total;
    let mut last_diff = f64::INFINITY;

    for level in 1..=cfg.max_level {
        h *= 0.5;
        total += sweep(&term, h, 1, 2)?;
        let refined = h * total;
        last_diff = (refined - estimate).abs();
        estimate = refined;
        if level >= 2 && last_diff <= cfg.abs_tol.max(cfg.rel_tol * estimate.abs()) {
            return Ok((estimate, last_diff));
        }
    }
    Err(Error::Accuracy {
        estimate,
        error_bound: last_diff,
    })
}

/// Sum term(±k·h) for k = start, start+stride, ... until both sides have
/// stayed negligible for a few consecutive multiples.
fn sweep(
    term: &dyn Fn(f64) -> Result<f64>,
    h: f64,
    start: usize,
    stride: usize,
) -> Result<f64> {
    const CUTOFF: f64 = 1e-22;
    let mut sum = 0.0f64;
    let mut quiet = 0;
    let mut k = start;
    let k_max = (12.0 / h).ceil() as usize;
    while k <= k_max {
        let u = k as f64 * h;
        let plus = term(u)?;
        let minus = term(-u)?;
        sum += plus + minus;
        if plus.abs() <= CUTOFF * (1.0 + sum.abs()) && minus.abs() <= CUTOFF * (1.0 + sum.abs()) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += stride;
    }
    Ok(sum)
}

/// Fundamental-theorem residual |(I_a^α f)^(α)(t) - f(t)|: the α-derivative
/// of the numerically-defined integral map, taken with the limit
/// estimator, should reproduce the integrand.
pub fn ftc_residual(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
    est_cfg: &EstimatorConfig,
    int_cfg: &IntegralConfig,
) -> Result<f64> {
    let a = k.domain_start();
    if t <= a {
        return Err(Error::BoundaryRequired { t, a });
    }
    let w = kernel_power(k, t, alpha.value(), 1.0 - alpha.value())?;
    let integral_map = |x: f64| alpha_integral(f, k, alpha, x, int_cfg);
    let (deriv_of_integral, _) = extrapolated_quotient(&integral_map, t, w, a, est_cfg)?;
    Ok((deriv_of_integral - f.eval(t)?).abs())
}
