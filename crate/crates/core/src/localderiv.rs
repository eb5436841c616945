//! The α-derivative computed two independent ways: extrapolated difference
//! quotients of the defining limit, and the closed form k(t)^(1-α) f'(t)
//! for interior points. The value at the domain start is the one-sided
//! limit of interior values, accelerated by Aitken's Δ² and guarded by
//! divergence detection.

use crate::error::{Error, Result};
use crate::expr::ExprAst;
use crate::kernel::{eval_kernel, kernel_power, KernelSpec};

/// Fractional order α ∈ (0, 1]. The open-interval definition is extended
/// to α = 1, where the derivative coincides with the classical one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOrder(f64);

impl AlphaOrder {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(AlphaOrder(value))
        } else {
            Err(Error::InvalidAlpha { value })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Tuning for the limit-based estimators.
#[derive(Debug, Clone)]
pub struct EstimatorConfig {
    /// Initial quotient step ε; `None` scales as 2⁻¹⁰·max(1, |t|).
    pub h0: Option<f64>,
    /// Richardson extrapolation depth (≥ 2).
    pub levels: usize,
    /// Relative tolerance for boundary-limit convergence.
    pub rel_tol: f64,
    /// Geometric ratio of the boundary sample points (in (0, 1)).
    pub boundary_ratio: f64,
    /// Offset of the first boundary sample; `None` = min(1e-2, (b-a)/10).
    pub boundary_start_offset: Option<f64>,
    /// Per-step growth ratio that counts as fast divergence.
    pub divergence_factor: f64,
    /// Consecutive fast-growth steps before divergence is declared.
    pub divergence_streak: usize,
    /// Use the one-sided forward quotient of the defining limit instead of
    /// the symmetric quotient (for fidelity testing; O(ε) instead of O(ε²)).
    pub one_sided: bool,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            h0: None,
            levels: 4,
            rel_tol: 1e-8,
            boundary_ratio: 0.5,
            boundary_start_offset: None,
            divergence_factor: 10.0,
            divergence_streak: 3,
            one_sided: false,
        }
    }
}

impl EstimatorConfig {
    fn validate(&self) -> Result<()> {
        let ok = self.h0.is_none_or(|h| h > 0.0 && h.is_finite())
            && self.levels >= 2
            && self.rel_tol > 0.0
            && self.boundary_ratio > 0.0
            && self.boundary_ratio < 1.0
            && self.boundary_start_offset.is_none_or(|d| d > 0.0)
            && self.divergence_factor > 1.0
            && self.divergence_streak >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(
                "estimator settings out of range".to_string(),
            ))
        }
    }
}

/// Which route produced a derivative value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMethod {
    Limit,
    ClosedForm,
    BoundaryLimit,
}

impl DerivMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DerivMethod::Limit => "limit",
            DerivMethod::ClosedForm => "closed_form",
            DerivMethod::BoundaryLimit => "boundary_limit",
        }
    }
}

/// An α-derivative value with provenance and an error estimate.
/// When `diverged` is set the value is ±∞, never a finite number.
#[derive(Debug, Clone, Copy)]
pub struct DerivResult {
    pub value: f64,
    pub method: DerivMethod,
    pub error_estimate: f64,
    pub diverged: bool,
}

/// Hard cap on boundary samples before reporting that no limit was found.
const MAX_BOUNDARY_SAMPLES: usize = 40;

/// Consecutive slow-growth steps required (with non-contracting
/// differences and overall growth) before slow divergence is declared.
const SLOW_GROWTH_STREAK: usize = 8;

/// α-derivative at an interior point by the defining limit: extrapolated
/// difference quotients with step weight w = k(t)^(1-α).
pub fn alpha_deriv_limit(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
    cfg: &EstimatorConfig,
) -> Result<DerivResult> {
    cfg.validate()?;
    let a = k.domain_start();
    if t <= a {
        return Err(Error::BoundaryRequired { t, a });
    }
    if eval_kernel(k, t, alpha.value())? == 0.0 {
        return Err(Error::InvalidKernel(format!(
            "kernel vanishes at interior point t = {t}"
        )));
    }
    let w = kernel_power(k, t, alpha.value(), 1.0 - alpha.value())?;
    let (value, error_estimate) = extrapolated_quotient(&|x| f.eval(x), t, w, a, cfg)?;
    Ok(DerivResult {
        value,
        method: DerivMethod::Limit,
        error_estimate,
        diverged: false,
    })
}

/// Limit-quotient estimator over an arbitrary map, shared with the
/// fundamental-theorem residual where the integrand map is numeric.
pub(crate) fn extrapolated_quotient(
    f: &dyn Fn(f64) -> Result<f64>,
    t: f64,
    w: f64,
    a: f64,
    cfg: &EstimatorConfig,
) -> Result<(f64, f64)> {
    let levels = cfg.levels;
    let mut h0 = cfg.h0.unwrap_or_else(|| 2f64.powi(-10) * t.abs().max(1.0));
    // Keep the symmetric stencil above the domain start.
    if !cfg.one_sided && w > 0.0 && t.is_finite() {
        let room = (t - a) / w;
        if room.is_finite() && h0 >= room {
            h0 = 0.5 * room;
        }
    }

    let f_at_t = if cfg.one_sided { Some(f(t)?) } else { None };
    let mut table = vec![vec![0.0; levels]; levels];
    for (j, row) in table.iter_mut().enumerate() {
        let eps = h0 * 0.5f64.powi(j as i32);
        row[0] = match f_at_t {
            Some(base) => (f(t + eps * w)? - base) / eps,
            None => (f(t + eps * w)? - f(t - eps * w)?) / (2.0 * eps),
        };
    }
    // Error order: O(ε) one-sided, O(ε²) symmetric; halving ε scales the
    // leading term by 2 or 4 respectively.
    let ratio: f64 = if cfg.one_sided { 2.0 } else { 4.0 };
    for m in 1..levels {
        let factor = ratio.powi(m as i32);
        for j in (m..levels).rev() {
            table[j][m] = (factor * table[j][m - 1] - table[j - 1][m - 1]) / (factor - 1.0);
        }
    }
    let value = table[levels - 1][levels - 1];
    let error_estimate = (table[levels - 1][levels - 1] - table[levels - 1][levels - 2]).abs();
    Ok((value, error_estimate))
}

/// α-derivative at an interior point by the closed form k(t)^(1-α) f'(t).
/// Refused at the domain start, where only the limit route is defined.
pub fn alpha_deriv_closed(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
) -> Result<DerivResult> {
    let fprime = f.diff();
    let value = closed_with_derivative(&fprime, k, alpha, t)?;
    Ok(DerivResult {
        value,
        method: DerivMethod::ClosedForm,
        error_estimate: 0.0,
        diverged: false,
    })
}

/// Closed form with a precomputed symbolic derivative.
fn closed_with_derivative(
    fprime: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
) -> Result<f64> {
    let a = k.domain_start();
    if t == a {
        return Err(Error::BoundaryRequired { t, a });
    }
    let w = kernel_power(k, t, alpha.value(), 1.0 - alpha.value())?;
    Ok(w * fprime.eval(t)?)
}

/// α-derivative at the domain start: the one-sided limit of interior
/// values along a geometric sequence of sample points, accelerated with
/// Aitken's Δ². Divergence is reported as a flag, never as an exception;
/// a sequence that neither settles nor grows within the sample budget is
/// a no-limit error.
pub fn alpha_deriv_at_start(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    cfg: &EstimatorConfig,
) -> Result<DerivResult> {
    cfg.validate()?;
    let a = k.domain_start();
    let b = k.domain_end();
    let offset = cfg
        .boundary_start_offset
        .unwrap_or_else(|| 1e-2f64.min((b - a) / 10.0));
    let fprime = f.diff();

    let mut raw: Vec<f64> = Vec::with_capacity(MAX_BOUNDARY_SAMPLES);
    let mut accel: Vec<f64> = Vec::new();
    let mut fast_streak = 0usize;
    let mut slow_streak = 0usize;

    for j in 0..MAX_BOUNDARY_SAMPLES {
        let t_j = a + offset * cfg.boundary_ratio.powi(j as i32);
        // Closed form per sample; fall back to the limit estimator when the
        // symbolic derivative hits a domain hazard at this point.
        let v = match closed_with_derivative(&fprime, k, alpha, t_j) {
            Ok(v) => v,
            Err(_) => alpha_deriv_limit(f, k, alpha, t_j, cfg)?.value,
        };
        if !v.is_finite() {
            // Overflow along the samples: the limit cannot be finite.
            return Ok(diverged_result(raw.last().copied().unwrap_or(v)));
        }
        raw.push(v);
        let n = raw.len();

        if n >= 2 {
            let prev = raw[n - 2];
            let cur = raw[n - 1];
            // Fast divergence: per-step growth beyond the configured factor.
            if cur.abs() > cfg.divergence_factor * prev.abs() {
                fast_streak += 1;
                if fast_streak >= cfg.divergence_streak {
                    return Ok(diverged_result(cur));
                }
            } else {
                fast_streak = 0;
            }
            // Slow divergence: persistently growing magnitude with
            // non-contracting differences and overall growth beyond the
            // divergence factor.
            let growing = cur.abs() > prev.abs();
            let non_contracting = if n >= 3 {
                let d1 = (raw[n - 1] - raw[n - 2]).abs();
                let d0 = (raw[n - 2] - raw[n - 3]).abs();
                d1 >= d0 * (1.0 - 1e-9)
            } else {
                true
            };
            if growing && non_contracting {
                slow_streak += 1;
            } else {
                slow_streak = 0;
            }
            let base = raw[0].abs().max(f64::MIN_POSITIVE);
            if slow_streak >= SLOW_GROWTH_STREAK && cur.abs() >= cfg.divergence_factor * base {
                return Ok(diverged_result(cur));
            }
        }

        if n >= 3 {
            let (v0, v1, v2) = (raw[n - 3], raw[n - 2], raw[n - 1]);
            let scale = v0.abs().max(v1.abs()).max(v2.abs()).max(1.0);
            let denom = v2 - 2.0 * v1 + v0;
            let acc = if denom.abs() <= 1e-14 * scale {
                // Flat tail: the last sample already is the limit.
                v2
            } else {
                v2 - (v2 - v1) * (v2 - v1) / denom
            };
            accel.push(acc);
            if accel.len() >= 2 {
                let m = accel.len();
                let acc_diff = (accel[m - 1] - accel[m - 2]).abs();
                let tol = cfg.rel_tol * (1.0 + accel[m - 1].abs());
                let d_last = (raw[n - 1] - raw[n - 2]).abs();
                let d_prev = (raw[n - 2] - raw[n - 3]).abs();
                // Accept only a genuinely settling tail: strictly
                // contracting differences (or negligible ones), so that a
                // diverging or purely oscillating sequence cannot pass off
                // its Aitken anti-limit as a value.
                let contracting = d_last < d_prev * (1.0 - 1e-9) || d_last <= 1e-13 * scale;
                if acc_diff <= tol && contracting {
                    return Ok(DerivResult {
                        value: accel[m - 1],
                        method: DerivMethod::BoundaryLimit,
                        error_estimate: acc_diff,
                        diverged: false,
                    });
                }
            }
        }
    }
    Err(Error::NoLimit(format!(
        "boundary sequence neither converged nor diverged after {MAX_BOUNDARY_SAMPLES} samples"
    )))
}

fn diverged_result(last: f64) -> DerivResult {
    DerivResult {
        value: if last < 0.0 { f64::NEG_INFINITY } else { f64::INFINITY },
        method: DerivMethod::BoundaryLimit,
        error_estimate: f64::INFINITY,
        diverged: true,
    }
}

/// Recover the classical derivative from an α-derivative value:
/// f'(t) = k(t)^(α-1) · f^(α)(t). Undefined where the kernel vanishes.
pub fn classical_from_alpha(
    v_alpha: f64,
    k: &KernelSpec,
    alpha: AlphaOrder,
    t: f64,
) -> Result<f64> {
    let w = kernel_power(k, t, alpha.value(), alpha.value() - 1.0)?;
    Ok(w * v_alpha)
}

/// One grid point of an equivalence check: both routes and their relative
/// discrepancy |limit - closed| / (1 + |closed|).
#[derive(Debug, Clone, Copy)]
pub struct PointCheck {
    pub t: f64,
    pub closed: f64,
    pub limit: f64,
    pub rel_discrepancy: f64,
}

/// A grid point where one of the routes failed.
#[derive(Debug, Clone)]
pub struct PointFailure {
    pub t: f64,
    pub message: String,
}

/// Result of comparing the two derivative routes over a grid.
#[derive(Debug, Clone, Default)]
pub struct EquivalenceReport {
    pub checks: Vec<PointCheck>,
    pub failures: Vec<PointFailure>,
    pub max_discrepancy: f64,
    pub worst_t: Option<f64>,
}

/// Compare the limit and closed-form routes at every grid point. Per-point
/// errors are recorded in the report, not thrown.
pub fn check_equivalence(
    f: &ExprAst,
    k: &KernelSpec,
    alpha: AlphaOrder,
    grid: &[f64],
    cfg: &EstimatorConfig,
) -> Result<EquivalenceReport> {
    cfg.validate()?;
    let fprime = f.diff();
    let mut report = EquivalenceReport::default();
    for &t in grid {
        let closed = match closed_with_derivative(&fprime, k, alpha, t) {
            Ok(v) => v,
            Err(e) => {
                report.failures.push(PointFailure {
                    t,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let limit = match alpha_deriv_limit(f, k, alpha, t, cfg) {
            Ok(r) => r.value,
            Err(e) => {
                report.failures.push(PointFailure {
                    t,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let rel_discrepancy = (limit - closed).abs() / (1.0 + closed.abs());
        if rel_discrepancy >= report.max_discrepancy {
            report.max_discrepancy = rel_discrepancy;
            report.worst_t = Some(t);
        }
        report.checks.push(PointCheck {
            t,
            closed,
            limit,
            rel_discrepancy,
        });
    }
    Ok(report)
}

/// Closed-form α-derivative across a list of orders at a fixed point.
/// At α = 1 the value equals the classical derivative exactly (k⁰ = 1).
pub fn alpha_sweep(
    f: &ExprAst,
    k: &KernelSpec,
    t: f64,
    alphas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let fprime = f.diff();
    alphas
        .iter()
        .map(|&raw| {
            let alpha = AlphaOrder::new(raw)?;
            let value = closed_with_derivative(&fprime, k, alpha, t)?;
            Ok((raw, value))
        })
        .collect()
}
