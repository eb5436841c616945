//! Solver for scalar α-ODEs y^(α) = F(t, y): the equation is rewritten as
//! the weighted classical ODE y' = k(t)^(α-1) F(t, y) and integrated with
//! an adaptive embedded Dormand-Prince 5(4) pair.
//!
//! The weight blows up at the domain start when the kernel vanishes there,
//! so the solve begins at a + δ with the first step taken weight-exactly:
//! y(a+δ) = y0 + F(a, y0) · ∫ k^(α-1), the integral by the same quadrature
//! as the α-integral. Stepping runs in the offset variable τ = t - a to
//! keep distances from the singular point exact.

use crate::error::{Error, Result};
use crate::kernel::{kernel_power_at_offset, KernelSpec};
use crate::localderiv::AlphaOrder;

use super::integral::{weighted_integral_offset, IntegralConfig};

/// Tolerances and limits for the α-ODE solver.
#[derive(Debug, Clone)]
pub struct OdeConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Offset δ of the first regular point; `None` picks 1e-8 of the span
    /// and then shrinks it until the weight-exact bootstrap error is below
    /// the solver tolerance.
    pub start_offset: Option<f64>,
    /// Budget of attempted (accepted plus rejected) steps.
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            start_offset: None,
            max_steps: 1_000_000,
        }
    }
}

impl OdeConfig {
    fn validate(&self) -> Result<()> {
        if self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.start_offset.is_none_or(|d| d > 0.0)
            && self.max_steps >= 1
        {
            Ok(())
        } else {
            Err(Error::InvalidConfig("ode settings out of range".to_string()))
        }
    }
}

/// Accepted/rejected step counts of one solve.
#[derive(Debug, Clone, Copy, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Solution of an α-ODE: the accepted grid, state values, and a cubic
/// Hermite dense interpolant over the accepted steps. The value at the
/// domain start is the initial condition itself.
#[derive(Debug, Clone)]
pub struct OdeSolution {
    a: f64,
    y0: f64,
    t_end: f64,
    /// Offsets τ = t - a of the accepted grid, strictly increasing.
    offsets: Vec<f64>,
    values: Vec<f64>,
    /// Reduced right-hand side at each grid point, for the interpolant.
    slopes: Vec<f64>,
    pub stats: OdeStats,
}

impl OdeSolution {
    /// Time grid (absolute), starting at a + δ.
    pub fn grid(&self) -> Vec<f64> {
        self.offsets.iter().map(|tau| self.a + tau).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn domain_start(&self) -> f64 {
        self.a
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Dense evaluation. Exactly y0 at the start, exact state values on
    /// grid points, cubic Hermite in between; the bootstrap prefix
    /// (a, a+δ) is linear.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        let slack = 4.0 * f64::EPSILON * self.t_end.abs().max(self.a.abs()).max(1.0);
        if t.is_nan() || t < self.a - slack || t > self.t_end + slack {
            return Err(Error::KernelDomain {
                t,
                a: self.a,
                b: self.t_end,
            });
        }
        if t <= self.a {
            return Ok(self.y0);
        }
        let tau = (t - self.a).min(*self.offsets.last().expect("nonempty grid"));
        let first = self.offsets[0];
        if tau <= first {
            if tau == first {
                return Ok(self.values[0]);
            }
            let s = tau / first;
            return Ok(self.y0 + s * (self.values[0] - self.y0));
        }
        // Locate the segment [offsets[i], offsets[i+1]] containing tau.
        let i = match self.offsets.binary_search_by(|o| o.partial_cmp(&tau).expect("finite")) {
            Ok(exact) => return Ok(self.values[exact]),
            Err(insert) => insert - 1,
        };
        let h = self.offsets[i + 1] - self.offsets[i];
        let s = (tau - self.offsets[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Ok(h00 * self.values[i]
            + h10 * h * self.slopes[i]
            + h01 * self.values[i + 1]
            + h11 * h * self.slopes[i + 1])
    }
}

/// Closed-form solution of the conformable linear equation y^(α) = λy
/// with y(0) = y0: y0 · exp(λ t^α / α). Reference generator for tests;
/// expects t ≥ 0.
pub fn conformable_exp(lambda: f64, alpha: AlphaOrder, t: f64, y0: f64) -> f64 {
    y0 * (lambda * t.powf(alpha.value()) / alpha.value()).exp()
}

/// Dormand-Prince 5(4) coefficients.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
/// b5 - b4, applied to the seven stages for the embedded error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Solve y^(α) = F(t, y) from the kernel's domain start to `t_end` with
/// y(a) = y0. `F` is any callback; evaluation errors abort the solve.
pub fn solve_alpha_ode<F>(
    rhs: F,
    k: &KernelSpec,
    alpha: AlphaOrder,
    y0: f64,
    t_end: f64,
    cfg: &OdeConfig,
) -> Result<OdeSolution>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    cfg.validate()?;
    let a = k.domain_start();
    let span = t_end - a;
    if span <= 0.0 || span.is_nan() || !t_end.is_finite() {
        return Err(Error::KernelDomain {
            t: t_end,
            a,
            b: k.domain_end(),
        });
    }

    // Quadrature for the bootstrap weight mass, well below solver tolerance.
    let boot_cfg = IntegralConfig {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_level: 14,
    };
    let one = |_s: f64| Ok(1.0);
    let (delta, weight_mass) = match cfg.start_offset {
        Some(d) => {
            if d >= span {
                return Err(Error::InvalidConfig(format!(
                    "start offset {d} does not fit in the interval of length {span}"
                )));
            }
            let (w, _) = weighted_integral_offset(k, alpha, d, &boot_cfg, &one)?;
            (d, w)
        }
        None => {
            // The bootstrap is first-order in the accumulated weight W, so
            // its error scales like W²; shrink δ until W² is negligible
            // against the requested relative tolerance.
            let target = (0.1 * cfg.rel_tol).sqrt();
            let floor = span * 1e-280;
            let mut d = 1e-8 * span;
            let mut w = weighted_integral_offset(k, alpha, d, &boot_cfg, &one)?.0;
            while w > target && d > floor {
                d /= 16.0;
                w = weighted_integral_offset(k, alpha, d, &boot_cfg, &one)?.0;
            }
            (d, w)
        }
    };

    let g = |tau: f64, y: f64| -> Result<f64> {
        let w = kernel_power_at_offset(k, tau, alpha.value(), alpha.value() - 1.0)?;
        Ok(w * rhs(a + tau, y)?)
    };

    // Weight-exact first step to the edge of the regular region.
    let mut tau = delta;
    let mut y = y0 + rhs(a, y0)? * weight_mass;
    let mut k1 = g(tau, y)?;

    let mut offsets = vec![tau];
    let mut values = vec![y];
    let mut slopes = vec![k1];
    let mut stats = OdeStats::default();

    let h_max = span / 50.0;
    let mut h = delta.min(h_max);
    let mut steps = 0usize;

    while tau < span {
        let remaining = span - tau;
        if remaining <= 4.0 * f64::EPSILON * span {
            break;
        }
        let last = remaining <= h;
        if last {
            h = remaining;
        }
        steps += 1;
        if steps > cfg.max_steps {
            return Err(Error::Budget {
                max_steps: cfg.max_steps,
            });
        }
        if h <= 4.0 * f64::EPSILON * tau {
            return Err(Error::StepUnderflow { t: a + tau });
        }

        // Stages.
        let k2 = g(tau + C[1] * h, y + h * (A2[0] * k1))?;
        let k3 = g(tau + C[2] * h, y + h * (A3[0] * k1 + A3[1] * k2))?;
        let k4 = g(tau + C[3] * h, y + h * (A4[0] * k1 + A4[1] * k2 + A4[2] * k3))?;
        let k5 = g(
            tau + C[4] * h,
            y + h * (A5[0] * k1 + A5[1] * k2 + A5[2] * k3 + A5[3] * k4),
        )?;
        let k6 = g(
            tau + C[5] * h,
            y + h * (A6[0] * k1 + A6[1] * k2 + A6[2] * k3 + A6[3] * k4 + A6[4] * k5),
        )?;
        let y_next = y
            + h * (B5[0] * k1 + B5[2] * k3 + B5[3] * k4 + B5[4] * k5 + B5[5] * k6);
        let k7 = g(tau + h, y_next)?;
        let err = h
            * (E[0] * k1 + E[2] * k3 + E[3] * k4 + E[4] * k5 + E[5] * k6 + E[6] * k7)
                .abs();

        if !err.is_finite() || !y_next.is_finite() {
            stats.rejected += 1;
            h *= 0.25;
            continue;
        }

        // Error-per-unit-step acceptance with a per-step floor. Bounding
        // err/h by tol/span keeps the accumulated error near the tolerance
        // itself instead of n_steps times it; the floor keeps the steps
        // crawling out of the singular start (where derivatives blow up
        // like powers of 1/τ) from collapsing, while their tiny budget
        // contributes at most ~tol in total.
        let tol = cfg.abs_tol + cfg.rel_tol * y.abs().max(y_next.abs());
        let unit_fraction = (h / span).max(1e-3);
        let norm = err / (tol * unit_fraction);
        if norm <= 1.0 {
            stats.accepted += 1;
            tau = if last { span } else { tau + h };
            y = y_next;
            k1 = k7;
            offsets.push(tau);
            values.push(y);
            slopes.push(k7);
        } else {
            stats.rejected += 1;
        }
        // err scales like h⁵ under the floor and err/h like h⁴ above it.
        let exponent = if h / span >= 1e-3 { -0.25 } else { -0.2 };
        let scale = if norm > 0.0 {
            0.9 * norm.powf(exponent)
        } else {
            5.0
        };
        let max_scale = if norm <= 1.0 { 5.0 } else { 1.0 };
        h = (h * scale.clamp(0.2, max_scale)).min(h_max);
    }

    Ok(OdeSolution {
        a,
        y0,
        t_end,
        offsets,
        values,
        slopes,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{builtin_kernel, KernelKind};

    fn conformable() -> KernelSpec {
        builtin_kernel(KernelKind::Conformable, 0.0).unwrap()
    }

    fn alpha(v: f64) -> AlphaOrder {
        AlphaOrder::new(v).unwrap()
    }

    fn linear(lambda: f64) -> impl Fn(f64, f64) -> Result<f64> {
        move |_t, y| Ok(lambda * y)
    }

    #[test]
    fn exponential_half_order() {
        // y^(1/2) = y, y(0) = 1: y(t) = exp(2√t), so y(1) = e².
        let sol = solve_alpha_ode(
            linear(1.0),
            &conformable(),
            alpha(0.5),
            1.0,
            1.0,
            &OdeConfig::default(),
        )
        .unwrap();
        let got = sol.value_at(1.0).unwrap();
        let want = std::f64::consts::E.powi(2);
        assert!(
            (got - want).abs() / want < 1e-6,
            "got {got}, want {want} ({} accepted)",
            sol.stats.accepted
        );
    }

    #[test]
    fn classical_limit() {
        let sol = solve_alpha_ode(
            linear(1.0),
            &conformable(),
            alpha(1.0),
            1.0,
            1.0,
            &OdeConfig::default(),
        )
        .unwrap();
        let got = sol.value_at(1.0).unwrap();
        assert!((got - std::f64::consts::E).abs() < 1e-7, "got {got}");
    }

    #[test]
    fn zero_rhs_stays_constant() {
        let sol = solve_alpha_ode(
            |_t, _y| Ok(0.0),
            &conformable(),
            alpha(0.4),
            3.5,
            2.0,
            &OdeConfig::default(),
        )
        .unwrap();
        assert_eq!(sol.value_at(0.0).unwrap(), 3.5);
        for v in sol.values() {
            assert_eq!(*v, 3.5);
        }
        // Interior Hermite queries are exact up to a rounding in the basis.
        for t in [0.3, 1.0, 2.0] {
            assert!((sol.value_at(t).unwrap() - 3.5).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_output_matches_closed_form() {
        let lam = -1.0;
        let al = alpha(0.3);
        let sol = solve_alpha_ode(
            linear(lam),
            &conformable(),
            al,
            1.0,
            2.0,
            &OdeConfig::default(),
        )
        .unwrap();
        for i in 1..=20 {
            let t = 0.1 * i as f64;
            let got = sol.value_at(t).unwrap();
            let want = conformable_exp(lam, al, t, 1.0);
            assert!(
                (got - want).abs() / want.abs() < 1e-6,
                "t={t}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn grid_is_strictly_increasing_and_interpolant_matches_grid() {
        let sol = solve_alpha_ode(
            linear(1.0),
            &conformable(),
            alpha(0.8),
            1.0,
            1.5,
            &OdeConfig::default(),
        )
        .unwrap();
        let grid = sol.grid();
        for pair in grid.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for (t, v) in grid.iter().zip(sol.values()) {
            assert_eq!(sol.value_at(*t).unwrap(), *v);
        }
        assert_eq!(sol.value_at(sol.domain_start()).unwrap(), 1.0);
    }

    #[test]
    fn jump_in_rhs_underflows_the_step() {
        // A discontinuous right-hand side forces the controller to shrink
        // the step below resolution at the jump; that surfaces as a step
        // underflow rather than silently integrating across it.
        let jump = |t: f64, _y: f64| Ok(if t < 1.0 { 1.0 } else { 1e12 });
        let r = solve_alpha_ode(jump, &conformable(), alpha(1.0), 0.0, 2.0, &OdeConfig::default());
        assert!(
            matches!(r, Err(Error::StepUnderflow { .. }) | Err(Error::Budget { .. })),
            "got {r:?}"
        );
    }

    #[test]
    fn budget_error() {
        let tight = OdeConfig {
            max_steps: 5,
            ..OdeConfig::default()
        };
        assert!(matches!(
            solve_alpha_ode(linear(1.0), &conformable(), alpha(0.5), 1.0, 1.0, &tight),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn query_outside_range_is_rejected() {
        let sol = solve_alpha_ode(
            linear(0.5),
            &conformable(),
            alpha(0.9),
            1.0,
            1.0,
            &OdeConfig::default(),
        )
        .unwrap();
        assert!(sol.value_at(-0.5).is_err());
        assert!(sol.value_at(1.5).is_err());
        assert!(sol.value_at(f64::NAN).is_err());
    }

    #[test]
    fn conformable_exp_values() {
        assert!((conformable_exp(1.0, alpha(1.0), 1.0, 1.0) - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(conformable_exp(0.0, alpha(0.3), 7.0, 2.5), 2.5);
        // exp(4^(1/2) / (1/2)) = e⁴ ≈ 54.598
        let want = (4.0f64.powf(0.5) / 0.5).exp();
        assert!((want - 54.598150033144236).abs() < 1e-12);
        assert!((conformable_exp(1.0, alpha(0.5), 4.0, 1.0) - want).abs() / want < 1e-15);
    }

    #[test]
    fn tolerance_scaling_reduces_error() {
        // Halving rel_tol repeatedly must not let the achieved error grow
        // beyond a factor-4 wobble, and must reduce it overall.
        let al = alpha(0.5);
        let want = conformable_exp(1.0, al, 1.0, 1.0);
        let mut errors = Vec::new();
        let mut rel = 1e-4;
        for _ in 0..7 {
            let cfg = OdeConfig {
                rel_tol: rel,
                abs_tol: rel * 1e-2,
                ..OdeConfig::default()
            };
            let sol =
                solve_alpha_ode(linear(1.0), &conformable(), al, 1.0, 1.0, &cfg).unwrap();
            let err = ((sol.value_at(1.0).unwrap() - want) / want).abs().max(1e-15);
            errors.push(err);
            rel /= 2.0;
        }
        for pair in errors.windows(2) {
            assert!(
                pair[1] <= 4.0 * pair[0],
                "error grew beyond slack: {errors:?}"
            );
        }
        assert!(
            errors.last().unwrap() < errors.first().unwrap(),
            "no overall reduction: {errors:?}"
        );
    }
}
