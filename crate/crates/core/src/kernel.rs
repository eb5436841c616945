//! Kernels k on [a, b]: continuous, nonnegative, and nonvanishing above the
//! domain start. Three built-ins plus expression-defined custom kernels.
//!
//! Kernel evaluation is uniformly parameterized by the fractional order,
//! because the gamma-shifted kernel k(t) = t + 1/Γ(α) depends on it; the
//! other kernels ignore the order argument.

use crate::error::{Error, Result};
use crate::expr::ExprAst;
use crate::specialfn::gamma;

/// Built-in kernel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// k(t) = t on [0, ∞).
    Conformable,
    /// k(t) = t - a.
    Shifted,
    /// k(t) = t + 1/Γ(α); order-dependent.
    GammaShifted,
    /// k(t) given by an expression in t on a finite [a, b].
    Custom,
}

/// A kernel specification: family, domain, and (for custom kernels) the
/// defining expression. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    kind: KernelKind,
    domain_start: f64,
    domain_end: f64,
    body: Option<ExprAst>,
    alpha_dependent: bool,
}

/// Outcome of sampled kernel validation. Continuity is not certified;
/// only nonnegativity on the grid and nonvanishing above the start point.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub samples_checked: usize,
    /// (t, alpha, kernel value) triples where a requirement failed;
    /// evaluation failures record NaN as the value.
    pub violations: Vec<(f64, f64, f64)>,
    pub passed: bool,
}

/// Construct one of the three built-in kernels.
///
/// The conformable kernel fixes a = 0 and rejects anything else; the
/// gamma-shifted kernel is order-dependent and conventionally starts at 0.
pub fn builtin_kernel(kind: KernelKind, a: f64) -> Result<KernelSpec> {
    if !a.is_finite() {
        return Err(Error::InvalidKernel(format!(
            "domain start must be finite, got {a}"
        )));
    }
    match kind {
        KernelKind::Conformable => {
            if a != 0.0 {
                return Err(Error::InvalidKernel(format!(
                    "conformable kernel requires a = 0, got a = {a}"
                )));
            }
            Ok(KernelSpec {
                kind,
                domain_start: 0.0,
                domain_end: f64::INFINITY,
                body: None,
                alpha_dependent: false,
            })
        }
        KernelKind::Shifted => Ok(KernelSpec {
            kind,
            domain_start: a,
            domain_end: f64::INFINITY,
            body: None,
            alpha_dependent: false,
        }),
        KernelKind::GammaShifted => Ok(KernelSpec {
            kind,
            domain_start: a,
            domain_end: f64::INFINITY,
            body: None,
            alpha_dependent: true,
        }),
        KernelKind::Custom => Err(Error::InvalidKernel(
            "custom kernels are built with custom_kernel".to_string(),
        )),
    }
}

/// Construct a custom kernel from an expression in t on a finite [a, b].
/// The spec is not validated here; run [`validate_kernel`] to check the
/// nonnegativity requirements by sampling.
pub fn custom_kernel(body: ExprAst, a: f64, b: f64) -> Result<KernelSpec> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidKernel(format!(
            "custom kernel domain must be finite, got [{a}, {b}]"
        )));
    }
    if b <= a {
        return Err(Error::InvalidKernel(format!(
            "domain end must exceed domain start, got [{a}, {b}]"
        )));
    }
    Ok(KernelSpec {
        kind: KernelKind::Custom,
        domain_start: a,
        domain_end: b,
        body: Some(body),
        alpha_dependent: false,
    })
}

impl KernelSpec {
    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn domain_start(&self) -> f64 {
        self.domain_start
    }

    /// Domain end; +∞ for the built-in kernels.
    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn alpha_dependent(&self) -> bool {
        self.alpha_dependent
    }

    pub fn body(&self) -> Option<&ExprAst> {
        self.body.as_ref()
    }
}

/// Evaluate k(t, α).
pub fn eval_kernel(spec: &KernelSpec, t: f64, alpha: f64) -> Result<f64> {
    if t < spec.domain_start || t > spec.domain_end || t.is_nan() {
        return Err(Error::KernelDomain {
            t,
            a: spec.domain_start,
            b: spec.domain_end,
        });
    }
    match spec.kind {
        KernelKind::Conformable => Ok(t),
        KernelKind::Shifted => Ok(t - spec.domain_start),
        KernelKind::GammaShifted => Ok(t + 1.0 / gamma(alpha)?),
        KernelKind::Custom => spec
            .body
            .as_ref()
            .expect("custom kernel carries a body")
            .eval(t),
    }
}

/// Evaluate k(t, α)^p, resolving the degenerate point k = 0: zero for
/// p > 0, exactly one for p = 0, and a singularity error for p < 0 (the
/// caller must switch to a limit-based route there).
pub fn kernel_power(spec: &KernelSpec, t: f64, alpha: f64, p: f64) -> Result<f64> {
    if p == 0.0 {
        // Enforce k^0 = 1 exactly, independent of rounding in k itself.
        eval_kernel(spec, t, alpha)?;
        return Ok(1.0);
    }
    let k = eval_kernel(spec, t, alpha)?;
    finite_power(k, t, p)
}

/// Evaluate k(a + offset, α) in the offset variable. For the built-in
/// kernels that vanish at the start this is exact even when `a + offset`
/// would round to `a` in floating point, which the quadrature and the ODE
/// reduction rely on near the singular endpoint.
pub fn eval_kernel_at_offset(spec: &KernelSpec, offset: f64, alpha: f64) -> Result<f64> {
    let a = spec.domain_start;
    if offset < 0.0 || offset.is_nan() || a + offset > spec.domain_end {
        return Err(Error::KernelDomain {
            t: a + offset,
            a,
            b: spec.domain_end,
        });
    }
    match spec.kind {
        KernelKind::Conformable | KernelKind::Shifted => Ok(offset),
        KernelKind::GammaShifted => Ok(a + offset + 1.0 / gamma(alpha)?),
        KernelKind::Custom => spec
            .body
            .as_ref()
            .expect("custom kernel carries a body")
            .eval(a + offset),
    }
}

/// [`kernel_power`] in the offset variable; see [`eval_kernel_at_offset`].
pub fn kernel_power_at_offset(spec: &KernelSpec, offset: f64, alpha: f64, p: f64) -> Result<f64> {
    if p == 0.0 {
        eval_kernel_at_offset(spec, offset, alpha)?;
        return Ok(1.0);
    }
    let k = eval_kernel_at_offset(spec, offset, alpha)?;
    finite_power(k, spec.domain_start + offset, p)
}

fn finite_power(k: f64, t: f64, p: f64) -> Result<f64> {
    if k == 0.0 {
        if p > 0.0 {
            return Ok(0.0);
        }
        return Err(Error::SingularKernelPower { t, exponent: p });
    }
    Ok(k.powf(p))
}

/// Check k ≥ 0 on a uniform grid over [a, min(b, a + span)] and k > 0 above
/// the start point, for every order in `alphas` (a single probe order of
/// 0.5 is used when the list is empty). The default span is 10·max(1, |a|).
pub fn validate_kernel(
    spec: &KernelSpec,
    n_samples: usize,
    alphas: &[f64],
) -> Result<ValidationReport> {
    if n_samples < 2 {
        return Err(Error::InvalidKernel(format!(
            "validation needs at least 2 samples, got {n_samples}"
        )));
    }
    let a = spec.domain_start;
    let span = 10.0 * a.abs().max(1.0);
    let end = spec.domain_end.min(a + span);
    let default_probe = [0.5];
    let probes: &[f64] = if alphas.is_empty() { &default_probe } else { alphas };

    let mut violations = Vec::new();
    let mut samples_checked = 0;
    for &alpha in probes {
        for i in 0..n_samples {
            let t = a + (end - a) * (i as f64) / ((n_samples - 1) as f64);
            samples_checked += 1;
            match eval_kernel(spec, t, alpha) {
                Ok(k) => {
                    let nonnegative = k >= 0.0;
                    let nonvanishing = t <= a || k > 0.0;
                    if !nonnegative || !nonvanishing {
                        violations.push((t, alpha, k));
                    }
                }
                Err(_) => violations.push((t, alpha, f64::NAN)),
            }
        }
    }
    let passed = violations.is_empty();
    Ok(ValidationReport {
        samples_checked,
        violations,
        passed,
    })
}
