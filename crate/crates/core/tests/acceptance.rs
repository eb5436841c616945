//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its runtime. Seeded generators make every run identical.
//! The CLI byte-stability criterion lives in the cli crate's own suite.

mod common;

use std::time::{Duration, Instant};

use localfrac::expr::parse;
use localfrac::fraccalc::{
    alpha_integral, conformable_exp, ftc_residual, solve_alpha_ode, IntegralConfig, OdeConfig,
};
use localfrac::kernel::{builtin_kernel, KernelKind};
use localfrac::localderiv::{
    alpha_deriv_at_start, alpha_deriv_closed, alpha_deriv_limit, classical_from_alpha, AlphaOrder,
    EstimatorConfig,
};
use localfrac::specialfn::gamma;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn run_criterion(label: &str, budget: Option<Duration>, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| match budget {
        Some(limit) if elapsed > limit => Err(format!(
            "runtime {:?} exceeded budget {:?}",
            elapsed, limit
        )),
        _ => Ok(()),
    });
    match outcome {
        Ok(()) => println!("acceptance {label}: PASS ({} ms)", elapsed.as_millis()),
        Err(msg) => {
            println!("acceptance {label}: FAIL ({} ms): {msg}", elapsed.as_millis());
            panic!("acceptance {label} failed: {msg}");
        }
    }
}

fn conformable() -> localfrac::KernelSpec {
    builtin_kernel(KernelKind::Conformable, 0.0).unwrap()
}

#[test]
fn a1_sqrt_boundary_values() {
    run_criterion(
        "1 sqrt boundary values",
        Some(Duration::from_secs(1)),
        || {
            let f = parse("sqrt(t)").unwrap();
            let cfg = EstimatorConfig::default();
            for alpha in [0.1, 0.25, 0.4] {
                let r = alpha_deriv_at_start(&f, &conformable(), AlphaOrder::new(alpha).unwrap(), &cfg)
                    .map_err(|e| format!("alpha={alpha}: {e}"))?;
                if r.diverged || r.value.abs() > 1e-4 {
                    return Err(format!("alpha={alpha}: expected 0, got {:?}", r));
                }
            }
            let r = alpha_deriv_at_start(&f, &conformable(), AlphaOrder::new(0.5).unwrap(), &cfg)
                .map_err(|e| e.to_string())?;
            if r.diverged || (r.value - 0.5).abs() > 1e-4 {
                return Err(format!("alpha=0.5: expected 1/2, got {:?}", r));
            }
            Ok(())
        },
    );
}

#[test]
fn a2_nth_root_boundary_family() {
    run_criterion(
        "2 nth-root boundary family",
        Some(Duration::from_secs(2)),
        || {
            let cfg = EstimatorConfig::default();
            for n in 2..=5u32 {
                let inv_n = 1.0 / n as f64;
                let f = parse(&format!("t^{inv_n}")).unwrap();

                let below = AlphaOrder::new(inv_n - 0.05).unwrap();
                let r = alpha_deriv_at_start(&f, &conformable(), below, &cfg)
                    .map_err(|e| format!("n={n} below: {e}"))?;
                if r.diverged || r.value.abs() > 1e-4 {
                    return Err(format!("n={n} below: expected 0, got {:?}", r));
                }

                let at = AlphaOrder::new(inv_n).unwrap();
                let r = alpha_deriv_at_start(&f, &conformable(), at, &cfg)
                    .map_err(|e| format!("n={n} at: {e}"))?;
                if r.diverged || (r.value - inv_n).abs() > 1e-4 {
                    return Err(format!("n={n} at: expected {inv_n}, got {:?}", r));
                }

                let above = AlphaOrder::new(inv_n + 0.1).unwrap();
                let r = alpha_deriv_at_start(&f, &conformable(), above, &cfg)
                    .map_err(|e| format!("n={n} above: {e}"))?;
                if !r.diverged {
                    return Err(format!("n={n} above: expected divergence, got {:?}", r));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a3_limit_vs_closed_form_equivalence() {
    run_criterion(
        "3 limit vs closed-form equivalence",
        Some(Duration::from_secs(30)),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(40);
            let cfg = EstimatorConfig::default();
            let mut over_tight = 0usize;
            for case in 0..200 {
                let (f, k, alpha_raw, t) = common::vetted_case(&mut rng, 4);
                let alpha = AlphaOrder::new(alpha_raw).unwrap();
                let closed = alpha_deriv_closed(&f, &k, alpha, t)
                    .map_err(|e| format!("case {case} closed: {e}"))?;
                let limit = alpha_deriv_limit(&f, &k, alpha, t, &cfg)
                    .map_err(|e| format!("case {case} limit: {e}"))?;
                let rel = (limit.value - closed.value).abs() / (1.0 + closed.value.abs());
                if rel >= 1e-4 {
                    return Err(format!(
                        "case {case}: discrepancy {rel} for f = {}, alpha = {alpha_raw}, t = {t}",
                        f.to_text()
                    ));
                }
                if rel >= 1e-6 {
                    over_tight += 1;
                }
            }
            if over_tight > 2 {
                return Err(format!(
                    "{over_tight}/200 cases above 1e-6 (at most 2 allowed)"
                ));
            }
            Ok(())
        },
    );
}

#[test]
fn a4_classical_recovery_round_trip() {
    run_criterion(
        "4 classical recovery round trip",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(41);
            for case in 0..100 {
                let (f, k, alpha_raw, t) = common::vetted_case(&mut rng, 4);
                let alpha = AlphaOrder::new(alpha_raw).unwrap();
                let forward = alpha_deriv_closed(&f, &k, alpha, t)
                    .map_err(|e| format!("case {case}: {e}"))?;
                let back = classical_from_alpha(forward.value, &k, alpha, t)
                    .map_err(|e| format!("case {case}: {e}"))?;
                let fprime = f.diff().eval(t).map_err(|e| format!("case {case}: {e}"))?;
                if (back - fprime).abs() > 1e-12 * (1.0 + fprime.abs()) {
                    return Err(format!(
                        "case {case}: recovered {back} vs symbolic {fprime} for f = {}",
                        f.to_text()
                    ));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a5_unit_order_is_classical_bit_for_bit() {
    run_criterion("5 unit order identical to classical", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let one = AlphaOrder::new(1.0).unwrap();
        for case in 0..50 {
            let (f, k, _, t) = common::vetted_case(&mut rng, 4);
            let closed = alpha_deriv_closed(&f, &k, one, t)
                .map_err(|e| format!("case {case}: {e}"))?;
            let fprime = f.diff().eval(t).map_err(|e| format!("case {case}: {e}"))?;
            if closed.value != fprime {
                return Err(format!(
                    "case {case}: {} != {} (bits {:x} vs {:x}) for f = {}",
                    closed.value,
                    fprime,
                    closed.value.to_bits(),
                    fprime.to_bits(),
                    f.to_text()
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn a6_calculus_suite() {
    run_criterion("6 calculus suite", Some(Duration::from_secs(60)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let int_cfg = IntegralConfig::default();
        let est_cfg = EstimatorConfig::default();

        // Power-rule family of the weighted integral.
        let unit = parse("1").unwrap();
        for case in 0..10 {
            let alpha_raw: f64 = rng.gen_range(0.05..1.0);
            let t: f64 = rng.gen_range(0.05..10.0);
            let alpha = AlphaOrder::new(alpha_raw).unwrap();
            let got = alpha_integral(&unit, &conformable(), alpha, t, &int_cfg)
                .map_err(|e| format!("integral case {case}: {e}"))?;
            let want = t.powf(alpha_raw) / alpha_raw;
            if (got - want).abs() > 1e-8 * want.abs() {
                return Err(format!(
                    "integral case {case}: got {got}, want {want} (alpha={alpha_raw}, t={t})"
                ));
            }
        }

        // Fundamental theorem residual on smooth random cases. The integral
        // grows like 1/α, so the quadrature runs well below the residual
        // bound to keep its absolute error out of the quotient.
        let ftc_int_cfg = IntegralConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_level: 12,
        };
        let mut case = 0;
        while case < 20 {
            let (f, k, _, t) = common::vetted_case(&mut rng, 3);
            let alpha_raw: f64 = rng.gen_range(0.05..0.95);
            let a = k.domain_start();
            let tame_on_interval = (1..=10)
                .all(|i| matches!(f.eval(a + (t - a) * i as f64 / 10.0), Ok(v) if v.abs() < 1e4));
            if !tame_on_interval {
                continue;
            }
            let alpha = AlphaOrder::new(alpha_raw).unwrap();
            let residual = ftc_residual(&f, &k, alpha, t, &est_cfg, &ftc_int_cfg)
                .map_err(|e| format!("ftc case {case}: {e}"))?;
            if residual >= 1e-6 {
                return Err(format!(
                    "ftc case {case}: residual {residual} for f = {}, alpha = {alpha_raw}, t = {t}",
                    f.to_text()
                ));
            }
            case += 1;
        }

        // Linear α-ODE against the closed form, dense output included.
        let ode_cfg = OdeConfig::default();
        for alpha_raw in [0.3, 0.5, 0.8, 1.0] {
            for lambda in [-1.0, 1.0] {
                let alpha = AlphaOrder::new(alpha_raw).unwrap();
                let sol = solve_alpha_ode(
                    |_t, y| Ok(lambda * y),
                    &conformable(),
                    alpha,
                    1.0,
                    2.0,
                    &ode_cfg,
                )
                .map_err(|e| format!("ode alpha={alpha_raw} lambda={lambda}: {e}"))?;
                for t in [0.25, 0.5, 1.0, 1.5, 2.0] {
                    let got = sol.value_at(t).map_err(|e| e.to_string())?;
                    let want = conformable_exp(lambda, alpha, t, 1.0);
                    if ((got - want) / want).abs() > 1e-6 {
                        return Err(format!(
                            "ode alpha={alpha_raw} lambda={lambda} t={t}: got {got}, want {want}"
                        ));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn a7_gamma_values_and_recurrence() {
    run_criterion("7 gamma values and recurrence", None, || {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        if (gamma(0.5).unwrap() - sqrt_pi).abs() >= 1e-10 {
            return Err("gamma(1/2) misses sqrt(pi)".to_string());
        }
        if (gamma(1.0).unwrap() - 1.0).abs() >= 1e-14 {
            return Err("gamma(1) misses 1".to_string());
        }
        if (gamma(5.0).unwrap() - 24.0).abs() >= 1e-10 {
            return Err("gamma(5) misses 24".to_string());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for case in 0..1000 {
            let x: f64 = rng.gen_range(0.1..50.0);
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            if (lhs - rhs).abs() > 1e-12 * lhs.abs() {
                return Err(format!("recurrence case {case} at x={x}: {lhs} vs {rhs}"));
            }
        }
        Ok(())
    });
}

#[test]
fn a8_parser_round_trip_derivative_and_fuzz() {
    run_criterion("8 parser round-trip, derivative, fuzz", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(45);

        // Print/parse round-trip on 100 random canonical trees.
        for case in 0..100 {
            let tree = common::any_tree(&mut rng, 6);
            let text = tree.to_text();
            let reparsed =
                parse(&text).map_err(|e| format!("round-trip case {case} on {text:?}: {e}"))?;
            if reparsed != tree {
                return Err(format!("round-trip case {case}: {text:?} changed structure"));
            }
        }

        // Symbolic derivative against a five-point finite difference.
        let mut done = 0;
        while done < 100 {
            let f = common::smooth_tree(&mut rng, 4);
            let t: f64 = rng.gen_range(0.3..2.0);
            if !f.contains_var() || !common::tame_at(&f, t) {
                continue;
            }
            let h = 1e-4;
            let eval = |x: f64| f.eval(x).map_err(|e| e.to_string());
            let (p2, p1, m1, m2) = (
                eval(t + 2.0 * h)?,
                eval(t + h)?,
                eval(t - h)?,
                eval(t - 2.0 * h)?,
            );
            if [p2, p1, m1, m2].iter().any(|v| v.abs() > 1e3) {
                continue;
            }
            let numeric = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
            let symbolic = f.diff().eval(t).map_err(|e| e.to_string())?;
            if (symbolic - numeric).abs() > 1e-6 * (1.0 + symbolic.abs()) {
                return Err(format!(
                    "derivative mismatch: symbolic {symbolic}, numeric {numeric} for {}",
                    f.to_text()
                ));
            }
            done += 1;
        }

        // Fuzz: ten thousand arbitrary inputs, no panics allowed.
        let soup: Vec<char> = "0123456789.,+-*/^()te sincoexplnabqrt_π∞\u{0}\\\"'[]{};".chars().collect();
        for _ in 0..10_000 {
            let len = rng.gen_range(0..48);
            let s: String = (0..len)
                .map(|_| soup[rng.gen_range(0..soup.len())])
                .collect();
            let _ = parse(&s);
        }
        Ok(())
    });
}
