//! Shared generators for the randomized suites: seeded trees, kernels, and
//! vetting so that sampled cases stay inside numerically safe domains.

// Each integration test target compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use localfrac::expr::{ExprAst, Func};
use localfrac::kernel::{builtin_kernel, KernelKind, KernelSpec};
use rand::Rng;

/// Random expression tree over well-behaved operations (+, -, *, sin, cos,
/// exp) with bounded constants; hazard-free by construction except for
/// magnitude growth, which vetting filters.
pub fn smooth_tree<R: Rng>(rng: &mut R, depth: usize) -> ExprAst {
    if depth == 0 || rng.gen_bool(0.35) {
        return if rng.gen_bool(0.5) {
            ExprAst::var()
        } else {
            ExprAst::constant(rng.gen_range(0.2..2.5))
        };
    }
    match rng.gen_range(0..6) {
        0 => ExprAst::add(smooth_tree(rng, depth - 1), smooth_tree(rng, depth - 1)),
        1 => ExprAst::sub(smooth_tree(rng, depth - 1), smooth_tree(rng, depth - 1)),
        2 => ExprAst::mul(smooth_tree(rng, depth - 1), smooth_tree(rng, depth - 1)),
        3 => ExprAst::call(Func::Sin, smooth_tree(rng, depth - 1)),
        4 => ExprAst::call(Func::Cos, smooth_tree(rng, depth - 1)),
        _ => ExprAst::call(Func::Exp, smooth_tree(rng, depth - 1)),
    }
}

/// Random tree over the full node set in canonical form (nonnegative
/// constants, explicit negation), for print/parse round-trips.
pub fn any_tree<R: Rng>(rng: &mut R, depth: usize) -> ExprAst {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            ExprAst::var()
        } else {
            ExprAst::constant(rng.gen_range(0.0..10.0))
        };
    }
    match rng.gen_range(0..7) {
        0 => ExprAst::add(any_tree(rng, depth - 1), any_tree(rng, depth - 1)),
        1 => ExprAst::sub(any_tree(rng, depth - 1), any_tree(rng, depth - 1)),
        2 => ExprAst::mul(any_tree(rng, depth - 1), any_tree(rng, depth - 1)),
        3 => ExprAst::div(any_tree(rng, depth - 1), any_tree(rng, depth - 1)),
        4 => ExprAst::pow(any_tree(rng, depth - 1), any_tree(rng, depth - 1)),
        5 => ExprAst::neg(any_tree(rng, depth - 1)),
        _ => {
            let func = match rng.gen_range(0..7) {
                0 => Func::Sin,
                1 => Func::Cos,
                2 => Func::Tan,
                3 => Func::Exp,
                4 => Func::Ln,
                5 => Func::Sqrt,
                _ => Func::Abs,
            };
            ExprAst::call(func, any_tree(rng, depth - 1))
        }
    }
}

/// One of the three built-in kernels; the shifted kernel gets a random
/// start point.
pub fn random_builtin_kernel<R: Rng>(rng: &mut R) -> KernelSpec {
    match rng.gen_range(0..3) {
        0 => builtin_kernel(KernelKind::Conformable, 0.0).unwrap(),
        1 => builtin_kernel(KernelKind::Shifted, rng.gen_range(-2.0..2.0)).unwrap(),
        _ => builtin_kernel(KernelKind::GammaShifted, 0.0).unwrap(),
    }
}

/// True if `f` and its first three symbolic derivatives evaluate to tame
/// magnitudes on a small window around `t`. The higher-derivative caps
/// exclude fast oscillators (e.g. sin of a huge argument), for which no
/// finite-difference scheme at a fixed step can resolve the slope.
pub fn tame_at(f: &ExprAst, t: f64) -> bool {
    let d1 = f.diff();
    let d2 = d1.diff();
    let d3 = d2.diff();
    let caps = [1e3, 1e3, 1e4, 1e5];
    let window = [-0.06, -0.03, 0.0, 0.03, 0.06];
    window.iter().all(|d| {
        [f, &d1, &d2, &d3]
            .iter()
            .zip(caps)
            .all(|(g, cap)| matches!(g.eval(t + d), Ok(v) if v.abs() < cap))
    })
}

/// Draw (f, kernel, α, t) with f smooth and tame near t, t in
/// (a + 0.1, a + 5), α in the open unit interval.
pub fn vetted_case<R: Rng>(rng: &mut R, max_depth: usize) -> (ExprAst, KernelSpec, f64, f64) {
    loop {
        let f = smooth_tree(rng, max_depth);
        let k = random_builtin_kernel(rng);
        let alpha = rng.gen_range(0.01..0.99);
        let t = k.domain_start() + rng.gen_range(0.1..5.0);
        if f.contains_var() && tame_at(&f, t) {
            return (f, k, alpha, t);
        }
    }
}
