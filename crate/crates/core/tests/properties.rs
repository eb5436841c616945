//! Algebraic identities of the α-derivative over randomized inputs:
//! linearity and the product rule, both inherited from the classical
//! derivative through the closed form.

mod common;

use localfrac::expr::ExprAst;
use localfrac::localderiv::{alpha_deriv_closed, AlphaOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 200 {
        let (f, k, alpha_raw, t) = common::vetted_case(&mut rng, 3);
        let g = common::smooth_tree(&mut rng, 3);
        if !common::tame_at(&g, t) {
            continue;
        }
        let c1: f64 = rng.gen_range(-3.0..3.0);
        let c2: f64 = rng.gen_range(-3.0..3.0);
        let alpha = AlphaOrder::new(alpha_raw).unwrap();

        let combined = ExprAst::add(
            ExprAst::mul(ExprAst::constant(c1), f.clone()),
            ExprAst::mul(ExprAst::constant(c2), g.clone()),
        );
        let lhs = alpha_deriv_closed(&combined, &k, alpha, t).unwrap().value;
        let vf = alpha_deriv_closed(&f, &k, alpha, t).unwrap().value;
        let vg = alpha_deriv_closed(&g, &k, alpha, t).unwrap().value;
        let rhs = c1 * vf + c2 * vg;
        let scale = 1.0 + (c1 * vf).abs() + (c2 * vg).abs();
        assert!(
            (lhs - rhs).abs() <= 1e-12 * scale,
            "linearity violated: {lhs} vs {rhs} for f = {}, g = {}",
            f.to_text(),
            g.to_text()
        );
        done += 1;
    }
}

#[test]
fn closed_form_satisfies_product_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 200 {
        let (f, k, alpha_raw, t) = common::vetted_case(&mut rng, 3);
        let g = common::smooth_tree(&mut rng, 3);
        if !common::tame_at(&g, t) {
            continue;
        }
        let alpha = AlphaOrder::new(alpha_raw).unwrap();

        let product = ExprAst::mul(f.clone(), g.clone());
        let lhs = alpha_deriv_closed(&product, &k, alpha, t).unwrap().value;
        let df = alpha_deriv_closed(&f, &k, alpha, t).unwrap().value;
        let dg = alpha_deriv_closed(&g, &k, alpha, t).unwrap().value;
        let fv = f.eval(t).unwrap();
        let gv = g.eval(t).unwrap();
        let rhs = df * gv + fv * dg;
        let scale = 1.0 + (df * gv).abs() + (fv * dg).abs();
        assert!(
            (lhs - rhs).abs() <= 1e-10 * scale,
            "product rule violated: {lhs} vs {rhs} for f = {}, g = {}",
            f.to_text(),
            g.to_text()
        );
        done += 1;
    }
}
