//! Symbolic differentiation with respect to `t`.

use super::{BinaryOp, ExprAst, ExprKind, Func};

impl ExprAst {
    /// Symbolic derivative d/dt, simplified.
    ///
    /// The derivative tree is total: abs differentiates to `u/abs(u) * u'`,
    /// which is the sign away from 0 and raises a domain error when later
    /// evaluated at a zero of `u`. A general power `u^v` is handled through
    /// the `exp(v*ln(u))` rewrite; a constant exponent uses the power rule.
    pub fn diff(&self) -> ExprAst {
        self.diff_raw().simplify()
    }

    fn diff_raw(&self) -> ExprAst {
        match &self.kind {
            ExprKind::Const(_) => ExprAst::constant(0.0),
            ExprKind::Var => ExprAst::constant(1.0),
            ExprKind::Neg(e) => ExprAst::neg(e.diff_raw()),
            ExprKind::Binary { op, lhs, rhs } => {
                let u = lhs.as_ref();
                let v = rhs.as_ref();
                match op {
                    BinaryOp::Add => ExprAst::add(u.diff_raw(), v.diff_raw()),
                    BinaryOp::Sub => ExprAst::sub(u.diff_raw(), v.diff_raw()),
                    BinaryOp::Mul => ExprAst::add(
                        ExprAst::mul(u.diff_raw(), v.clone()),
                        ExprAst::mul(u.clone(), v.diff_raw()),
                    ),
                    BinaryOp::Div => ExprAst::div(
                        ExprAst::sub(
                            ExprAst::mul(u.diff_raw(), v.clone()),
                            ExprAst::mul(u.clone(), v.diff_raw()),
                        ),
                        ExprAst::pow(v.clone(), ExprAst::constant(2.0)),
                    ),
                    BinaryOp::Pow => diff_pow(u, v),
                }
            }
            ExprKind::Call { func, arg } => {
                let u = arg.as_ref();
                let du = u.diff_raw();
                let outer = match func {
                    Func::Sin => ExprAst::call(Func::Cos, u.clone()),
                    Func::Cos => ExprAst::neg(ExprAst::call(Func::Sin, u.clone())),
                    Func::Tan => ExprAst::div(
                        ExprAst::constant(1.0),
                        ExprAst::pow(
                            ExprAst::call(Func::Cos, u.clone()),
                            ExprAst::constant(2.0),
                        ),
                    ),
                    Func::Exp => ExprAst::call(Func::Exp, u.clone()),
                    Func::Ln => ExprAst::div(ExprAst::constant(1.0), u.clone()),
                    Func::Sqrt => ExprAst::div(
                        ExprAst::constant(1.0),
                        ExprAst::mul(
                            ExprAst::constant(2.0),
                            ExprAst::call(Func::Sqrt, u.clone()),
                        ),
                    ),
                    Func::Abs => ExprAst::div(u.clone(), ExprAst::call(Func::Abs, u.clone())),
                };
                ExprAst::mul(outer, du)
            }
        }
    }
}

/// d/dt of `u^v`.
fn diff_pow(base: &ExprAst, exponent: &ExprAst) -> ExprAst {
    if let Some(c) = exponent.constant_value() {
        // Power rule: c * u^(c-1) * u'
        return ExprAst::mul(
            ExprAst::mul(
                ExprAst::constant(c),
                ExprAst::pow(base.clone(), ExprAst::constant(c - 1.0)),
            ),
            base.diff_raw(),
        );
    }
    // General case via u^v = exp(v*ln(u)):
    //   (u^v)' = u^v * (v' * ln(u) + v * u' / u)
    ExprAst::mul(
        ExprAst::pow(base.clone(), exponent.clone()),
        ExprAst::add(
            ExprAst::mul(
                exponent.diff_raw(),
                ExprAst::call(Func::Ln, base.clone()),
            ),
            ExprAst::div(
                ExprAst::mul(exponent.clone(), base.diff_raw()),
                base.clone(),
            ),
        ),
    )
}
