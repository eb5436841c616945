//! Bottom-up simplification: constant folding and unit identities.

use super::{BinaryOp, ExprAst, ExprKind};

impl ExprAst {
    /// Simplify by constant folding and the identities `x+0 -> x`,
    /// `x*1 -> x`, `x*0 -> 0`, `x^1 -> x`, `x^0 -> 1` (symbolic convention).
    /// Idempotent: `simplify(simplify(a)) == simplify(a)`.
    pub fn simplify(&self) -> ExprAst {
        match &self.kind {
            ExprKind::Const(_) | ExprKind::Var => self.clone(),
            ExprKind::Neg(e) => neg_simplified(e.simplify()),
            ExprKind::Binary { op, lhs, rhs } => {
                let l = lhs.simplify();
                let r = rhs.simplify();
                binary_simplified(*op, l, r)
            }
            ExprKind::Call { func, arg } => {
                let a = arg.simplify();
                if a.constant_value().is_some() {
                    let folded = ExprAst::call(*func, a.clone());
                    if let Some(v) = folded.constant_value() {
                        return ExprAst::constant(v);
                    }
                    return folded;
                }
                ExprAst::call(*func, a)
            }
        }
    }
}

/// Build a simplified negation of an already-simplified operand.
fn neg_simplified(e: ExprAst) -> ExprAst {
    match &e.kind {
        ExprKind::Const(c) if *c == 0.0 => ExprAst::constant(0.0),
        ExprKind::Neg(inner) => inner.as_ref().clone(),
        _ => ExprAst::neg(e),
    }
}

fn binary_simplified(op: BinaryOp, l: ExprAst, r: ExprAst) -> ExprAst {
    let lc = l.constant_value();
    let rc = r.constant_value();
    // Fold when both sides are constant-valued and the result is finite;
    // domain failures (e.g. 0^-1) are left unfolded for evaluation to report.
    if lc.is_some() && rc.is_some() {
        let folded = ExprAst::binary(op, l, r);
        if let Some(v) = folded.constant_value() {
            return ExprAst::constant(v);
        }
        return folded;
    }
    match op {
        BinaryOp::Add => {
            if lc == Some(0.0) {
                return r;
            }
            if rc == Some(0.0) {
                return l;
            }
        }
        BinaryOp::Sub => {
            if rc == Some(0.0) {
                return l;
            }
            if lc == Some(0.0) {
                return neg_simplified(r);
            }
        }
        BinaryOp::Mul => {
            if lc == Some(0.0) || rc == Some(0.0) {
                return ExprAst::constant(0.0);
            }
            if lc == Some(1.0) {
                return r;
            }
            if rc == Some(1.0) {
                return l;
            }
        }
        BinaryOp::Div => {
            if lc == Some(0.0) {
                return ExprAst::constant(0.0);
            }
            if rc == Some(1.0) {
                return l;
            }
        }
        BinaryOp::Pow => {
            if rc == Some(1.0) {
                return l;
            }
            if rc == Some(0.0) {
                return ExprAst::constant(1.0);
            }
        }
    }
    ExprAst::binary(op, l, r)
}
