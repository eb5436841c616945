//! Canonical text form. `parse(to_text(ast))` is structurally equal to
//! `ast` for trees in canonical form (nonnegative constants, negation via
//! the explicit unary node).

use super::{BinaryOp, ExprAst, ExprKind};
use std::fmt;

impl BinaryOp {
    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => " + ",
            BinaryOp::Sub => " - ",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

fn precedence(e: &ExprAst) -> u8 {
    match &e.kind {
        ExprKind::Const(_) | ExprKind::Var | ExprKind::Call { .. } => 5,
        ExprKind::Neg(_) => 3,
        ExprKind::Binary { op, .. } => op.precedence(),
    }
}

impl ExprAst {
    /// Canonical parenthesized text that re-parses to an equal tree.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_expr(&mut out, self);
        out
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn write_expr(out: &mut String, e: &ExprAst) {
    match &e.kind {
        ExprKind::Const(c) => {
            // Rust's shortest round-trip formatting: "2", "0.5", ...
            out.push_str(&format!("{c}"));
        }
        ExprKind::Var => out.push('t'),
        ExprKind::Neg(inner) => {
            out.push('-');
            // Parenthesize anything that is not an atom or call, e.g. "-(t^2)".
            let atom = matches!(
                inner.kind,
                ExprKind::Const(_) | ExprKind::Var | ExprKind::Call { .. }
            );
            write_child(out, inner, !atom);
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let prec = op.precedence();
            // Left side: parenthesize looser-binding children; `^` is
            // right-associative, so a `^` left child needs parens too.
            let left_parens = precedence(lhs) < prec
                || (*op == BinaryOp::Pow && precedence(lhs) <= prec);
            // Right side: parenthesize equal precedence (all the left-
            // associative operators) and any negation for readability.
            let right_parens = match *op {
                BinaryOp::Pow => precedence(rhs) < prec,
                _ => precedence(rhs) <= prec || matches!(rhs.kind, ExprKind::Neg(_)),
            };
            write_child(out, lhs, left_parens);
            out.push_str(op.symbol());
            write_child(out, rhs, right_parens);
        }
        ExprKind::Call { func, arg } => {
            out.push_str(func.name());
            out.push('(');
            write_expr(out, arg);
            out.push(')');
        }
    }
}

fn write_child(out: &mut String, e: &ExprAst, parens: bool) {
    if parens {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}
