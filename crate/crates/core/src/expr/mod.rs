//! Expression language in one variable `t`: parsing, evaluation, symbolic
//! differentiation, simplification, and canonical printing.
//!
//! The grammar (lowest to highest precedence): `+ -`; `* /`; unary `-`;
//! `^` (right-associative); function calls and parentheses. Supported
//! functions: sin, cos, tan, exp, ln, sqrt, abs. Constants `pi` and `e`
//! are recognized. Unary minus binds looser than `^`, so `-t^2` is `-(t^2)`.

mod diff;
mod display;
mod lexer;
mod parser;
mod simplify;

pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse;

use crate::error::{Error, Result};

/// Binary operators of the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Built-in single-argument functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "tan" => Some(Func::Tan),
            "exp" => Some(Func::Exp),
            "ln" => Some(Func::Ln),
            "sqrt" => Some(Func::Sqrt),
            "abs" => Some(Func::Abs),
            _ => None,
        }
    }
}

/// Node payload of an expression tree.
#[derive(Debug, Clone)]
pub enum ExprKind {
    /// Numeric literal or folded constant.
    Const(f64),
    /// The single free variable `t`.
    Var,
    /// Unary negation.
    Neg(Box<ExprAst>),
    /// Binary operation.
    Binary {
        op: BinaryOp,
        lhs: Box<ExprAst>,
        rhs: Box<ExprAst>,
    },
    /// Function application.
    Call { func: Func, arg: Box<ExprAst> },
}

/// Parsed expression in one variable `t`.
///
/// Trees are immutable after construction; evaluation and transformation
/// are pure, so values may be shared freely across threads.
#[derive(Debug, Clone)]
pub struct ExprAst {
    pub kind: ExprKind,
    /// Column (0-based char offset) where this subexpression starts in the
    /// source text; 0 for synthesized nodes.
    pos: usize,
}

/// Structural equality ignores source positions.
impl PartialEq for ExprAst {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Const(a), ExprKind::Const(b)) => a == b,
            (ExprKind::Var, ExprKind::Var) => true,
            (ExprKind::Neg(a), ExprKind::Neg(b)) => a == b,
            (
                ExprKind::Binary { op: o1, lhs: l1, rhs: r1 },
                ExprKind::Binary { op: o2, lhs: l2, rhs: r2 },
            ) => o1 == o2 && l1 == l2 && r1 == r2,
            (
                ExprKind::Call { func: f1, arg: a1 },
                ExprKind::Call { func: f2, arg: a2 },
            ) => f1 == f2 && a1 == a2,
            _ => false,
        }
    }
}

// Constructor names mirror the operator set; they build trees rather than
// overload arithmetic on references.
#[allow(clippy::should_implement_trait)]
impl ExprAst {
    pub(crate) fn new(kind: ExprKind, pos: usize) -> Self {
        ExprAst { kind, pos }
    }

    /// Constant leaf. Negative values are stored as `Neg(Const(|v|))` so
    /// printed trees re-parse to the same structure.
    pub fn constant(v: f64) -> Self {
        if v < 0.0 {
            ExprAst::neg(ExprAst::new(ExprKind::Const(-v), 0))
        } else {
            ExprAst::new(ExprKind::Const(v), 0)
        }
    }

    /// The variable `t`.
    pub fn var() -> Self {
        ExprAst::new(ExprKind::Var, 0)
    }

    pub fn neg(e: ExprAst) -> Self {
        ExprAst::new(ExprKind::Neg(Box::new(e)), 0)
    }

    pub fn binary(op: BinaryOp, lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::new(
            ExprKind::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            },
            0,
        )
    }

    pub fn add(lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::binary(BinaryOp::Add, lhs, rhs)
    }

    pub fn sub(lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::binary(BinaryOp::Sub, lhs, rhs)
    }

    pub fn mul(lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::binary(BinaryOp::Mul, lhs, rhs)
    }

    pub fn div(lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::binary(BinaryOp::Div, lhs, rhs)
    }

    pub fn pow(lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::binary(BinaryOp::Pow, lhs, rhs)
    }

    pub fn call(func: Func, arg: ExprAst) -> Self {
        ExprAst::new(
            ExprKind::Call {
                func,
                arg: Box::new(arg),
            },
            0,
        )
    }

    /// Source column of this node (0 for synthesized nodes).
    pub fn position(&self) -> usize {
        self.pos
    }

    /// True if the variable `t` occurs anywhere in the tree.
    pub fn contains_var(&self) -> bool {
        match &self.kind {
            ExprKind::Const(_) => false,
            ExprKind::Var => true,
            ExprKind::Neg(e) => e.contains_var(),
            ExprKind::Binary { lhs, rhs, .. } => lhs.contains_var() || rhs.contains_var(),
            ExprKind::Call { arg, .. } => arg.contains_var(),
        }
    }

    /// Value of a variable-free subtree, if it evaluates cleanly.
    pub(crate) fn constant_value(&self) -> Option<f64> {
        if self.contains_var() {
            return None;
        }
        self.eval(0.0).ok().filter(|v| v.is_finite())
    }

    /// Evaluate at `t` in IEEE double precision. Domain violations (ln of a
    /// non-positive value, sqrt of a negative, 0 to a negative power, and
    /// any indeterminate form) are reported as errors, never as NaN.
    pub fn eval(&self, t: f64) -> Result<f64> {
        match &self.kind {
            ExprKind::Const(c) => Ok(*c),
            ExprKind::Var => Ok(t),
            ExprKind::Neg(e) => Ok(-e.eval(t)?),
            ExprKind::Binary { op, lhs, rhs } => {
                let l = lhs.eval(t)?;
                let r = rhs.eval(t)?;
                let v = match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => {
                        if r == 0.0 && l == 0.0 {
                            return Err(self.domain_error("0/0 is indeterminate"));
                        }
                        l / r
                    }
                    BinaryOp::Pow => {
                        if l == 0.0 && r < 0.0 {
                            return Err(self.domain_error("0 raised to a negative power"));
                        }
                        if l < 0.0 && r.fract() != 0.0 {
                            return Err(
                                self.domain_error("negative base with non-integer exponent")
                            );
                        }
                        l.powf(r)
                    }
                };
                if v.is_nan() {
                    return Err(self.domain_error("indeterminate form"));
                }
                Ok(v)
            }
            ExprKind::Call { func, arg } => {
                let a = arg.eval(t)?;
                let v = match func {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Exp => a.exp(),
                    Func::Ln => {
                        if a <= 0.0 {
                            return Err(self.domain_error("ln of a non-positive value"));
                        }
                        a.ln()
                    }
                    Func::Sqrt => {
                        if a < 0.0 {
                            return Err(self.domain_error("sqrt of a negative value"));
                        }
                        a.sqrt()
                    }
                    Func::Abs => a.abs(),
                };
                if v.is_nan() {
                    return Err(self.domain_error("indeterminate form"));
                }
                Ok(v)
            }
        }
    }

    fn domain_error(&self, message: &str) -> Error {
        Error::Domain {
            message: message.to_string(),
            position: self.pos,
        }
    }
}
