//! Precedence-climbing parser for the expression language.

use super::lexer::{tokenize, Token, TokenKind};
use super::{BinaryOp, ExprAst, ExprKind, Func};
use crate::error::ParseError;

const SUPPORTED_NAMES: &str = "t, pi, e, sin, cos, tan, exp, ln, sqrt, abs";

/// Guards against stack exhaustion on pathological nesting.
const MAX_DEPTH: usize = 200;

/// Parse source text into an expression tree.
///
/// Never panics: malformed input of any kind yields a [`ParseError`] with
/// the offending column.
pub fn parse(source: &str) -> Result<ExprAst, ParseError> {
    let tokens = tokenize(source)?;
    let end = source.chars().count();
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end,
    };
    let expr = parser.additive(0)?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError {
            message: format!("unexpected token {:?}", tok.lexeme),
            position: tok.position,
            expected: "end of input or an operator".to_string(),
        });
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    cursor: usize,
    /// Char length of the source, used as the error position at end of input.
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor)
    }

    fn advance(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.cursor).cloned();
        if tok.is_some() {
            self.cursor += 1;
        }
        tok
    }

    fn error_here(&self, message: &str, expected: &str) -> ParseError {
        let position = self.peek().map(|t| t.position).unwrap_or(self.end);
        ParseError {
            message: message.to_string(),
            position,
            expected: expected.to_string(),
        }
    }

    fn check_depth(&self, depth: usize) -> Result<(), ParseError> {
        if depth > MAX_DEPTH {
            Err(self.error_here("expression too deeply nested", "shallower expression"))
        } else {
            Ok(())
        }
    }

    /// Lowest level: `+` and `-`, left-associative.
    fn additive(&mut self, depth: usize) -> Result<ExprAst, ParseError> {
        self.check_depth(depth)?;
        let mut lhs = self.multiplicative(depth + 1)?;
        while let Some(op) = self.peek_operator(&["+", "-"]) {
            self.advance();
            let rhs = self.multiplicative(depth + 1)?;
            let kind = if op == '+' { BinaryOp::Add } else { BinaryOp::Sub };
            let pos = lhs.position();
            lhs = ExprAst::new(
                ExprKind::Binary {
                    op: kind,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                pos,
            );
        }
        Ok(lhs)
    }

    /// `*` and `/`, left-associative.
    fn multiplicative(&mut self, depth: usize) -> Result<ExprAst, ParseError> {
        self.check_depth(depth)?;
        let mut lhs = self.unary(depth + 1)?;
        while let Some(op) = self.peek_operator(&["*", "/"]) {
            self.advance();
            let rhs = self.unary(depth + 1)?;
            let kind = if op == '*' { BinaryOp::Mul } else { BinaryOp::Div };
            let pos = lhs.position();
            lhs = ExprAst::new(
                ExprKind::Binary {
                    op: kind,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                pos,
            );
        }
        Ok(lhs)
    }

    /// Unary minus; binds looser than `^`, so `-t^2` parses as `-(t^2)`.
    fn unary(&mut self, depth: usize) -> Result<ExprAst, ParseError> {
        self.check_depth(depth)?;
        if let Some('-') = self.peek_operator(&["-"]) {
            let tok = self.advance().expect("minus token");
            let operand = self.unary(depth + 1)?;
            return Ok(ExprAst::new(ExprKind::Neg(Box::new(operand)), tok.position));
        }
        self.power(depth + 1)
    }

    /// `^`, right-associative; the exponent may start with a unary minus.
    fn power(&mut self, depth: usize) -> Result<ExprAst, ParseError> {
        self.check_depth(depth)?;
        let base = self.primary(depth + 1)?;
        if let Some('^') = self.peek_operator(&["^"]) {
            self.advance();
            let exponent = self.unary(depth + 1)?;
            let pos = base.position();
            return Ok(ExprAst::new(
                ExprKind::Binary {
                    op: BinaryOp::Pow,
                    lhs: Box::new(base),
                    rhs: Box::new(exponent),
                },
                pos,
            ));
        }
        Ok(base)
    }

    fn primary(&mut self, depth: usize) -> Result<ExprAst, ParseError> {
        self.check_depth(depth)?;
        let tok = match self.advance() {
            Some(tok) => tok,
            None => {
                return Err(ParseError {
                    message: "unexpected end of input".to_string(),
                    position: self.end,
                    expected: "number, identifier, or '('".to_string(),
                })
            }
        };
        match tok.kind {
            TokenKind::Number => {
                let value: f64 = tok.lexeme.parse().map_err(|_| ParseError {
                    message: format!("invalid numeric literal {:?}", tok.lexeme),
                    position: tok.position,
                    expected: "a finite number".to_string(),
                })?;
                if !value.is_finite() {
                    return Err(ParseError {
                        message: format!("numeric literal {:?} overflows", tok.lexeme),
                        position: tok.position,
                        expected: "a finite number".to_string(),
                    });
                }
                Ok(ExprAst::new(ExprKind::Const(value), tok.position))
            }
            TokenKind::Identifier => self.identifier(tok, depth),
            TokenKind::Paren if tok.lexeme == "(" => {
                let inner = self.additive(depth + 1)?;
                self.expect_close_paren()?;
                Ok(inner)
            }
            _ => Err(ParseError {
                message: format!("unexpected token {:?}", tok.lexeme),
                position: tok.position,
                expected: "number, identifier, or '('".to_string(),
            }),
        }
    }

    fn identifier(&mut self, tok: Token, depth: usize) -> Result<ExprAst, ParseError> {
        match tok.lexeme.as_str() {
            "t" => Ok(ExprAst::new(ExprKind::Var, tok.position)),
            "pi" => Ok(ExprAst::new(
                ExprKind::Const(std::f64::consts::PI),
                tok.position,
            )),
            "e" => Ok(ExprAst::new(
                ExprKind::Const(std::f64::consts::E),
                tok.position,
            )),
            name => {
                let func = Func::from_name(name).ok_or_else(|| ParseError {
                    message: format!("unknown identifier {name:?}"),
                    position: tok.position,
                    expected: format!("one of {SUPPORTED_NAMES}"),
                })?;
                match self.peek() {
                    Some(open) if open.lexeme == "(" => {
                        self.advance();
                    }
                    _ => {
                        return Err(self.error_here(
                            &format!("function {name:?} must be followed by '('"),
                            "'('",
                        ))
                    }
                }
                let arg = self.additive(depth + 1)?;
                self.expect_close_paren()?;
                Ok(ExprAst::new(
                    ExprKind::Call {
                        func,
                        arg: Box::new(arg),
                    },
                    tok.position,
                ))
            }
        }
    }

    fn expect_close_paren(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(tok) if tok.lexeme == ")" => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error_here("unbalanced parentheses", "')'")),
        }
    }

    fn peek_operator(&self, among: &[&str]) -> Option<char> {
        let tok = self.peek()?;
        if tok.kind == TokenKind::Operator && among.contains(&tok.lexeme.as_str()) {
            tok.lexeme.chars().next()
        } else {
            None
        }
    }
}
