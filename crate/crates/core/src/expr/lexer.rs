//! Tokenizer for the expression language.

use crate::error::ParseError;

/// Token classes produced by [`tokenize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Operator,
    Paren,
    Comma,
}

/// A lexeme with its column in the source.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 0-based char offset; strictly increasing across a token stream.
    pub position: usize,
}

/// Split source text into tokens. Columns are char offsets, so the error
/// position is always within `source.chars().count() + 1`.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && matches!(chars.get(i + 1), Some(d) if d.is_ascii_digit())) {
            i = scan_number(&chars, i);
            let lexeme: String = chars[start..i].iter().collect();
            tokens.push(Token {
                kind: TokenKind::Number,
                lexeme,
                position: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Identifier,
                lexeme: chars[start..i].iter().collect(),
                position: start,
            });
        } else if matches!(c, '+' | '-' | '*' | '/' | '^') {
            i += 1;
            tokens.push(Token {
                kind: TokenKind::Operator,
                lexeme: c.to_string(),
                position: start,
            });
        } else if c == '(' || c == ')' {
            i += 1;
            tokens.push(Token {
                kind: TokenKind::Paren,
                lexeme: c.to_string(),
                position: start,
            });
        } else if c == ',' {
            i += 1;
            tokens.push(Token {
                kind: TokenKind::Comma,
                lexeme: c.to_string(),
                position: start,
            });
        } else {
            return Err(ParseError {
                message: format!("unexpected character {c:?}"),
                position: start,
                expected: "number, identifier, operator, or parenthesis".to_string(),
            });
        }
    }
    Ok(tokens)
}

/// Scan a numeric literal: digits, optional fraction, optional exponent.
/// The exponent marker is consumed only when a full exponent follows, so
/// `2e` lexes as the number `2` followed by the identifier `e`.
fn scan_number(chars: &[char], mut i: usize) -> usize {
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
    }
    if i < chars.len() && chars[i] == '.' {
        i += 1;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
        let mut j = i + 1;
        if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
            j += 1;
        }
        if j < chars.len() && chars[j].is_ascii_digit() {
            i = j;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    i
}
