//! The `.cbt` circuit language.
//!
//! ```text
//! # cebit-dsl v1
//! cebits 3;
//! H pos1;
//! CNOT pos1 pol;
//! CNOT pol pos0;
//! expect x y y;
//! ```
//!
//! `pol` names cebit 0 and `posK` names cebit K+1. Angles accept decimal
//! literals and multiples of `pi` such as `pi/8` or `-3pi/4`.

mod ast;
mod lexer;
mod parser;

use thiserror::Error;

pub use ast::{Ast, Operand, SimpleGate, Span, Statement, StatementKind};
pub use lexer::{render_tokens, tokenize, Token, TokenKind, KEYWORDS};
pub use parser::{parse, parse_source, to_circuit};

/// Positioned syntax or validation error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}{}", .expected.as_ref().map(|e| format!(" (expected {e})")).unwrap_or_default())]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub expected: Option<String>,
}

impl ParseError {
    pub fn new(message: impl Into<String>, line: usize, column: usize) -> Self {
        ParseError {
            message: message.into(),
            line,
            column,
            expected: None,
        }
    }

    pub fn expecting(mut self, expected: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self
    }
}
