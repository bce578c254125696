//! Text formats: polynomials, module spec documents and action data.
//!
//! Polynomials use `+ - * ^`, parentheses, the variables `s d d0 w0` and
//! rational literals `p/q`:
//!
//! ```text
//! 1/2*s^2 - 3*s*d + 7
//! ```
//!
//! Spec documents and action data are `key = value` lines; `#` starts a
//! comment. See [`parse_spec`] and [`parse_action_data`].

mod actions;
mod document;
mod poly;

use std::fmt;

use thiserror::Error;

use crate::modfam::Constraint;

pub use actions::{format_action_data, parse_action_data};
pub use document::{format_spec, parse_spec, SpecDocument};
pub use poly::{parse_poly, parse_poly_in};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    UnknownKey(String),
    DuplicateKey(String),
    MissingKey(String),
    InvalidValue { key: String, message: String },
    ConstraintViolation(Constraint),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::UnknownKey(k) => write!(f, "unknown key `{k}`"),
            ParseErrorKind::DuplicateKey(k) => write!(f, "duplicate key `{k}`"),
            ParseErrorKind::MissingKey(k) => write!(f, "missing key `{k}`"),
            ParseErrorKind::InvalidValue { key, message } => {
                write!(f, "invalid value for `{key}`: {message}")
            }
            ParseErrorKind::ConstraintViolation(c) => write!(f, "constraint violation: {c}"),
        }
    }
}

/// A diagnostic with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// One `key = value` line of a document.
#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub line: usize,
    pub key: &'a str,
    pub key_col: usize,
    pub value: &'a str,
    pub value_col: usize,
}

/// Splits a document into `key = value` lines, skipping blanks and comments.
pub(crate) fn key_value_lines(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::Syntax("expected `key = value`".into()),
            ));
        };
        let key_part = &content[..eq];
        let key = key_part.trim();
        let key_col = key_part.len() - key_part.trim_start().len() + 1;
        if key.is_empty() {
            return Err(ParseError::new(
                line,
                eq + 1,
                ParseErrorKind::Syntax("missing key before `=`".into()),
            ));
        }
        let value_part = &content[eq + 1..];
        let value = value_part.trim();
        let value_col = eq + 2 + (value_part.len() - value_part.trim_start().len());
        if value.is_empty() {
            return Err(ParseError::new(
                line,
                value_col,
                ParseErrorKind::Syntax(format!("missing value for `{key}`")),
            ));
        }
        out.push(Line {
            line,
            key,
            key_col,
            value,
            value_col,
        });
    }
    Ok(out)
}
