//! Action data files: the value of every generator on `1`.
//!
//! ```text
//! algebra = H4
//! p = s + 2
//! q = 3
//! r = -3
//! s = s
//! ```
//!
//! `window` is required for every algebra except `H4`. Generator lines may
//! appear in any order.

use std::collections::BTreeMap;

use super::poly::parse_poly_at;
use super::{key_value_lines, ParseError, ParseErrorKind};
use crate::classify::{ring_of, ActionData};
use crate::liealg::{AlgebraId, BasisSymbol};

pub fn parse_action_data(text: &str) -> Result<ActionData, ParseError> {
    let lines = key_value_lines(text)?;
    let alg_line = lines
        .iter()
        .find(|l| l.key == "algebra")
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::MissingKey("algebra".into())))?;
    let algebra = AlgebraId::from_name(alg_line.value).ok_or_else(|| {
        ParseError::new(
            alg_line.line,
            alg_line.value_col,
            ParseErrorKind::InvalidValue {
                key: "algebra".into(),
                message: "expected H4, AffineH4, Vir00 or AffineVirasoroH4".into(),
            },
        )
    })?;
    let mut window = None;
    let mut seen_meta = Vec::new();
    let mut assignments = BTreeMap::new();
    for l in &lines {
        if l.key == "algebra" || l.key == "window" {
            if seen_meta.contains(&l.key) {
                return Err(ParseError::new(
                    l.line,
                    l.key_col,
                    ParseErrorKind::DuplicateKey(l.key.to_string()),
                ));
            }
            seen_meta.push(l.key);
            if l.key == "window" {
                let w = l.value.parse::<i64>().map_err(|_| {
                    ParseError::new(
                        l.line,
                        l.value_col,
                        ParseErrorKind::InvalidValue {
                            key: "window".into(),
                            message: "expected an integer".into(),
                        },
                    )
                })?;
                window = Some(w);
            }
            continue;
        }
        let sym = BasisSymbol::parse_label(algebra, l.key).map_err(|_| {
            ParseError::new(
                l.line,
                l.key_col,
                ParseErrorKind::UnknownKey(l.key.to_string()),
            )
        })?;
        let value = parse_poly_at(l.value, Some(ring_of(algebra)), l.line, l.value_col)?;
        if assignments.insert(sym, value).is_some() {
            return Err(ParseError::new(
                l.line,
                l.key_col,
                ParseErrorKind::DuplicateKey(l.key.to_string()),
            ));
        }
    }
    let window = match (algebra, window) {
        (AlgebraId::H4, w) => w.unwrap_or(0),
        (_, Some(w)) => w,
        (_, None) => {
            return Err(ParseError::new(
                alg_line.line,
                alg_line.key_col,
                ParseErrorKind::MissingKey("window".into()),
            ))
        }
    };
    Ok(ActionData {
        algebra,
        window,
        assignments,
    })
}

pub fn format_action_data(data: &ActionData) -> String {
    let mut out = format!("algebra = {}\n", data.algebra);
    if data.algebra != AlgebraId::H4 {
        out.push_str(&format!("window = {}\n", data.window));
    }
    for (sym, v) in &data.assignments {
        out.push_str(&format!("{} = {}\n", sym.label(data.algebra), v));
    }
    out
}
