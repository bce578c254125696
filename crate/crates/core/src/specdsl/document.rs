//! Module spec documents.
//!
//! ```text
//! algebra = AffineH4
//! family  = MTildeAlphaBeta
//! base    = Mhb
//! a1 = 1
//! a2 = 0
//! b  = 1
//! alpha = 2
//! window = 1
//! beta.-1 = 0
//! beta.1 = 5
//! ```
//!
//! | family            | algebra            | keys                                   |
//! |-------------------|--------------------|----------------------------------------|
//! | `Mg0`, `M0g`      | `H4`               | `g`                                    |
//! | `Mhb`, `Mbh`      | `H4`               | `a1 a2 b`                              |
//! | `Mab`             | `H4`               | `a b`                                  |
//! | `M0`              | `H4`               |                                        |
//! | `MTildeAlphaBeta` | `AffineH4`         | `base`, base keys, `alpha window beta.k` |
//! | `MTildeF`         | `AffineH4`         | `window f.k`                           |
//! | `Vir00`           | `Vir00`            | `lambda fpoly`                         |
//! | `AffVir`          | `AffineVirasoroH4` | `base`, base keys, `alpha lambda window`, optional `beta.k` |
//!
//! `window` is optional for `H4` and `Vir00` documents, where it only sets the
//! default verification window; `test_degree` is optional everywhere.
//! `beta.0` and `f.0` may be omitted.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::poly::parse_poly_at;
use super::{key_value_lines, Line, ParseError, ParseErrorKind};
use crate::error::Error;
use crate::exactpoly::{Poly, Rational, Var, VarSet};
use crate::liealg::AlgebraId;
use crate::modfam::{AffVirSpec, AffineKind, AffineSpec, H4Family, ModuleSpec, Vir00Spec};

/// A parsed spec together with optional run parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub spec: ModuleSpec,
    /// Default verification window for specs without a window of their own.
    pub window: Option<i64>,
    pub test_degree: Option<u32>,
}

const BASE_FAMILIES: [&str; 6] = ["Mg0", "M0g", "Mhb", "Mbh", "Mab", "M0"];

fn family_algebra(name: &str) -> Option<AlgebraId> {
    match name {
        n if BASE_FAMILIES.contains(&n) => Some(AlgebraId::H4),
        "MTildeAlphaBeta" | "MTildeF" => Some(AlgebraId::AffineH4),
        "Vir00" => Some(AlgebraId::Vir00),
        "AffVir" => Some(AlgebraId::AffineVirasoroH4),
        _ => None,
    }
}

fn base_keys(base: &str) -> &'static [&'static str] {
    match base {
        "Mg0" | "M0g" => &["g"],
        "Mhb" | "Mbh" => &["a1", "a2", "b"],
        "Mab" => &["a", "b"],
        _ => &[],
    }
}

struct Doc<'a> {
    lines: HashMap<&'a str, Line<'a>>,
    family_line: (usize, usize),
}

impl<'a> Doc<'a> {
    fn get(&self, key: &str) -> Option<&Line<'a>> {
        self.lines.get(key)
    }

    fn require(&self, key: &str) -> Result<&Line<'a>, ParseError> {
        self.get(key).ok_or_else(|| {
            let (l, c) = self.family_line;
            ParseError::new(l, c, ParseErrorKind::MissingKey(key.to_string()))
        })
    }

    fn position(&self, key: &str) -> (usize, usize) {
        self.get(key)
            .map_or(self.family_line, |l| (l.line, l.value_col))
    }

    fn invalid(line: &Line<'_>, message: impl Into<String>) -> ParseError {
        ParseError::new(
            line.line,
            line.value_col,
            ParseErrorKind::InvalidValue {
                key: line.key.to_string(),
                message: message.into(),
            },
        )
    }

    fn poly(&self, key: &str, vars: VarSet) -> Result<Poly, ParseError> {
        let l = self.require(key)?;
        parse_poly_at(l.value, Some(vars), l.line, l.value_col)
    }

    fn rational(&self, key: &str) -> Result<Rational, ParseError> {
        let l = self.require(key)?;
        rational_value(l)
    }

    fn integer(&self, key: &str) -> Result<Option<i64>, ParseError> {
        self.get(key)
            .map(|l| {
                l.value
                    .parse::<i64>()
                    .map_err(|_| Doc::invalid(l, "expected an integer"))
            })
            .transpose()
    }
}

fn rational_value(l: &Line<'_>) -> Result<Rational, ParseError> {
    let p =
        parse_poly_at(l.value, Some(VarSet::S), l.line, l.value_col).map_err(|e| match e.kind {
            ParseErrorKind::UnknownVariable(_) => Doc::invalid(l, "expected a rational number"),
            _ => e,
        })?;
    p.constant_value()
        .ok_or_else(|| Doc::invalid(l, "expected a rational number"))
}

/// Allowed keys for a family (indexed keys `beta.k`, `f.k` handled apart).
fn allowed_keys(family: &str, base: Option<&str>) -> Vec<&'static str> {
    let mut keys = vec!["algebra", "family", "test_degree", "window"];
    match family {
        "MTildeAlphaBeta" => {
            keys.extend(["base", "alpha"]);
            keys.extend(base_keys(base.unwrap_or("")));
        }
        "AffVir" => {
            keys.extend(["base", "alpha", "lambda"]);
            keys.extend(base_keys(base.unwrap_or("")));
        }
        "MTildeF" => {}
        "Vir00" => keys.extend(["lambda", "fpoly"]),
        f => keys.extend(base_keys(f)),
    }
    keys
}

fn indexed_prefix(family: &str) -> Option<&'static str> {
    match family {
        "MTildeAlphaBeta" | "AffVir" => Some("beta"),
        "MTildeF" => Some("f"),
        _ => None,
    }
}

fn parse_h4(doc: &Doc<'_>, family: &str) -> Result<H4Family, ParseError> {
    let s_poly = |k: &str| doc.poly(k, VarSet::S);
    let built = match family {
        "Mg0" => H4Family::mg0(s_poly("g")?),
        "M0g" => H4Family::m0g(s_poly("g")?),
        "Mhb" => H4Family::mhb(doc.rational("a1")?, doc.rational("a2")?, doc.rational("b")?),
        "Mbh" => H4Family::mbh(doc.rational("a1")?, doc.rational("a2")?, doc.rational("b")?),
        "Mab" => H4Family::mab(doc.rational("a")?, doc.rational("b")?),
        _ => Ok(H4Family::M0),
    };
    built.map_err(|e| constraint_error(doc, e))
}

fn constraint_error(doc: &Doc<'_>, e: Error) -> ParseError {
    match e {
        Error::Constraint(c) => {
            let (l, col) = doc.position(&c.key());
            ParseError::new(l, col, ParseErrorKind::ConstraintViolation(c))
        }
        Error::Parse(p) => p,
        other => {
            let (l, c) = doc.family_line;
            ParseError::new(l, c, ParseErrorKind::Syntax(other.to_string()))
        }
    }
}

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<SpecDocument, ParseError> {
    let lines = key_value_lines(text)?;
    let mut map: HashMap<&str, Line<'_>> = HashMap::new();
    for l in lines {
        if map.contains_key(l.key) {
            return Err(ParseError::new(
                l.line,
                l.key_col,
                ParseErrorKind::DuplicateKey(l.key.to_string()),
            ));
        }
        map.insert(l.key, l);
    }
    let first = (1, 1);
    let alg_line = map
        .get("algebra")
        .ok_or_else(|| {
            ParseError::new(
                first.0,
                first.1,
                ParseErrorKind::MissingKey("algebra".into()),
            )
        })?
        .clone();
    let algebra = AlgebraId::from_name(alg_line.value).ok_or_else(|| {
        Doc::invalid(
            &alg_line,
            "expected H4, AffineH4, Vir00 or AffineVirasoroH4",
        )
    })?;
    let fam_line = map
        .get("family")
        .ok_or_else(|| {
            ParseError::new(
                alg_line.line,
                alg_line.key_col,
                ParseErrorKind::MissingKey("family".into()),
            )
        })?
        .clone();
    let family = fam_line.value;
    match family_algebra(family) {
        None => {
            return Err(Doc::invalid(
                &fam_line,
                format!("unknown family `{family}`"),
            ))
        }
        Some(a) if a != algebra => {
            return Err(Doc::invalid(
                &fam_line,
                format!("family {family} belongs to algebra {a}, not {algebra}"),
            ))
        }
        Some(_) => {}
    }
    let doc = Doc {
        lines: map,
        family_line: (fam_line.line, fam_line.value_col),
    };

    let base = match family {
        "MTildeAlphaBeta" | "AffVir" => {
            let l = doc.require("base")?;
            if !BASE_FAMILIES.contains(&l.value) {
                return Err(Doc::invalid(
                    l,
                    format!("`{}` is not an H4 family", l.value),
                ));
            }
            Some(l.value)
        }
        _ => None,
    };

    let allowed = allowed_keys(family, base);
    let prefix = indexed_prefix(family);
    let mut indexed: BTreeMap<i64, &Line<'_>> = BTreeMap::new();
    let mut sorted: Vec<&Line<'_>> = doc.lines.values().collect();
    sorted.sort_by_key(|l| l.line);
    for l in sorted {
        if allowed.contains(&l.key) {
            continue;
        }
        let idx = prefix.and_then(|p| {
            l.key
                .strip_prefix(p)
                .and_then(|rest| rest.strip_prefix('.'))
                .and_then(|k| k.parse::<i64>().ok())
        });
        match idx {
            Some(k) if !indexed.contains_key(&k) => {
                indexed.insert(k, l);
            }
            Some(_) => {
                return Err(ParseError::new(
                    l.line,
                    l.key_col,
                    ParseErrorKind::DuplicateKey(l.key.to_string()),
                ))
            }
            None => {
                return Err(ParseError::new(
                    l.line,
                    l.key_col,
                    ParseErrorKind::UnknownKey(l.key.to_string()),
                ))
            }
        }
    }

    let window = doc.integer("window")?;
    let test_degree = match doc.get("test_degree") {
        None => None,
        Some(l) => Some(
            l.value
                .parse::<u32>()
                .ok()
                .filter(|d| *d >= 1)
                .ok_or_else(|| Doc::invalid(l, "expected a positive integer"))?,
        ),
    };
    if let (Some(w), Some(l)) = (window, doc.get("window")) {
        if w < 1 {
            return Err(ParseError::new(
                l.line,
                l.value_col,
                ParseErrorKind::ConstraintViolation(crate::modfam::Constraint::WindowPositive),
            ));
        }
    }

    let spec = match algebra {
        AlgebraId::H4 => ModuleSpec::H4(parse_h4(&doc, family)?),
        AlgebraId::Vir00 => {
            let lambda = doc.rational("lambda")?;
            let fpoly = doc.poly("fpoly", VarSet::D0W0)?;
            ModuleSpec::Vir00(Vir00Spec::new(lambda, fpoly).map_err(|e| constraint_error(&doc, e))?)
        }
        AlgebraId::AffineH4 | AlgebraId::AffineVirasoroH4 => {
            let n = window.ok_or_else(|| {
                let (l, c) = doc.family_line;
                ParseError::new(l, c, ParseErrorKind::MissingKey("window".into()))
            })?;
            let built = match family {
                "MTildeF" => {
                    let mut fseq = BTreeMap::new();
                    for (&k, l) in &indexed {
                        fseq.insert(
                            k,
                            parse_poly_at(l.value, Some(VarSet::S), l.line, l.value_col)?,
                        );
                    }
                    fseq.entry(0)
                        .or_insert(Poly::var(VarSet::S, Var::S).expect("s"));
                    AffineSpec::tilde_f(fseq, n).map(ModuleSpec::Affine)
                }
                _ => {
                    let base_fam = parse_h4(&doc, base.expect("base checked"))?;
                    let alpha = doc.rational("alpha")?;
                    let mut beta = BTreeMap::new();
                    for (&k, l) in &indexed {
                        beta.insert(k, rational_value(l)?);
                    }
                    beta.entry(0).or_insert_with(Rational::zero);
                    if family == "AffVir" {
                        for k in -n..=n {
                            beta.entry(k).or_insert_with(Rational::zero);
                        }
                        let lambda = doc.rational("lambda")?;
                        AffineSpec::alpha_beta(base_fam, alpha, beta, n)
                            .and_then(|a| AffVirSpec::new(a, lambda))
                            .map(ModuleSpec::AffVir)
                    } else {
                        AffineSpec::alpha_beta(base_fam, alpha, beta, n).map(ModuleSpec::Affine)
                    }
                }
            };
            built.map_err(|e| constraint_error(&doc, e))?
        }
    };
    let window = match spec {
        ModuleSpec::H4(_) | ModuleSpec::Vir00(_) => window,
        _ => None,
    };
    Ok(SpecDocument {
        spec,
        window,
        test_degree,
    })
}

fn push(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{key} = {value}\n"));
}

fn push_h4_params(out: &mut String, fam: &H4Family) {
    match fam {
        H4Family::Mg0 { g } | H4Family::M0g { g } => push(out, "g", g),
        H4Family::Mhb { a1, a2, b } | H4Family::Mbh { a1, a2, b } => {
            push(out, "a1", a1);
            push(out, "a2", a2);
            push(out, "b", b);
        }
        H4Family::Mab { a, b } => {
            push(out, "a", a);
            push(out, "b", b);
        }
        H4Family::M0 => {}
    }
}

/// Canonical text of a document; [`parse_spec`] reads it back unchanged.
pub fn format_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    let spec = &doc.spec;
    push(
        &mut out,
        "algebra",
        crate::modfam::Representation::algebra(spec),
    );
    push(&mut out, "family", spec.family_name());
    match spec {
        ModuleSpec::H4(f) => push_h4_params(&mut out, f),
        ModuleSpec::Vir00(v) => {
            push(&mut out, "lambda", v.lambda());
            push(&mut out, "fpoly", v.fpoly());
        }
        ModuleSpec::Affine(a) => {
            push_affine(&mut out, a);
        }
        ModuleSpec::AffVir(v) => {
            push(&mut out, "lambda", v.lambda());
            push_affine(&mut out, v.base());
        }
    }
    if let Some(w) = doc.window {
        push(&mut out, "window", w);
    }
    if let Some(d) = doc.test_degree {
        push(&mut out, "test_degree", d);
    }
    out
}

fn push_affine(out: &mut String, a: &AffineSpec) {
    match a.kind() {
        AffineKind::AlphaBeta { base, alpha, beta } => {
            push(out, "base", base.name());
            push_h4_params(out, base);
            push(out, "alpha", alpha);
            push(out, "window", a.window());
            for (k, b) in beta {
                push(out, &format!("beta.{k}"), b);
            }
        }
        AffineKind::F { fseq } => {
            push(out, "window", a.window());
            for (k, f) in fseq {
                push(out, &format!("f.{k}"), f);
            }
        }
    }
}
