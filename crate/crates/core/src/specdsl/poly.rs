//! Recursive-descent polynomial parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | VAR | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{ParseError, ParseErrorKind};
use crate::exactpoly::{Poly, Rational, Var, VarSet};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Ident(s), col));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                ))
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(Rational),
    Var(Var),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    vars: Vec<Var>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: String) -> ParseError {
        ParseError::new(self.line, self.col(), ParseErrorKind::Syntax(msg))
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let e = u32::try_from(&n)
                    .map_err(|_| self.err(format!("exponent {n} is too large")))?;
                self.bump();
                Ok(Ast::Pow(Box::new(base), e))
            }
            other => Err(self.err(format!("expected an exponent, found {}", other.describe()))),
        }
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Ast::Num(Rational::from_integer(n)));
                }
                self.bump();
                match self.peek().clone() {
                    Tok::Int(d) if d != BigInt::from(0) => {
                        self.bump();
                        Ok(Ast::Num(Rational::new(n, d)))
                    }
                    Tok::Int(_) => Err(self.err("zero denominator".into())),
                    other => Err(self.err(format!(
                        "expected a denominator, found {}",
                        other.describe()
                    ))),
                }
            }
            Tok::Ident(name) => match Var::from_name(&name) {
                Some(v) => {
                    if !self.vars.contains(&v) {
                        self.vars.push(v);
                    }
                    Ok(Ast::Var(v))
                }
                None => Err(ParseError::new(
                    self.line,
                    col,
                    ParseErrorKind::UnknownVariable(name),
                )),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err(format!("expected `)`, found {}", self.peek().describe())));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(ParseError::new(
                self.line,
                col,
                ParseErrorKind::Syntax(format!("expected a term, found {}", other.describe())),
            )),
        }
    }
}

fn eval(ast: &Ast, vars: VarSet) -> Poly {
    match ast {
        Ast::Num(c) => Poly::constant(vars, c.clone()),
        Ast::Var(v) => Poly::var(vars, *v).expect("ring chosen to contain every variable"),
        Ast::Add(a, b) => eval(a, vars).add(&eval(b, vars)).expect("same ring"),
        Ast::Sub(a, b) => eval(a, vars).sub(&eval(b, vars)).expect("same ring"),
        Ast::Mul(a, b) => eval(a, vars).mul(&eval(b, vars)).expect("same ring"),
        Ast::Neg(a) => eval(a, vars).neg(),
        Ast::Pow(a, e) => eval(a, vars).pow(*e),
    }
}

fn parse_ast(text: &str, line: usize, col0: usize) -> Result<(Ast, Vec<Var>), ParseError> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        vars: Vec::new(),
    };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(format!("unexpected {}", p.peek().describe())));
    }
    Ok((ast, p.vars))
}

/// Parses a polynomial, placing it in the smallest ring that holds its
/// variables (`Q[s]` for constants).
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    parse_poly_at(text, None, 1, 1)
}

/// Parses a polynomial in a given ring.
pub fn parse_poly_in(text: &str, vars: VarSet) -> Result<Poly, ParseError> {
    parse_poly_at(text, Some(vars), 1, 1)
}

/// Parses `text` found at `line`, starting at column `col0`.
pub(crate) fn parse_poly_at(
    text: &str,
    ring: Option<VarSet>,
    line: usize,
    col0: usize,
) -> Result<Poly, ParseError> {
    let (ast, used) = parse_ast(text, line, col0)?;
    let vars = match ring {
        Some(vs) => {
            if let Some(v) = used.iter().find(|v| vs.index_of(**v).is_none()) {
                let col = text.find(v.name()).map_or(col0, |i| col0 + i);
                return Err(ParseError::new(
                    line,
                    col,
                    ParseErrorKind::UnknownVariable(format!("{v} (not in {vs})")),
                ));
            }
            vs
        }
        None => VarSet::smallest_containing(&used).ok_or_else(|| {
            let names: Vec<_> = used.iter().map(|v| v.name()).collect();
            ParseError::new(
                line,
                col0,
                ParseErrorKind::Syntax(format!(
                    "variables {} do not belong to one ring",
                    names.join(", ")
                )),
            )
        })?,
    };
    Ok(eval(&ast, vars))
}
