//! Mechanical check of the module axiom
//! `x.(y.v) - y.(x.v) = [x,y].v`
//! over every unordered pair of distinct generators in a loop window and
//! every monomial `v` of bounded total degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, Rational};
use crate::liealg::{bracket_symbols, AlgebraId, BasisSymbol};
use crate::modfam::Representation;

use num_traits::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The bracket involves a generator outside the module's window.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub x: BasisSymbol,
    pub y: BasisSymbol,
    pub test_poly: Poly,
    /// `None` for skipped entries.
    pub residual: Option<Poly>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub algebra: AlgebraId,
    pub window: i64,
    pub test_degree: u32,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn checked(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status != Status::Skip)
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Skip)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn find(&self, x: BasisSymbol, y: BasisSymbol) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.x == x && e.y == y)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "SUMMARY pass={} checked={} skipped={}",
            self.passed(),
            self.checked(),
            self.skipped()
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let residual = e.residual.as_ref().map_or("-".to_string(), Poly::compact);
            writeln!(
                f,
                "PAIR {} {} POLY {} RESIDUAL {} {}",
                e.x.label(self.algebra),
                e.y.label(self.algebra),
                e.test_poly.compact(),
                residual,
                e.status
            )?;
        }
        writeln!(f, "{}", self.summary_line())
    }
}

/// Monomials of total degree `<= degree` in the module's ring, ascending.
pub fn test_basis(rep: &dyn Representation, degree: u32) -> Vec<Poly> {
    let vars = rep.var_set();
    Monomial::up_to_degree(vars.len(), degree)
        .into_iter()
        .map(|m| Poly::term(vars, m, Rational::one()))
        .collect()
}

/// `x.(y.v) - y.(x.v) - [x,y].v`.
pub fn residual(
    rep: &dyn Representation,
    x: BasisSymbol,
    y: BasisSymbol,
    v: &Poly,
) -> Result<Poly> {
    let br = bracket_symbols(rep.algebra(), x, y)?;
    let xy = rep.act(x, &rep.act(y, v)?)?;
    let yx = rep.act(y, &rep.act(x, v)?)?;
    xy.sub(&yx)?.sub(&rep.act_element(&br, v)?)
}

/// Checks every unordered pair of distinct generators with loop index in
/// `[-window, window]` against every monomial of degree `<= test_degree`.
pub fn verify_module(
    rep: &dyn Representation,
    window: i64,
    test_degree: u32,
) -> Result<VerificationReport> {
    if window < 1 || test_degree < 1 {
        return Err(Error::InvalidBounds(format!(
            "window and test degree must be at least 1, got {window} and {test_degree}"
        )));
    }
    if let Some(w) = rep.loop_window() {
        if w < window {
            return Err(Error::WindowExceeded {
                index: window,
                window: w,
            });
        }
    }
    let alg = rep.algebra();
    let gens = alg.generators(window);
    let basis = test_basis(rep, test_degree);
    let mut entries = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            let br = bracket_symbols(alg, x, y)?;
            let skip = br.terms().any(|(s, _)| !rep.evaluable(*s));
            for v in &basis {
                let (residual, status) = if skip {
                    (None, Status::Skip)
                } else {
                    let r = residual(rep, x, y, v)?;
                    let st = if r.is_zero() {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    (Some(r), st)
                };
                entries.push(Entry {
                    x,
                    y,
                    test_poly: v.clone(),
                    residual,
                    status,
                });
            }
        }
    }
    Ok(VerificationReport {
        algebra: alg,
        window,
        test_degree,
        entries,
    })
}

/// [`verify_module`] restricted to the Virasoro-type algebras.
pub fn verify_vir(
    rep: &dyn Representation,
    window: i64,
    test_degree: u32,
) -> Result<VerificationReport> {
    match rep.algebra() {
        AlgebraId::Vir00 | AlgebraId::AffineVirasoroH4 => verify_module(rep, window, test_degree),
        other => Err(Error::SpecInvalid(format!(
            "expected a Vir00 or AffineVirasoroH4 module, got {other}"
        ))),
    }
}
