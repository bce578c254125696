//! Structure constants for the four algebras acted on by this crate.
//!
//! * `H4`: basis `p, q, r, s` with `[p,q] = r`, `[s,p] = p`, `[s,q] = -q`
//!   and `r` central.
//! * `AffineH4`: loop elements `x@m = x ⊗ t^m`, a central `k` and the degree
//!   derivation `d`, with
//!   `[x@m, y@n] = [x,y]@(m+n) + m (x,y) δ(m+n,0) k` and `[d, x@m] = m x@m`.
//! * `Vir00`: `dvir@m` and commuting `w@m` with
//!   `[dvir@m, dvir@n] = (n-m) dvir@(m+n) + δ(m+n,0) (m^3-m)/12 k` and
//!   `[dvir@n, w@m] = m w@(m+n)`.
//! * `AffineVirasoroH4`: the loop part of `AffineH4` together with the
//!   Virasoro part, glued by `[dvir@m, x@n] = n x@(m+n)`.
//!
//! The `w@m` symbols of `Vir00` are stored with kind [`Kind::S`]; they only
//! ever print and parse as `w` so they cannot be mistaken for `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    P,
    Q,
    R,
    S,
    K,
    D,
    DVir,
}

impl Kind {
    pub fn is_h4(self) -> bool {
        matches!(self, Kind::P | Kind::Q | Kind::R | Kind::S)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraId {
    H4,
    AffineH4,
    Vir00,
    AffineVirasoroH4,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 4] = [
        AlgebraId::H4,
        AlgebraId::AffineH4,
        AlgebraId::Vir00,
        AlgebraId::AffineVirasoroH4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::H4 => "H4",
            AlgebraId::AffineH4 => "AffineH4",
            AlgebraId::Vir00 => "Vir00",
            AlgebraId::AffineVirasoroH4 => "AffineVirasoroH4",
        }
    }

    pub fn from_name(name: &str) -> Option<AlgebraId> {
        AlgebraId::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn contains(self, sym: BasisSymbol) -> bool {
        let loop_free = sym.index == 0;
        match (self, sym.kind) {
            (AlgebraId::H4, k) => k.is_h4() && loop_free,
            (AlgebraId::AffineH4, k) if k.is_h4() => true,
            (AlgebraId::AffineH4, Kind::K | Kind::D) => loop_free,
            (AlgebraId::Vir00, Kind::S | Kind::DVir) => true,
            (AlgebraId::Vir00, Kind::K) => loop_free,
            (AlgebraId::AffineVirasoroH4, k) if k.is_h4() => true,
            (AlgebraId::AffineVirasoroH4, Kind::DVir) => true,
            (AlgebraId::AffineVirasoroH4, Kind::K) => loop_free,
            _ => false,
        }
    }

    fn check(self, sym: BasisSymbol) -> Result<()> {
        if self.contains(sym) {
            Ok(())
        } else {
            Err(Error::SymbolNotInAlgebra {
                symbol: sym.label(self),
                algebra: self.name().to_string(),
            })
        }
    }

    /// Generators with loop index in `[-window, window]`, sorted.
    pub fn generators(self, window: i64) -> Vec<BasisSymbol> {
        let range = || -window..=window;
        let mut out = Vec::new();
        match self {
            AlgebraId::H4 => {
                out.extend([Kind::P, Kind::Q, Kind::R, Kind::S].map(|k| BasisSymbol::new(k, 0)))
            }
            AlgebraId::AffineH4 => {
                for k in [Kind::P, Kind::Q, Kind::R, Kind::S] {
                    out.extend(range().map(|m| BasisSymbol::new(k, m)));
                }
                out.push(BasisSymbol::k());
                out.push(BasisSymbol::d());
            }
            AlgebraId::Vir00 => {
                out.extend(range().map(BasisSymbol::w));
                out.push(BasisSymbol::k());
                out.extend(range().map(BasisSymbol::dvir));
            }
            AlgebraId::AffineVirasoroH4 => {
                for k in [Kind::P, Kind::Q, Kind::R, Kind::S] {
                    out.extend(range().map(|m| BasisSymbol::new(k, m)));
                }
                out.push(BasisSymbol::k());
                out.extend(range().map(BasisSymbol::dvir));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis vector: `kind` with a loop index (`x ⊗ t^index`, `dvir@index`).
/// `k` and `d` always carry index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisSymbol {
    kind: Kind,
    index: i64,
}

impl BasisSymbol {
    fn new(kind: Kind, index: i64) -> Self {
        BasisSymbol { kind, index }
    }

    pub fn p(m: i64) -> Self {
        BasisSymbol::new(Kind::P, m)
    }

    pub fn q(m: i64) -> Self {
        BasisSymbol::new(Kind::Q, m)
    }

    pub fn r(m: i64) -> Self {
        BasisSymbol::new(Kind::R, m)
    }

    pub fn s(m: i64) -> Self {
        BasisSymbol::new(Kind::S, m)
    }

    /// `W_m` of Vir(0,0).
    pub fn w(m: i64) -> Self {
        BasisSymbol::new(Kind::S, m)
    }

    pub fn dvir(m: i64) -> Self {
        BasisSymbol::new(Kind::DVir, m)
    }

    pub fn k() -> Self {
        BasisSymbol::new(Kind::K, 0)
    }

    pub fn d() -> Self {
        BasisSymbol::new(Kind::D, 0)
    }

    /// Loop-indexed symbol of the given H4 kind.
    pub fn loop_symbol(kind: Kind, m: i64) -> Option<Self> {
        kind.is_h4().then(|| BasisSymbol::new(kind, m))
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn index(self) -> i64 {
        self.index
    }

    /// Text label in the context of `alg`: `p`, `p@2`, `k`, `d`, `dvir@-1`,
    /// and `w@m` for the S-kind symbols of Vir(0,0).
    pub fn label(self, alg: AlgebraId) -> String {
        let name = match self.kind {
            Kind::P => "p",
            Kind::Q => "q",
            Kind::R => "r",
            Kind::S if alg == AlgebraId::Vir00 => "w",
            Kind::S => "s",
            Kind::K => return "k".to_string(),
            Kind::D => return "d".to_string(),
            Kind::DVir => "dvir",
        };
        if self.index == 0 {
            name.to_string()
        } else {
            format!("{name}@{}", self.index)
        }
    }

    /// Parses a label produced by [`BasisSymbol::label`]; `x@0` is accepted
    /// as a synonym for `x`.
    pub fn parse_label(alg: AlgebraId, text: &str) -> Result<BasisSymbol> {
        let bad = || Error::SymbolNotInAlgebra {
            symbol: text.to_string(),
            algebra: alg.name().to_string(),
        };
        let (name, index) = match text.split_once('@') {
            None => (text, 0),
            Some((n, i)) => (n, i.parse::<i64>().map_err(|_| bad())?),
        };
        let kind = match (name, alg) {
            ("p", _) => Kind::P,
            ("q", _) => Kind::Q,
            ("r", _) => Kind::R,
            ("s", a) if a != AlgebraId::Vir00 => Kind::S,
            ("w", AlgebraId::Vir00) => Kind::S,
            ("k", _) if index == 0 && !text.contains('@') => Kind::K,
            ("d", _) if index == 0 && !text.contains('@') => Kind::D,
            ("dvir", _) => Kind::DVir,
            _ => return Err(bad()),
        };
        let sym = BasisSymbol::new(kind, index);
        alg.check(sym)?;
        Ok(sym)
    }
}

/// Finite rational combination of basis symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<BasisSymbol, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn basis(sym: BasisSymbol) -> Self {
        LieElement::term(sym, Rational::one())
    }

    pub fn term(sym: BasisSymbol, c: Rational) -> Self {
        let mut e = LieElement::zero();
        e.add_term(sym, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisSymbol, Rational)>>(terms: I) -> Self {
        let mut e = LieElement::zero();
        for (s, c) in terms {
            e.add_term(s, c);
        }
        e
    }

    fn add_term(&mut self, sym: BasisSymbol, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(sym).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sym: BasisSymbol) -> Rational {
        self.terms.get(&sym).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> LieElement {
        LieElement::from_terms(self.terms.iter().map(|(s, c)| (*s, c * k)))
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.neg())
    }

    pub fn display(&self, alg: AlgebraId) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&s.label(alg));
        }
        out
    }
}

/// H4 part of the bracket table, `[x, y]` for loop-free kinds.
fn h4_bracket(x: Kind, y: Kind) -> Option<(Kind, i64)> {
    match (x, y) {
        (Kind::P, Kind::Q) => Some((Kind::R, 1)),
        (Kind::Q, Kind::P) => Some((Kind::R, -1)),
        (Kind::S, Kind::P) => Some((Kind::P, 1)),
        (Kind::P, Kind::S) => Some((Kind::P, -1)),
        (Kind::S, Kind::Q) => Some((Kind::Q, -1)),
        (Kind::Q, Kind::S) => Some((Kind::Q, 1)),
        _ => None,
    }
}

/// The invariant form on H4: `(p,q) = (r,s) = 1`, symmetric, zero otherwise.
/// Loop indices are ignored.
pub fn bilinear_form(x: BasisSymbol, y: BasisSymbol) -> Result<Rational> {
    for sym in [x, y] {
        if !sym.kind.is_h4() {
            return Err(Error::SymbolNotInAlgebra {
                symbol: sym.label(AlgebraId::AffineH4),
                algebra: AlgebraId::H4.name().to_string(),
            });
        }
    }
    let pair = |a, b| (x.kind == a && y.kind == b) || (x.kind == b && y.kind == a);
    Ok(if pair(Kind::P, Kind::Q) || pair(Kind::R, Kind::S) {
        Rational::one()
    } else {
        Rational::zero()
    })
}

fn bracket_basis(alg: AlgebraId, x: BasisSymbol, y: BasisSymbol) -> LieElement {
    use Kind::*;
    let (m, n) = (x.index, y.index);
    match (x.kind, y.kind) {
        (K, _) | (_, K) => LieElement::zero(),
        (D, D) => LieElement::zero(),
        (D, _) => LieElement::term(y, rat(n)),
        (_, D) => LieElement::term(x, rat(-m)),
        (DVir, DVir) => {
            let mut out = LieElement::term(BasisSymbol::dvir(m + n), rat(n - m));
            if m + n == 0 {
                out.add_term(BasisSymbol::k(), ratio(m * m * m - m, 12));
            }
            out
        }
        (DVir, _) => LieElement::term(BasisSymbol::new(y.kind, m + n), rat(n)),
        (_, DVir) => LieElement::term(BasisSymbol::new(x.kind, m + n), rat(-m)),
        // the w@m of Vir(0,0) commute
        _ if alg == AlgebraId::Vir00 => LieElement::zero(),
        (a, b) => {
            let mut out = match h4_bracket(a, b) {
                Some((kind, c)) => LieElement::term(BasisSymbol::new(kind, m + n), rat(c)),
                None => LieElement::zero(),
            };
            if m + n == 0 && m != 0 {
                let form = bilinear_form(x, y).expect("loop symbols");
                out.add_term(BasisSymbol::k(), form * Rational::from_integer(m.into()));
            }
            out
        }
    }
}

/// Bilinear extension of the bracket table of `alg`.
pub fn bracket(alg: AlgebraId, x: &LieElement, y: &LieElement) -> Result<LieElement> {
    for (s, _) in x.terms().chain(y.terms()) {
        alg.check(*s)?;
    }
    let mut out = LieElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out = out.add(&bracket_basis(alg, *a, *b).scale(&(ca * cb)));
        }
    }
    Ok(out)
}

/// `[x, y]` for two basis symbols.
pub fn bracket_symbols(alg: AlgebraId, x: BasisSymbol, y: BasisSymbol) -> Result<LieElement> {
    bracket(alg, &LieElement::basis(x), &LieElement::basis(y))
}

/// The automorphism `p -> -q, q -> p, r -> r, s -> -s` of H4.
pub fn eta(x: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero();
    for (sym, c) in x.terms() {
        AlgebraId::H4.check(*sym)?;
        let (img, sign) = match sym.kind {
            Kind::P => (Kind::Q, -1),
            Kind::Q => (Kind::P, 1),
            Kind::R => (Kind::R, 1),
            _ => (Kind::S, -1),
        };
        out.add_term(
            BasisSymbol::new(img, 0),
            c * Rational::from_integer(sign.into()),
        );
    }
    Ok(out)
}
