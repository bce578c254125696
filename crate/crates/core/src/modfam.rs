//! Module families as action evaluators.
//!
//! Every module here is free of rank one over the polynomial ring of its
//! Cartan part, so an element is just a [`Poly`] and an action is a map
//! `Poly -> Poly`. Generators act through a shift of the argument followed by
//! multiplication with the generator's value on `1`:
//!
//! | generator | shift of `v`      | value on `1`          |
//! |-----------|-------------------|-----------------------|
//! | `p@k`     | `tau sigma^k`     | `alpha^k p.1`         |
//! | `q@k`     | `tau^-1 sigma^k`  | `alpha^k q.1`         |
//! | `r@k`     | `sigma^k`         | `alpha^k r.1`         |
//! | `s@k`     | `sigma^k`         | `alpha^k s + beta_k`  |
//!
//! with `tau: s -> s-1` and `sigma: d -> d-1`. The H4 families are the
//! `k = 0` slice on `Q[s]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, rat_pow, Poly, Rational, Shift, Var, VarSet};
use crate::liealg::{AlgebraId, BasisSymbol, Kind, LieElement};

/// A violated family invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    A1NonZero,
    BNonZero,
    ANonZero,
    GNonZero,
    GInS,
    AlphaNonZero,
    LambdaNonZero,
    FpolyInW0,
    WindowPositive,
    BetaZeroAtOrigin,
    FZeroIsS,
    FInS(i64),
    MissingBeta(i64),
    MissingF(i64),
    OutsideWindow { key: String, window: i64 },
    BetaVanishes(i64),
    AffVirNeedsAlphaBeta,
}

impl Constraint {
    /// The spec key the constraint is about.
    pub fn key(&self) -> String {
        match self {
            Constraint::A1NonZero => "a1".into(),
            Constraint::BNonZero => "b".into(),
            Constraint::ANonZero => "a".into(),
            Constraint::GNonZero | Constraint::GInS => "g".into(),
            Constraint::AlphaNonZero => "alpha".into(),
            Constraint::LambdaNonZero => "lambda".into(),
            Constraint::FpolyInW0 => "fpoly".into(),
            Constraint::WindowPositive => "window".into(),
            Constraint::BetaZeroAtOrigin => "beta.0".into(),
            Constraint::FZeroIsS => "f.0".into(),
            Constraint::FInS(k) | Constraint::MissingF(k) => format!("f.{k}"),
            Constraint::MissingBeta(k) | Constraint::BetaVanishes(k) => format!("beta.{k}"),
            Constraint::OutsideWindow { key, .. } => key.clone(),
            Constraint::AffVirNeedsAlphaBeta => "base".into(),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::A1NonZero => f.write_str("a1 != 0: h = a1*s + a2 must have degree 1"),
            Constraint::BNonZero => f.write_str("b != 0"),
            Constraint::ANonZero => f.write_str("a != 0"),
            Constraint::GNonZero => f.write_str("g != 0"),
            Constraint::GInS => f.write_str("g must be a polynomial in s"),
            Constraint::AlphaNonZero => f.write_str("alpha != 0"),
            Constraint::LambdaNonZero => f.write_str("lambda != 0"),
            Constraint::FpolyInW0 => f.write_str("fpoly must be a polynomial in w0"),
            Constraint::WindowPositive => f.write_str("window >= 1"),
            Constraint::BetaZeroAtOrigin => f.write_str("beta_0 = 0"),
            Constraint::FZeroIsS => f.write_str("f_0 = s"),
            Constraint::FInS(k) => write!(f, "f_{k} must be a polynomial in s"),
            Constraint::MissingBeta(k) => write!(f, "beta_{k} is required"),
            Constraint::MissingF(k) => write!(f, "f_{k} is required"),
            Constraint::OutsideWindow { key, window } => {
                write!(f, "{key} lies outside the window [-{window}, {window}]")
            }
            Constraint::BetaVanishes(k) => write!(f, "beta_{k} = 0 (beta vanishes identically)"),
            Constraint::AffVirNeedsAlphaBeta => {
                f.write_str("the loop part must be an MTildeAlphaBeta module")
            }
        }
    }
}

/// The six rank-one H4 families on `Q[s]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum H4Family {
    /// `p.1 = g`, `q.1 = 0`.
    Mg0 {
        g: Poly,
    },
    /// `p.1 = 0`, `q.1 = g`.
    M0g {
        g: Poly,
    },
    /// `p.1 = a1 s + a2`, `q.1 = b`, `r.1 = -a1 b`.
    Mhb {
        a1: Rational,
        a2: Rational,
        b: Rational,
    },
    /// `p.1 = b`, `q.1 = a1 s + a2`, `r.1 = -a1 b`.
    Mbh {
        a1: Rational,
        a2: Rational,
        b: Rational,
    },
    /// `p.1 = a`, `q.1 = b`.
    Mab {
        a: Rational,
        b: Rational,
    },
    M0,
}

impl H4Family {
    pub fn mg0(g: Poly) -> Result<Self> {
        let f = H4Family::Mg0 { g };
        f.validate()?;
        Ok(f)
    }

    pub fn m0g(g: Poly) -> Result<Self> {
        let f = H4Family::M0g { g };
        f.validate()?;
        Ok(f)
    }

    pub fn mhb(a1: Rational, a2: Rational, b: Rational) -> Result<Self> {
        let f = H4Family::Mhb { a1, a2, b };
        f.validate()?;
        Ok(f)
    }

    pub fn mbh(a1: Rational, a2: Rational, b: Rational) -> Result<Self> {
        let f = H4Family::Mbh { a1, a2, b };
        f.validate()?;
        Ok(f)
    }

    pub fn mab(a: Rational, b: Rational) -> Result<Self> {
        let f = H4Family::Mab { a, b };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> std::result::Result<(), Constraint> {
        match self {
            H4Family::Mg0 { g } | H4Family::M0g { g } => {
                if g.var_set() != VarSet::S {
                    Err(Constraint::GInS)
                } else if g.is_zero() {
                    Err(Constraint::GNonZero)
                } else {
                    Ok(())
                }
            }
            H4Family::Mhb { a1, b, .. } | H4Family::Mbh { a1, b, .. } => {
                if a1.is_zero() {
                    Err(Constraint::A1NonZero)
                } else if b.is_zero() {
                    Err(Constraint::BNonZero)
                } else {
                    Ok(())
                }
            }
            H4Family::Mab { a, b } => {
                if a.is_zero() {
                    Err(Constraint::ANonZero)
                } else if b.is_zero() {
                    Err(Constraint::BNonZero)
                } else {
                    Ok(())
                }
            }
            H4Family::M0 => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            H4Family::Mg0 { .. } => "Mg0",
            H4Family::M0g { .. } => "M0g",
            H4Family::Mhb { .. } => "Mhb",
            H4Family::Mbh { .. } => "Mbh",
            H4Family::Mab { .. } => "Mab",
            H4Family::M0 => "M0",
        }
    }

    fn h(a1: &Rational, a2: &Rational) -> Poly {
        Poly::univariate(VarSet::S, Var::S, &[a2.clone(), a1.clone()]).expect("s in Q[s]")
    }

    pub fn p_one(&self) -> Poly {
        match self {
            H4Family::Mg0 { g } => g.clone(),
            H4Family::Mhb { a1, a2, .. } => H4Family::h(a1, a2),
            H4Family::Mbh { b, .. } => Poly::constant(VarSet::S, b.clone()),
            H4Family::Mab { a, .. } => Poly::constant(VarSet::S, a.clone()),
            H4Family::M0g { .. } | H4Family::M0 => Poly::zero(VarSet::S),
        }
    }

    pub fn q_one(&self) -> Poly {
        match self {
            H4Family::M0g { g } => g.clone(),
            H4Family::Mhb { b, .. } => Poly::constant(VarSet::S, b.clone()),
            H4Family::Mbh { a1, a2, .. } => H4Family::h(a1, a2),
            H4Family::Mab { b, .. } => Poly::constant(VarSet::S, b.clone()),
            H4Family::Mg0 { .. } | H4Family::M0 => Poly::zero(VarSet::S),
        }
    }

    /// `r` acts as multiplication by this scalar.
    pub fn r_scalar(&self) -> Rational {
        match self {
            H4Family::Mhb { a1, b, .. } | H4Family::Mbh { a1, b, .. } => -(a1 * b),
            _ => Rational::zero(),
        }
    }

    pub fn r_one(&self) -> Poly {
        Poly::constant(VarSet::S, self.r_scalar())
    }
}

/// Shift applied to the argument before multiplying by `x.1`.
pub fn shift_for(sym: BasisSymbol) -> Shift {
    let m = sym.index();
    match sym.kind() {
        Kind::P => Shift::tau().with(Var::D, -m),
        Kind::Q => Shift::tau().inverse().with(Var::D, -m),
        Kind::R | Kind::S => Shift::by(Var::D, -m),
        Kind::K | Kind::D => Shift::identity(),
        Kind::DVir => Shift::by(Var::D, -m),
    }
}

fn drop_missing(sh: Shift, vars: VarSet) -> Shift {
    [Var::S, Var::D, Var::D0, Var::W0]
        .into_iter()
        .filter(|v| vars.index_of(*v).is_some())
        .fold(Shift::identity(), |acc, v| acc.with(v, sh.offset(v)))
}

/// `shift(v) * value`, the common shape of every action in this crate.
pub fn shifted_times(v: &Poly, sh: &Shift, value: &Poly) -> Result<Poly> {
    if value.is_zero() {
        return Ok(Poly::zero(v.var_set()));
    }
    v.apply_shift(&drop_missing(sh.clone(), v.var_set()))?
        .mul(value)
}

fn expect_ring(v: &Poly, vars: VarSet) -> Result<()> {
    if v.var_set() == vars {
        Ok(())
    } else {
        Err(Error::VariableMismatch(format!(
            "module element lives in {}, got {}",
            vars,
            v.var_set()
        )))
    }
}

fn not_in(sym: BasisSymbol, alg: AlgebraId) -> Error {
    Error::SymbolNotInAlgebra {
        symbol: sym.label(alg),
        algebra: alg.name().to_string(),
    }
}

/// Action of an H4 generator on `Q[s]`.
pub fn act_h4(fam: &H4Family, x: BasisSymbol, v: &Poly) -> Result<Poly> {
    expect_ring(v, VarSet::S)?;
    if !AlgebraId::H4.contains(x) {
        return Err(not_in(x, AlgebraId::H4));
    }
    let value = match x.kind() {
        Kind::P => fam.p_one(),
        Kind::Q => fam.q_one(),
        Kind::R => fam.r_one(),
        _ => Poly::var(VarSet::S, Var::S)?,
    };
    shifted_times(v, &shift_for(x), &value)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum AffineKind {
    AlphaBeta {
        base: H4Family,
        alpha: Rational,
        beta: BTreeMap<i64, Rational>,
    },
    /// `p, q, r` act as zero and `s@k` multiplies by `f_k(s)` after `sigma^k`.
    F { fseq: BTreeMap<i64, Poly> },
}

/// A module over the affine algebra, described on the loop window
/// `[-window, window]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSpec {
    window: i64,
    kind: AffineKind,
}

impl AffineSpec {
    pub fn alpha_beta(
        base: H4Family,
        alpha: Rational,
        beta: BTreeMap<i64, Rational>,
        window: i64,
    ) -> Result<Self> {
        let spec = AffineSpec {
            window,
            kind: AffineKind::AlphaBeta { base, alpha, beta },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn tilde_f(fseq: BTreeMap<i64, Poly>, window: i64) -> Result<Self> {
        let spec = AffineSpec {
            window,
            kind: AffineKind::F { fseq },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn kind(&self) -> &AffineKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            AffineKind::AlphaBeta { .. } => "MTildeAlphaBeta",
            AffineKind::F { .. } => "MTildeF",
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Constraint> {
        let n = self.window;
        if n < 1 {
            return Err(Constraint::WindowPositive);
        }
        let outside = |prefix: &str, k: i64| Constraint::OutsideWindow {
            key: format!("{prefix}.{k}"),
            window: n,
        };
        match &self.kind {
            AffineKind::AlphaBeta { base, alpha, beta } => {
                base.validate()?;
                if alpha.is_zero() {
                    return Err(Constraint::AlphaNonZero);
                }
                if let Some(&k) = beta.keys().find(|k| k.abs() > n) {
                    return Err(outside("beta", k));
                }
                if let Some(k) = (-n..=n).find(|k| !beta.contains_key(k)) {
                    return Err(Constraint::MissingBeta(k));
                }
                if !beta[&0].is_zero() {
                    return Err(Constraint::BetaZeroAtOrigin);
                }
            }
            AffineKind::F { fseq } => {
                if let Some(&k) = fseq.keys().find(|k| k.abs() > n) {
                    return Err(outside("f", k));
                }
                if let Some(k) = (-n..=n).find(|k| !fseq.contains_key(k)) {
                    return Err(Constraint::MissingF(k));
                }
                if let Some((&k, _)) = fseq.iter().find(|(_, f)| f.var_set() != VarSet::S) {
                    return Err(Constraint::FInS(k));
                }
                if fseq[&0] != Poly::var(VarSet::S, Var::S).expect("s") {
                    return Err(Constraint::FZeroIsS);
                }
            }
        }
        Ok(())
    }

    /// `x@m . 1` for a loop generator.
    fn loop_value(&self, x: BasisSymbol) -> Poly {
        let m = x.index();
        let lift = |p: Poly| p.convert(VarSet::SD).expect("Q[s] embeds in Q[s,d]");
        match &self.kind {
            AffineKind::AlphaBeta { base, alpha, beta } => {
                let am = rat_pow(alpha, m);
                match x.kind() {
                    Kind::P => lift(base.p_one().scale(&am)),
                    Kind::Q => lift(base.q_one().scale(&am)),
                    Kind::R => lift(base.r_one().scale(&am)),
                    _ => Poly::univariate(VarSet::SD, Var::S, &[beta[&m].clone(), am])
                        .expect("s in Q[s,d]"),
                }
            }
            AffineKind::F { fseq } => match x.kind() {
                Kind::S => lift(fseq[&m].clone()),
                _ => Poly::zero(VarSet::SD),
            },
        }
    }

    pub fn f_k(&self, k: i64) -> Option<Poly> {
        (k.abs() <= self.window).then(|| self.loop_value(BasisSymbol::s(k)))
    }
}

fn check_window(x: BasisSymbol, window: i64) -> Result<()> {
    if x.index().abs() > window {
        Err(Error::WindowExceeded {
            index: x.index(),
            window,
        })
    } else {
        Ok(())
    }
}

/// Action of an affine generator on `Q[s, d]`.
pub fn act_affine(spec: &AffineSpec, x: BasisSymbol, v: &Poly) -> Result<Poly> {
    expect_ring(v, VarSet::SD)?;
    match x.kind() {
        Kind::K => Ok(Poly::zero(VarSet::SD)),
        Kind::D => v.mul(&Poly::var(VarSet::SD, Var::D)?),
        k if k.is_h4() => {
            check_window(x, spec.window)?;
            shifted_times(v, &shift_for(x), &spec.loop_value(x))
        }
        _ => Err(not_in(x, AlgebraId::AffineH4)),
    }
}

/// `M(lambda, f)` over Vir(0,0) on `Q[d0, w0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vir00Spec {
    lambda: Rational,
    fpoly: Poly,
}

impl Vir00Spec {
    pub fn new(lambda: Rational, fpoly: Poly) -> Result<Self> {
        let spec = Vir00Spec { lambda, fpoly };
        spec.validate()?;
        Ok(spec)
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn fpoly(&self) -> &Poly {
        &self.fpoly
    }

    pub fn validate(&self) -> std::result::Result<(), Constraint> {
        if self.lambda.is_zero() {
            return Err(Constraint::LambdaNonZero);
        }
        if self.fpoly.var_set() != VarSet::D0W0 || !self.fpoly.is_univariate_in(Var::W0) {
            return Err(Constraint::FpolyInW0);
        }
        Ok(())
    }

    fn value(&self, x: BasisSymbol) -> Result<Poly> {
        let m = x.index();
        let lm = rat_pow(&self.lambda, m);
        Ok(match x.kind() {
            Kind::DVir => Poly::var(VarSet::D0W0, Var::D0)?
                .add(&self.fpoly.scale(&rat(m)))?
                .scale(&lm),
            _ => Poly::var(VarSet::D0W0, Var::W0)?.scale(&lm),
        })
    }
}

pub fn act_vir00(spec: &Vir00Spec, x: BasisSymbol, v: &Poly) -> Result<Poly> {
    expect_ring(v, VarSet::D0W0)?;
    match x.kind() {
        Kind::K => Ok(Poly::zero(VarSet::D0W0)),
        Kind::DVir | Kind::S => shifted_times(v, &Shift::by(Var::D0, -x.index()), &spec.value(x)?),
        _ => Err(not_in(x, AlgebraId::Vir00)),
    }
}

/// Affine-Virasoro module: an `MTildeAlphaBeta` loop part with `beta = 0`
/// and `dvir@n` acting by `v -> sigma^n(v) (alpha^n d + n alpha^n lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffVirSpec {
    base: AffineSpec,
    lambda: Rational,
}

impl AffVirSpec {
    pub fn new(base: AffineSpec, lambda: Rational) -> Result<Self> {
        let spec = AffVirSpec { base, lambda };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds the loop part from its H4 base with `beta = 0` on the window.
    pub fn from_base(
        base: H4Family,
        alpha: Rational,
        lambda: Rational,
        window: i64,
    ) -> Result<Self> {
        let beta = (-window..=window).map(|k| (k, Rational::zero())).collect();
        AffVirSpec::new(AffineSpec::alpha_beta(base, alpha, beta, window)?, lambda)
    }

    pub fn base(&self) -> &AffineSpec {
        &self.base
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn alpha(&self) -> &Rational {
        match &self.base.kind {
            AffineKind::AlphaBeta { alpha, .. } => alpha,
            AffineKind::F { .. } => unreachable!("validated"),
        }
    }

    pub fn h4_base(&self) -> &H4Family {
        match &self.base.kind {
            AffineKind::AlphaBeta { base, .. } => base,
            AffineKind::F { .. } => unreachable!("validated"),
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Constraint> {
        self.base.validate()?;
        match &self.base.kind {
            AffineKind::F { .. } => Err(Constraint::AffVirNeedsAlphaBeta),
            AffineKind::AlphaBeta { beta, .. } => match beta.iter().find(|(_, b)| !b.is_zero()) {
                Some((&k, _)) => Err(Constraint::BetaVanishes(k)),
                None => Ok(()),
            },
        }
    }

    /// `dvir@n . 1 = alpha^n d + n alpha^n lambda`.
    pub fn dvir_value(&self, n: i64) -> Poly {
        let an = rat_pow(self.alpha(), n);
        let mu = &an * rat(n) * &self.lambda;
        Poly::univariate(VarSet::SD, Var::D, &[mu, an]).expect("d in Q[s,d]")
    }
}

pub fn act_affvir(spec: &AffVirSpec, x: BasisSymbol, v: &Poly) -> Result<Poly> {
    expect_ring(v, VarSet::SD)?;
    match x.kind() {
        Kind::DVir => shifted_times(v, &shift_for(x), &spec.dvir_value(x.index())),
        Kind::D => Err(not_in(x, AlgebraId::AffineVirasoroH4)),
        _ => act_affine(&spec.base, x, v),
    }
}

/// Anything that can be checked against the structure constants.
pub trait Representation {
    fn algebra(&self) -> AlgebraId;

    fn var_set(&self) -> VarSet;

    /// Loop window of the `p, q, r, s` generators, if bounded.
    fn loop_window(&self) -> Option<i64>;

    fn act(&self, x: BasisSymbol, v: &Poly) -> Result<Poly>;

    /// True iff `act(x, _)` is defined.
    fn evaluable(&self, x: BasisSymbol) -> bool {
        if !self.algebra().contains(x) {
            return false;
        }
        match (x.kind().is_h4(), self.loop_window(), self.algebra()) {
            (true, Some(n), alg) if alg != AlgebraId::Vir00 => x.index().abs() <= n,
            _ => true,
        }
    }

    fn act_element(&self, x: &LieElement, v: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero(self.var_set());
        for (sym, c) in x.terms() {
            acc = acc.add(&self.act(*sym, v)?.scale(c))?;
        }
        Ok(acc)
    }
}

/// A validated module of any family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    H4(H4Family),
    Affine(AffineSpec),
    Vir00(Vir00Spec),
    AffVir(AffVirSpec),
}

impl ModuleSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            ModuleSpec::H4(f) => f.name(),
            ModuleSpec::Affine(a) => a.name(),
            ModuleSpec::Vir00(_) => "Vir00",
            ModuleSpec::AffVir(_) => "AffVir",
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Constraint> {
        match self {
            ModuleSpec::H4(f) => f.validate(),
            ModuleSpec::Affine(a) => a.validate(),
            ModuleSpec::Vir00(v) => v.validate(),
            ModuleSpec::AffVir(v) => v.validate(),
        }
    }

    /// Loop window stored in the spec, if any.
    pub fn window(&self) -> Option<i64> {
        match self {
            ModuleSpec::Affine(a) => Some(a.window),
            ModuleSpec::AffVir(v) => Some(v.base.window),
            _ => None,
        }
    }
}

impl Representation for ModuleSpec {
    fn algebra(&self) -> AlgebraId {
        match self {
            ModuleSpec::H4(_) => AlgebraId::H4,
            ModuleSpec::Affine(_) => AlgebraId::AffineH4,
            ModuleSpec::Vir00(_) => AlgebraId::Vir00,
            ModuleSpec::AffVir(_) => AlgebraId::AffineVirasoroH4,
        }
    }

    fn var_set(&self) -> VarSet {
        match self {
            ModuleSpec::H4(_) => VarSet::S,
            ModuleSpec::Affine(_) | ModuleSpec::AffVir(_) => VarSet::SD,
            ModuleSpec::Vir00(_) => VarSet::D0W0,
        }
    }

    fn loop_window(&self) -> Option<i64> {
        self.window()
    }

    fn act(&self, x: BasisSymbol, v: &Poly) -> Result<Poly> {
        match self {
            ModuleSpec::H4(f) => act_h4(f, x, v),
            ModuleSpec::Affine(a) => act_affine(a, x, v),
            ModuleSpec::Vir00(s) => act_vir00(s, x, v),
            ModuleSpec::AffVir(s) => act_affvir(s, x, v),
        }
    }
}
