//! From the values of the generators on `1` back to a module family.
//!
//! [`classify`] recovers the family and its parameters, or names the first
//! necessary condition the data breaks. Every accepted datum regenerates
//! exactly from the returned spec; see [`actions_of`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{rat_pow, Poly, Rational, Shift, Var, VarSet};
use crate::liealg::{eta, AlgebraId, BasisSymbol, Kind, LieElement};
use crate::modfam::{
    act_h4, shift_for, shifted_times, AffVirSpec, AffineKind, AffineSpec, H4Family, ModuleSpec,
    Representation, Vir00Spec,
};

/// Window used for modules whose generators are unbounded (Vir00).
pub const DEFAULT_DATA_WINDOW: i64 = 2;

/// Value of each generator on `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    pub algebra: AlgebraId,
    pub window: i64,
    pub assignments: BTreeMap<BasisSymbol, Poly>,
}

impl ActionData {
    pub fn var_set(&self) -> VarSet {
        ring_of(self.algebra)
    }

    pub fn get(&self, sym: BasisSymbol) -> Result<&Poly> {
        self.assignments.get(&sym).ok_or_else(|| {
            Error::MalformedData(format!("missing value for {}", sym.label(self.algebra)))
        })
    }

    pub fn set(&mut self, sym: BasisSymbol, value: Poly) {
        self.assignments.insert(sym, value);
    }

    /// Checks that exactly the generators of the window are present and that
    /// every value lives in the algebra's ring.
    pub fn check_shape(&self) -> Result<()> {
        let window = match self.algebra {
            AlgebraId::H4 => 0,
            _ if self.window < 1 => {
                return Err(Error::MalformedData(format!(
                    "window must be at least 1 for {}, got {}",
                    self.algebra, self.window
                )))
            }
            _ => self.window,
        };
        let gens = self.algebra.generators(window);
        for g in &gens {
            let v = self.get(*g)?;
            if v.var_set() != self.var_set() {
                return Err(Error::MalformedData(format!(
                    "{} lives in {}, expected {}",
                    g.label(self.algebra),
                    v.var_set(),
                    self.var_set()
                )));
            }
        }
        if let Some(extra) = self.assignments.keys().find(|s| !gens.contains(s)) {
            return Err(Error::MalformedData(format!(
                "{} is outside the generators of {} at window {}",
                extra.label(self.algebra),
                self.algebra,
                window
            )));
        }
        Ok(())
    }
}

pub fn ring_of(alg: AlgebraId) -> VarSet {
    match alg {
        AlgebraId::H4 => VarSet::S,
        AlgebraId::AffineH4 | AlgebraId::AffineVirasoroH4 => VarSet::SD,
        AlgebraId::Vir00 => VarSet::D0W0,
    }
}

/// Generator values of `spec` on `1`. H4 modules carry window 0, affine
/// modules their own window and Vir00 modules [`DEFAULT_DATA_WINDOW`].
pub fn actions_of(spec: &ModuleSpec) -> Result<ActionData> {
    let window = match spec {
        ModuleSpec::H4(_) => 0,
        ModuleSpec::Vir00(_) => DEFAULT_DATA_WINDOW,
        other => other.window().expect("affine specs carry a window"),
    };
    actions_of_window(spec, window)
}

pub fn actions_of_window(spec: &ModuleSpec, window: i64) -> Result<ActionData> {
    let alg = spec.algebra();
    let one = Poly::one(spec.var_set());
    let mut assignments = BTreeMap::new();
    for g in alg.generators(window) {
        assignments.insert(g, spec.act(g, &one)?);
    }
    Ok(ActionData {
        algebra: alg,
        window,
        assignments,
    })
}

/// Action data read as a module: `x.v = shift_x(v) * (x.1)`, with the shift
/// every family in this crate uses for `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataModule {
    data: ActionData,
}

impl DataModule {
    pub fn new(data: ActionData) -> Result<Self> {
        data.check_shape()?;
        Ok(DataModule { data })
    }

    pub fn data(&self) -> &ActionData {
        &self.data
    }
}

impl Representation for DataModule {
    fn algebra(&self) -> AlgebraId {
        self.data.algebra
    }

    fn var_set(&self) -> VarSet {
        self.data.var_set()
    }

    fn loop_window(&self) -> Option<i64> {
        match self.data.algebra {
            AlgebraId::H4 => None,
            _ => Some(self.data.window),
        }
    }

    fn evaluable(&self, x: BasisSymbol) -> bool {
        self.data.assignments.contains_key(&x)
    }

    fn act(&self, x: BasisSymbol, v: &Poly) -> Result<Poly> {
        let value = self.data.get(x)?;
        let sh = if self.data.algebra == AlgebraId::Vir00 {
            Shift::by(Var::D0, -x.index())
        } else {
            shift_for(x)
        };
        if v.var_set() != self.var_set() {
            return Err(Error::VariableMismatch(format!(
                "module element lives in {}, got {}",
                self.var_set(),
                v.var_set()
            )));
        }
        shifted_times(v, &sh, value)
    }
}

/// A necessary condition broken by rejected data. The display form is the
/// condition itself followed by the offending values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CentralNotScalar {
        found: String,
    },
    ZeroForcesCentralZero {
        found: String,
    },
    DegreeDichotomy {
        deg_p: u32,
        deg_q: u32,
    },
    CentralMismatch {
        expected: String,
        found: String,
    },
    FkDegreeD {
        k: i64,
    },
    FkDegreeS {
        k: i64,
    },
    AlphaInverse {
        alpha: String,
        alpha_minus_one: String,
    },
    AlphaPower {
        k: i64,
    },
    LoopScaling {
        symbol: String,
    },
    CentralActsNonzero,
    G0DegreeD {
        symbol: String,
    },
    LoopVanishing {
        symbol: String,
    },
    Base(Box<Violation>),
    LambdaZero,
    BetaNonZero {
        k: i64,
    },
    Regeneration {
        symbol: String,
    },
}

impl Violation {
    /// The condition alone, without the offending values.
    pub fn anchor(&self) -> &'static str {
        match self {
            Violation::CentralNotScalar { .. } => "r.1 in Q",
            Violation::ZeroForcesCentralZero { .. } => "p.1 = 0 or q.1 = 0 => r.1 = 0",
            Violation::DegreeDichotomy { .. } => {
                "deg(tau^-1(p.1) q.1) = 1 or p.1, q.1 non-zero constants"
            }
            Violation::CentralMismatch { .. } => "r.1 = -a1*b for (h,b), (b,h); r.1 = 0 for (a,b)",
            Violation::FkDegreeD { .. } => "deg_d(f_k) = 0",
            Violation::FkDegreeS { .. } => "deg_s(f_k) <= 1",
            Violation::AlphaInverse { .. } => "alpha_{-1} = alpha^{-1}",
            Violation::AlphaPower { .. } => "alpha_k = alpha^k",
            Violation::LoopScaling { .. } => "x@k.1 = alpha^k x.1",
            Violation::CentralActsNonzero => "k.1 = 0",
            Violation::G0DegreeD { .. } => "deg_d(g_0) = 0",
            Violation::LoopVanishing { .. } => "p.1 = q.1 = r.1 = 0 => x@k.1 = 0 for x in {p,q,r}",
            Violation::Base(inner) => inner.anchor(),
            Violation::LambdaZero => "lambda != 0",
            Violation::BetaNonZero { .. } => "beta_k = 0",
            Violation::Regeneration { .. } => {
                "x.1 agrees with the module rebuilt from the recovered parameters"
            }
        }
    }

    /// Innermost violation, looking through [`Violation::Base`].
    pub fn root(&self) -> &Violation {
        match self {
            Violation::Base(inner) => inner.root(),
            other => other,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let anchor = self.anchor();
        match self {
            Violation::CentralNotScalar { found } => write!(f, "{anchor} violated: r.1 = {found}"),
            Violation::ZeroForcesCentralZero { found } => {
                write!(f, "{anchor} violated: r.1 = {found}")
            }
            Violation::DegreeDichotomy { deg_p, deg_q } => {
                write!(f, "degree pair ({deg_p},{deg_q}) violates {anchor}")
            }
            Violation::CentralMismatch { expected, found } => {
                write!(
                    f,
                    "{anchor} violated: expected r.1 = {expected}, found {found}"
                )
            }
            Violation::FkDegreeD { k }
            | Violation::FkDegreeS { k }
            | Violation::AlphaPower { k }
            | Violation::BetaNonZero { k } => write!(f, "{anchor} violated at k = {k}"),
            Violation::AlphaInverse {
                alpha,
                alpha_minus_one,
            } => write!(
                f,
                "{anchor} violated: alpha = {alpha}, alpha_{{-1}} = {alpha_minus_one}"
            ),
            Violation::LoopScaling { symbol }
            | Violation::G0DegreeD { symbol }
            | Violation::LoopVanishing { symbol }
            | Violation::Regeneration { symbol } => write!(f, "{anchor} violated for {symbol}"),
            Violation::CentralActsNonzero | Violation::LambdaZero => {
                write!(f, "{anchor} violated")
            }
            Violation::Base(inner) => write!(f, "base module: {inner}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Outcome {
    Classified(ModuleSpec),
    Rejected(Violation),
}

impl Outcome {
    pub fn spec(&self) -> Option<&ModuleSpec> {
        match self {
            Outcome::Classified(s) => Some(s),
            Outcome::Rejected(_) => None,
        }
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Outcome::Classified(_) => None,
            Outcome::Rejected(v) => Some(v),
        }
    }
}

pub fn classify(data: &ActionData) -> Result<Outcome> {
    match data.algebra {
        AlgebraId::H4 => classify_h4(data),
        AlgebraId::AffineH4 => classify_affine(data),
        AlgebraId::Vir00 => classify_vir00(data),
        AlgebraId::AffineVirasoroH4 => classify_affvir(data),
    }
}

fn degree(p: &Poly, v: Var) -> u32 {
    p.degree_in(v).finite().unwrap_or(0)
}

/// Decision tree over `(p.1, q.1, r.1)` in `Q[s]`.
fn classify_base(
    p1: &Poly,
    q1: &Poly,
    r1: &Poly,
) -> Result<std::result::Result<H4Family, Violation>> {
    use std::result::Result::{Err as Rej, Ok as Acc};
    let r = match r1.constant_value() {
        Some(c) => c,
        None => {
            return Ok(Rej(Violation::CentralNotScalar {
                found: r1.to_string(),
            }))
        }
    };
    if p1.is_zero() || q1.is_zero() {
        if !r.is_zero() {
            return Ok(Rej(Violation::ZeroForcesCentralZero {
                found: r.to_string(),
            }));
        }
        return Ok(Acc(match (p1.is_zero(), q1.is_zero()) {
            (true, true) => H4Family::M0,
            (false, _) => H4Family::mg0(p1.clone())?,
            (true, false) => H4Family::m0g(q1.clone())?,
        }));
    }
    let linear = |h: &Poly| (h.coefficient(&[1]), h.constant_term());
    let (family, expected) = match (degree(p1, Var::S), degree(q1, Var::S)) {
        (0, 0) => {
            let (a, b) = (p1.constant_term(), q1.constant_term());
            (H4Family::mab(a, b)?, Rational::zero())
        }
        (1, 0) => {
            let (a1, a2) = linear(p1);
            let b = q1.constant_term();
            let expected = -(&a1 * &b);
            (H4Family::mhb(a1, a2, b)?, expected)
        }
        (0, 1) => {
            let (a1, a2) = linear(q1);
            let b = p1.constant_term();
            let expected = -(&a1 * &b);
            (H4Family::mbh(a1, a2, b)?, expected)
        }
        (deg_p, deg_q) => return Ok(Rej(Violation::DegreeDichotomy { deg_p, deg_q })),
    };
    if r != expected {
        return Ok(Rej(Violation::CentralMismatch {
            expected: expected.to_string(),
            found: r.to_string(),
        }));
    }
    Ok(Acc(family))
}

pub fn classify_h4(data: &ActionData) -> Result<Outcome> {
    if data.algebra != AlgebraId::H4 {
        return Err(Error::MalformedData(format!(
            "expected H4 data, got {}",
            data.algebra
        )));
    }
    data.check_shape()?;
    let s = Poly::var(VarSet::S, Var::S)?;
    if data.get(BasisSymbol::s(0))? != &s {
        return Err(Error::MalformedData("s.1 must be s".into()));
    }
    let p1 = data.get(BasisSymbol::p(0))?;
    let q1 = data.get(BasisSymbol::q(0))?;
    let r1 = data.get(BasisSymbol::r(0))?;
    Ok(match classify_base(p1, q1, r1)? {
        Ok(f) => Outcome::Classified(ModuleSpec::H4(f)),
        Err(v) => Outcome::Rejected(v),
    })
}

fn check_affine_frame(data: &ActionData) -> Result<()> {
    data.check_shape()?;
    let s = Poly::var(VarSet::SD, Var::S)?;
    if data.get(BasisSymbol::s(0))? != &s {
        return Err(Error::MalformedData("s.1 must be s".into()));
    }
    Ok(())
}

/// Loop part of affine or affine-Virasoro data.
fn classify_loops(data: &ActionData) -> Result<std::result::Result<AffineSpec, Violation>> {
    use std::result::Result::{Err as Rej, Ok as Acc};
    let n = data.window;
    let alg = data.algebra;
    let label = |s: BasisSymbol| s.label(alg);
    let val = |s: BasisSymbol| data.get(s);

    if !val(BasisSymbol::k())?.is_zero() {
        return Ok(Rej(Violation::CentralActsNonzero));
    }
    for k in -n..=n {
        if degree(val(BasisSymbol::s(k))?, Var::D) > 0 {
            return Ok(Rej(Violation::FkDegreeD { k }));
        }
    }
    let to_s = |p: &Poly| p.convert(VarSet::S);
    let base_zero = [BasisSymbol::p(0), BasisSymbol::q(0), BasisSymbol::r(0)]
        .iter()
        .map(|s| val(*s).map(Poly::is_zero))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|z| z);

    if base_zero {
        for kind in [Kind::P, Kind::Q, Kind::R] {
            for k in -n..=n {
                let sym = BasisSymbol::loop_symbol(kind, k).expect("loop kind");
                if !val(sym)?.is_zero() {
                    return Ok(Rej(Violation::LoopVanishing { symbol: label(sym) }));
                }
            }
        }
        let fseq = (-n..=n)
            .map(|k| Ok((k, to_s(val(BasisSymbol::s(k))?)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        return Ok(Acc(AffineSpec::tilde_f(fseq, n)?));
    }

    for k in -n..=n {
        if degree(val(BasisSymbol::s(k))?, Var::S) > 1 {
            return Ok(Rej(Violation::FkDegreeS { k }));
        }
    }
    let s_coeff = |k: i64| -> Result<Rational> { Ok(val(BasisSymbol::s(k))?.coefficient(&[1, 0])) };
    let alpha = s_coeff(1)?;
    let alpha_m1 = s_coeff(-1)?;
    if &alpha * &alpha_m1 != Rational::one() {
        return Ok(Rej(Violation::AlphaInverse {
            alpha: alpha.to_string(),
            alpha_minus_one: alpha_m1.to_string(),
        }));
    }
    for k in -n..=n {
        if s_coeff(k)? != rat_pow(&alpha, k) {
            return Ok(Rej(Violation::AlphaPower { k }));
        }
    }
    for kind in [Kind::P, Kind::Q, Kind::R] {
        let base = val(BasisSymbol::loop_symbol(kind, 0).expect("loop kind"))?;
        if degree(base, Var::D) > 0 {
            return Ok(Rej(Violation::G0DegreeD {
                symbol: label(BasisSymbol::loop_symbol(kind, 0).expect("loop kind")),
            }));
        }
        for k in -n..=n {
            let sym = BasisSymbol::loop_symbol(kind, k).expect("loop kind");
            if val(sym)? != &base.scale(&rat_pow(&alpha, k)) {
                return Ok(Rej(Violation::LoopScaling { symbol: label(sym) }));
            }
        }
    }
    let base = match classify_base(
        &to_s(val(BasisSymbol::p(0))?)?,
        &to_s(val(BasisSymbol::q(0))?)?,
        &to_s(val(BasisSymbol::r(0))?)?,
    )? {
        Ok(f) => f,
        Err(v) => return Ok(Rej(Violation::Base(Box::new(v)))),
    };
    let beta = (-n..=n)
        .map(|k| Ok((k, val(BasisSymbol::s(k))?.constant_term())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Acc(AffineSpec::alpha_beta(base, alpha, beta, n)?))
}

pub fn classify_affine(data: &ActionData) -> Result<Outcome> {
    if data.algebra != AlgebraId::AffineH4 {
        return Err(Error::MalformedData(format!(
            "expected AffineH4 data, got {}",
            data.algebra
        )));
    }
    check_affine_frame(data)?;
    if data.get(BasisSymbol::d())? != &Poly::var(VarSet::SD, Var::D)? {
        return Err(Error::MalformedData("d.1 must be d".into()));
    }
    Ok(match classify_loops(data)? {
        Ok(spec) => Outcome::Classified(ModuleSpec::Affine(spec)),
        Err(v) => Outcome::Rejected(v),
    })
}

/// First generator whose value differs from the one `spec` produces.
fn regeneration_mismatch(spec: &ModuleSpec, data: &ActionData) -> Result<Option<Violation>> {
    let regenerated = actions_of_window(spec, data.window)?;
    Ok(data
        .assignments
        .iter()
        .find(|(sym, v)| regenerated.assignments.get(sym) != Some(v))
        .map(|(sym, _)| Violation::Regeneration {
            symbol: sym.label(data.algebra),
        }))
}

/// Recovers `M(lambda, f)` from `dvir@1.1 = lambda (d0 + f(w0))` and checks
/// every other generator against it.
pub fn classify_vir00(data: &ActionData) -> Result<Outcome> {
    if data.algebra != AlgebraId::Vir00 {
        return Err(Error::MalformedData(format!(
            "expected Vir00 data, got {}",
            data.algebra
        )));
    }
    data.check_shape()?;
    let d1 = data.get(BasisSymbol::dvir(1))?;
    let lambda = d1.coefficient(&[1, 0]);
    if lambda.is_zero() {
        return Ok(Outcome::Rejected(Violation::LambdaZero));
    }
    let d0 = Poly::var(VarSet::D0W0, Var::D0)?;
    let f = d1.scale(&lambda.recip()).sub(&d0)?;
    let spec = match Vir00Spec::new(lambda, f) {
        Ok(s) => ModuleSpec::Vir00(s),
        Err(_) => {
            return Ok(Outcome::Rejected(Violation::Regeneration {
                symbol: BasisSymbol::dvir(1).label(AlgebraId::Vir00),
            }))
        }
    };
    Ok(match regeneration_mismatch(&spec, data)? {
        Some(v) => Outcome::Rejected(v),
        None => Outcome::Classified(spec),
    })
}

/// `alpha` of an `f` sequence of the form `f_k = alpha^k s`, the loop part
/// of an affine-Virasoro module over `M0`.
fn m0_alpha(fseq: &BTreeMap<i64, Poly>) -> std::result::Result<Rational, Violation> {
    let s_coeff = |k: i64| {
        fseq.get(&k)
            .map(|f| f.coefficient(&[1]))
            .unwrap_or_default()
    };
    let alpha = s_coeff(1);
    let alpha_m1 = s_coeff(-1);
    if &alpha * &alpha_m1 != Rational::one() {
        return Err(Violation::AlphaInverse {
            alpha: alpha.to_string(),
            alpha_minus_one: alpha_m1.to_string(),
        });
    }
    for (&k, f) in fseq {
        if degree(f, Var::S) > 1 {
            return Err(Violation::FkDegreeS { k });
        }
        if s_coeff(k) != rat_pow(&alpha, k) {
            return Err(Violation::AlphaPower { k });
        }
        if !f.constant_term().is_zero() {
            return Err(Violation::BetaNonZero { k });
        }
    }
    Ok(alpha)
}

/// Loop part as affine data (with `d.1 := dvir@0.1`), then
/// `lambda` from `dvir@1.1 = alpha d + alpha lambda`.
pub fn classify_affvir(data: &ActionData) -> Result<Outcome> {
    if data.algebra != AlgebraId::AffineVirasoroH4 {
        return Err(Error::MalformedData(format!(
            "expected AffineVirasoroH4 data, got {}",
            data.algebra
        )));
    }
    check_affine_frame(data)?;
    if data.get(BasisSymbol::dvir(0))? != &Poly::var(VarSet::SD, Var::D)? {
        return Err(Error::MalformedData("dvir.1 must be d".into()));
    }
    let loops = match classify_loops(data)? {
        Ok(spec) => spec,
        Err(v) => return Ok(Outcome::Rejected(v)),
    };
    let (base, alpha) = match loops.kind() {
        AffineKind::AlphaBeta { base, alpha, beta } => {
            if let Some((&k, _)) = beta.iter().find(|(_, b)| !b.is_zero()) {
                return Ok(Outcome::Rejected(Violation::BetaNonZero { k }));
            }
            (base.clone(), alpha.clone())
        }
        AffineKind::F { fseq } => match m0_alpha(fseq) {
            Ok(alpha) => (H4Family::M0, alpha),
            Err(v) => return Ok(Outcome::Rejected(v)),
        },
    };
    let lambda = data.get(BasisSymbol::dvir(1))?.constant_term() / &alpha;
    let spec = ModuleSpec::AffVir(AffVirSpec::from_base(base, alpha, lambda, data.window)?);
    Ok(match regeneration_mismatch(&spec, data)? {
        Some(v) => Outcome::Rejected(v),
        None => Outcome::Classified(spec),
    })
}

/// Image of `fam` under the twist by `p -> -q, q -> p, r -> r, s -> -s`:
/// `Mg0(g(s)) -> M0g(g(-s))` and `Mhb(h(s), b) -> Mbh(-b, h(-s))`.
pub fn twist(fam: &H4Family) -> Result<H4Family> {
    match fam {
        H4Family::Mg0 { g } => H4Family::m0g(g.negate_var(Var::S)?),
        H4Family::Mhb { a1, a2, b } => H4Family::mbh(-a1, a2.clone(), -b),
        other => Err(Error::UnsupportedTwist(other.name().to_string())),
    }
}

/// `x` acting on the twisted module: `eta(x)` acting on the original.
pub fn act_twisted(fam: &H4Family, x: BasisSymbol, v: &Poly) -> Result<Poly> {
    let image = eta(&LieElement::basis(x))?;
    let mut acc = Poly::zero(VarSet::S);
    for (sym, c) in image.terms() {
        acc = acc.add(&act_h4(fam, *sym, v)?.scale(c))?;
    }
    Ok(acc)
}

/// Isomorphism of two `MTildeAlphaBeta` modules: equal base parameters,
/// `alpha` and `beta`.
pub fn iso_check(a: &AffineSpec, b: &AffineSpec) -> Result<bool> {
    match (a.kind(), b.kind()) {
        (
            AffineKind::AlphaBeta {
                base: b1,
                alpha: a1,
                beta: be1,
            },
            AffineKind::AlphaBeta {
                base: b2,
                alpha: a2,
                beta: be2,
            },
        ) => {
            if a.window() != b.window() {
                return Err(Error::WindowMismatch(a.window(), b.window()));
            }
            Ok(b1 == b2 && a1 == a2 && be1 == be2)
        }
        _ => Err(Error::IncomparableVariants),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};

    fn s() -> Poly {
        Poly::var(VarSet::S, Var::S).unwrap()
    }

    fn cs(n: i64) -> Poly {
        Poly::constant(VarSet::S, rat(n))
    }

    fn h4_data(p: Poly, q: Poly, r: Poly) -> ActionData {
        let assignments = [
            (BasisSymbol::p(0), p),
            (BasisSymbol::q(0), q),
            (BasisSymbol::r(0), r),
            (BasisSymbol::s(0), s()),
        ]
        .into_iter()
        .collect();
        ActionData {
            algebra: AlgebraId::H4,
            window: 0,
            assignments,
        }
    }

    fn mhb101() -> H4Family {
        H4Family::mhb(rat(1), rat(0), rat(1)).unwrap()
    }

    fn affine_example() -> ModuleSpec {
        let beta = [(-1, rat(0)), (0, rat(0)), (1, rat(5))]
            .into_iter()
            .collect();
        ModuleSpec::Affine(AffineSpec::alpha_beta(mhb101(), rat(2), beta, 1).unwrap())
    }

    #[test]
    fn h4_examples() {
        let d = h4_data(s().add(&cs(2)).unwrap(), cs(3), cs(-3));
        assert_eq!(
            classify(&d).unwrap(),
            Outcome::Classified(ModuleSpec::H4(
                H4Family::mhb(rat(1), rat(2), rat(3)).unwrap()
            ))
        );
        let z = Poly::zero(VarSet::S);
        let d = h4_data(z.clone(), z.clone(), z);
        assert_eq!(
            classify(&d).unwrap(),
            Outcome::Classified(ModuleSpec::H4(H4Family::M0))
        );
        let d = h4_data(s().pow(2), cs(1), Poly::zero(VarSet::S));
        let out = classify(&d).unwrap();
        assert_eq!(
            out.violation(),
            Some(&Violation::DegreeDichotomy { deg_p: 2, deg_q: 0 })
        );
        assert!(out
            .violation()
            .unwrap()
            .to_string()
            .starts_with("degree pair (2,0)"));
    }

    #[test]
    fn h4_rejections() {
        let d = h4_data(s(), Poly::zero(VarSet::S), cs(1));
        assert!(matches!(
            classify(&d).unwrap().violation(),
            Some(Violation::ZeroForcesCentralZero { .. })
        ));
        let d = h4_data(s(), cs(1), s());
        assert!(matches!(
            classify(&d).unwrap().violation(),
            Some(Violation::CentralNotScalar { .. })
        ));
        let d = h4_data(s(), cs(1), Poly::zero(VarSet::S));
        assert!(matches!(
            classify(&d).unwrap().violation(),
            Some(Violation::CentralMismatch { .. })
        ));
    }

    #[test]
    fn h4_malformed() {
        let mut d = h4_data(s(), cs(1), cs(-1));
        d.set(BasisSymbol::s(0), cs(1));
        assert!(matches!(classify(&d), Err(Error::MalformedData(_))));
        let mut d = h4_data(s(), cs(1), cs(-1));
        d.assignments.remove(&BasisSymbol::q(0));
        assert!(matches!(classify(&d), Err(Error::MalformedData(_))));
        let mut d = h4_data(s(), cs(1), cs(-1));
        d.set(BasisSymbol::p(0), Poly::one(VarSet::SD));
        assert!(matches!(classify(&d), Err(Error::MalformedData(_))));
    }

    #[test]
    fn affine_round_trip_and_rejections() {
        let spec = affine_example();
        let data = actions_of(&spec).unwrap();
        assert_eq!(classify(&data).unwrap(), Outcome::Classified(spec));

        let sd = |v| Poly::var(VarSet::SD, v).unwrap();
        let mut bad = data.clone();
        bad.set(BasisSymbol::s(1), sd(Var::S).mul(&sd(Var::D)).unwrap());
        assert_eq!(
            classify(&bad).unwrap().violation(),
            Some(&Violation::FkDegreeD { k: 1 })
        );

        let mut bad = data.clone();
        bad.set(BasisSymbol::s(1), sd(Var::S).scale(&rat(2)));
        bad.set(BasisSymbol::s(-1), sd(Var::S).scale(&rat(3)));
        assert!(matches!(
            classify(&bad).unwrap().violation(),
            Some(Violation::AlphaInverse { .. })
        ));
        assert_eq!(
            classify(&bad).unwrap().violation().unwrap().anchor(),
            "alpha_{-1} = alpha^{-1}"
        );
    }

    #[test]
    fn twists() {
        let g = s().pow(2).add(&s()).unwrap();
        assert_eq!(
            twist(&H4Family::mg0(g).unwrap()).unwrap(),
            H4Family::m0g(s().pow(2).sub(&s()).unwrap()).unwrap()
        );
        assert_eq!(
            twist(&H4Family::mhb(rat(1), rat(0), rat(2)).unwrap()).unwrap(),
            H4Family::mbh(rat(-1), rat(0), rat(-2)).unwrap()
        );
        assert_eq!(
            twist(&H4Family::mg0(cs(5)).unwrap()).unwrap(),
            H4Family::m0g(cs(5)).unwrap()
        );
        assert!(matches!(
            twist(&H4Family::M0),
            Err(Error::UnsupportedTwist(_))
        ));
    }

    fn ab(base: H4Family, beta2: i64) -> AffineSpec {
        let beta = (-2..=2)
            .map(|k| {
                (
                    k,
                    if k == 0 {
                        rat(0)
                    } else if k == 2 {
                        rat(beta2)
                    } else {
                        ratio(1, 3)
                    },
                )
            })
            .collect();
        AffineSpec::alpha_beta(base, rat(2), beta, 2).unwrap()
    }

    #[test]
    fn isomorphism() {
        let h = |b| H4Family::mhb(rat(1), rat(1), rat(b)).unwrap();
        assert!(iso_check(&ab(h(2), 5), &ab(h(2), 5)).unwrap());
        assert!(!iso_check(&ab(h(2), 5), &ab(h(2), 6)).unwrap());
        assert!(!iso_check(&ab(h(2), 5), &ab(h(3), 5)).unwrap());
        let fseq = (-2..=2).map(|k| (k, s())).collect();
        let f = AffineSpec::tilde_f(fseq, 2).unwrap();
        assert_eq!(
            iso_check(&f, &ab(h(2), 5)),
            Err(Error::IncomparableVariants)
        );
        let beta = (-1..=1).map(|k| (k, rat(0))).collect();
        let small = AffineSpec::alpha_beta(h(2), rat(2), beta, 1).unwrap();
        assert_eq!(
            iso_check(&small, &ab(h(2), 5)),
            Err(Error::WindowMismatch(1, 2))
        );
    }

    #[test]
    fn vir_recovery() {
        let f = Poly::var(VarSet::D0W0, Var::W0)
            .unwrap()
            .pow(2)
            .sub(&Poly::one(VarSet::D0W0))
            .unwrap();
        let spec = ModuleSpec::Vir00(Vir00Spec::new(ratio(1, 3), f).unwrap());
        let data = actions_of(&spec).unwrap();
        assert_eq!(classify(&data).unwrap(), Outcome::Classified(spec));
        let mut bad = data.clone();
        let d2 = bad
            .get(BasisSymbol::dvir(2))
            .unwrap()
            .add(&Poly::one(VarSet::D0W0))
            .unwrap();
        bad.set(BasisSymbol::dvir(2), d2);
        assert!(matches!(
            classify(&bad).unwrap().violation(),
            Some(Violation::Regeneration { .. })
        ));

        let spec = ModuleSpec::AffVir(AffVirSpec::from_base(mhb101(), rat(2), rat(3), 2).unwrap());
        let data = actions_of(&spec).unwrap();
        assert_eq!(classify(&data).unwrap(), Outcome::Classified(spec));
    }
}
