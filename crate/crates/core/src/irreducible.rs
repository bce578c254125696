//! Irreducibility: verdicts, degree-reduction certificates, invariant-ideal
//! witnesses and a brute-force orbit oracle.
//!
//! A certificate starts at a seed and repeatedly applies an operator built
//! from the module action that strictly lowers a degree, ending at a nonzero
//! constant. Since `1` generates the module, any submodule containing the
//! seed is everything.
//!
//! A witness is a principal ideal `(g)` closed under every generator; it is a
//! proper nonzero submodule as soon as `g` is not a constant.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{Degree, Monomial, Poly, Rational, Var, VarSet};
use crate::liealg::{AlgebraId, BasisSymbol};
use crate::modfam::{AffineKind, AffineSpec, H4Family, ModuleSpec, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Irreducible => "irreducible",
            Verdict::Reducible => "reducible",
        })
    }
}

/// Where a verdict comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// A published classification statement covers the family.
    Theorem,
    /// Not covered by a published statement; backed only by the witness
    /// or certificate this module produces.
    ImplementationDerived,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Theorem => "theorem",
            Basis::ImplementationDerived => "implementation-derived",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub basis: Basis,
}

fn h4_verdict(fam: &H4Family) -> Verdict {
    match fam {
        H4Family::Mhb { .. } | H4Family::Mbh { .. } | H4Family::Mab { .. } => Verdict::Irreducible,
        H4Family::Mg0 { g } | H4Family::M0g { g } if g.is_constant() => Verdict::Irreducible,
        _ => Verdict::Reducible,
    }
}

pub fn decide(spec: &ModuleSpec) -> Result<Decision> {
    spec.validate()?;
    let (verdict, basis) = match spec {
        ModuleSpec::H4(f) => (h4_verdict(f), Basis::Theorem),
        ModuleSpec::Affine(a) => match a.kind() {
            AffineKind::AlphaBeta {
                base: H4Family::M0, ..
            } => (Verdict::Reducible, Basis::ImplementationDerived),
            AffineKind::AlphaBeta { base, .. } => (h4_verdict(base), Basis::Theorem),
            AffineKind::F { .. } => (Verdict::Reducible, Basis::ImplementationDerived),
        },
        ModuleSpec::Vir00(_) => (Verdict::Reducible, Basis::ImplementationDerived),
        ModuleSpec::AffVir(v) => (h4_verdict(v.h4_base()), Basis::ImplementationDerived),
    };
    Ok(Decision { verdict, basis })
}

/// One reduction operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOp {
    /// `v -> (1/c) x.v - v`, where `x.1 = c` is a nonzero constant.
    /// Lowers `deg_s` by one.
    SStage { x: BasisSymbol, c: Rational },
    /// `v -> (x@1.v - alpha x.v) / (alpha c)`. Lowers `deg_d` by one.
    DStage {
        x: BasisSymbol,
        alpha: Rational,
        c: Rational,
    },
}

impl ReductionOp {
    pub fn apply(&self, rep: &dyn Representation, v: &Poly) -> Result<Poly> {
        match self {
            ReductionOp::SStage { x, c } => rep.act(*x, v)?.scale(&c.recip()).sub(v),
            ReductionOp::DStage { x, alpha, c } => {
                let lifted = BasisSymbol::loop_symbol(x.kind(), 1).expect("loop kind");
                let diff = rep.act(lifted, v)?.sub(&rep.act(*x, v)?.scale(alpha))?;
                Ok(diff.scale(&(alpha * c).recip()))
            }
        }
    }

    fn lowered_var(&self) -> Var {
        match self {
            ReductionOp::SStage { .. } => Var::S,
            ReductionOp::DStage { .. } => Var::D,
        }
    }
}

impl fmt::Display for ReductionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionOp::SStage { x, c } => {
                write!(f, "s-stage[{};c={}]", x.label(AlgebraId::AffineH4), c)
            }
            ReductionOp::DStage { x, alpha, c } => write!(
                f,
                "d-stage[{};alpha={};c={}]",
                x.label(AlgebraId::AffineH4),
                alpha,
                c
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub op: ReductionOp,
    pub result: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub seed: Poly,
    pub steps: Vec<Step>,
}

impl IrreducibilityCertificate {
    /// Final polynomial of the chain.
    pub fn end(&self) -> &Poly {
        self.steps.last().map_or(&self.seed, |s| &s.result)
    }

    /// Re-applies every operator and checks the recorded results, the strict
    /// degree decrease and the nonzero constant at the end.
    pub fn replay(&self, rep: &dyn Representation) -> Result<bool> {
        let mut cur = self.seed.clone();
        for step in &self.steps {
            let next = step.op.apply(rep, &cur)?;
            let var = step.op.lowered_var();
            if next != step.result || next.degree_in(var) >= cur.degree_in(var) {
                return Ok(false);
            }
            cur = next;
        }
        Ok(!cur.is_zero() && cur.is_constant())
    }
}

impl fmt::Display for IrreducibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "STEP seed POLY {}", self.seed.compact())?;
        for s in &self.steps {
            writeln!(f, "STEP {} POLY {}", s.op, s.result.compact())?;
        }
        Ok(())
    }
}

/// Base family and, for loop modules, `alpha`.
fn reduction_data(spec: &ModuleSpec) -> Option<(&H4Family, Option<&Rational>)> {
    match spec {
        ModuleSpec::H4(f) => Some((f, None)),
        ModuleSpec::Affine(a) => match a.kind() {
            AffineKind::AlphaBeta { base, alpha, .. } => Some((base, Some(alpha))),
            AffineKind::F { .. } => None,
        },
        ModuleSpec::AffVir(v) => Some((v.h4_base(), Some(v.alpha()))),
        ModuleSpec::Vir00(_) => None,
    }
}

/// `q` when `q.1` is a nonzero constant, else `p` when `p.1` is.
fn constant_partner(base: &H4Family) -> Option<(BasisSymbol, Rational)> {
    [
        (BasisSymbol::q(0), base.q_one()),
        (BasisSymbol::p(0), base.p_one()),
    ]
    .into_iter()
    .find_map(|(x, v)| match v.constant_value() {
        Some(c) if !c.is_zero() => Some((x, c)),
        _ => None,
    })
}

/// Reduces `seed` to a nonzero constant; `d` first, then `s`.
pub fn reduction_chain(spec: &ModuleSpec, seed: &Poly) -> Result<IrreducibilityCertificate> {
    if decide(spec)?.verdict != Verdict::Irreducible {
        return Err(Error::NotIrreducible);
    }
    if seed.is_zero() {
        return Err(Error::SeedZero);
    }
    if seed.var_set() != spec.var_set() {
        return Err(Error::VariableMismatch(format!(
            "seed lives in {}, module in {}",
            seed.var_set(),
            spec.var_set()
        )));
    }
    let (base, alpha) = reduction_data(spec).ok_or(Error::NotIrreducible)?;
    let (x, c) = constant_partner(base).ok_or(Error::NotIrreducible)?;
    let mut ops = Vec::new();
    if let Some(alpha) = alpha {
        ops.push(ReductionOp::DStage {
            x,
            alpha: alpha.clone(),
            c: c.clone(),
        });
    }
    ops.push(ReductionOp::SStage { x, c });

    let mut steps = Vec::new();
    let mut cur = seed.clone();
    for op in ops {
        let var = op.lowered_var();
        while cur.degree_in(var) > Degree::Finite(0) {
            cur = op.apply(spec, &cur)?;
            steps.push(Step {
                op: op.clone(),
                result: cur.clone(),
            });
        }
    }
    Ok(IrreducibilityCertificate {
        seed: seed.clone(),
        steps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCheck {
    pub generator: BasisSymbol,
    /// `ideal_generator * m` for a test monomial `m`.
    pub element: Poly,
    pub image: Poly,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityWitness {
    pub ideal_generator: Poly,
    pub variable: Var,
    pub algebra: AlgebraId,
    pub checks: Vec<ClosureCheck>,
}

impl ReducibilityWitness {
    pub fn all_contained(&self) -> bool {
        self.checks.iter().all(|c| c.contained)
    }
}

impl fmt::Display for ReducibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IDEAL {}", self.ideal_generator.compact())?;
        for c in &self.checks {
            writeln!(
                f,
                "CLOSURE {} POLY {} IMAGE {} {}",
                c.generator.label(self.algebra),
                c.element.compact(),
                c.image.compact(),
                if c.contained { "IN" } else { "OUT" }
            )?;
        }
        Ok(())
    }
}

/// Maximal degree of the test monomials in closure checks.
pub const CLOSURE_DEGREE: u32 = 4;

/// Generator window used for modules without a window of their own.
pub const UNBOUNDED_WINDOW: i64 = 3;

/// `s - r` for the smallest rational root `r` of `g`, or `g` itself.
fn ideal_in_s(g: &Poly) -> Result<Poly> {
    let roots = g.rational_roots(Var::S)?;
    match roots.first() {
        Some(r) => Poly::var(VarSet::S, Var::S)?.sub(&Poly::constant(VarSet::S, r.clone())),
        None => Ok(g.clone()),
    }
}

fn h4_ideal(base: &H4Family) -> Result<Poly> {
    match base {
        H4Family::Mg0 { g } | H4Family::M0g { g } => ideal_in_s(g),
        _ => Poly::var(VarSet::S, Var::S),
    }
}

pub fn witness(spec: &ModuleSpec) -> Result<ReducibilityWitness> {
    if decide(spec)?.verdict != Verdict::Reducible {
        return Err(Error::NotReducible);
    }
    let (generator, variable) = match spec {
        ModuleSpec::H4(f) => (h4_ideal(f)?, Var::S),
        ModuleSpec::Affine(a) => (affine_ideal(a)?.convert(VarSet::SD)?, Var::S),
        ModuleSpec::AffVir(v) => (h4_ideal(v.h4_base())?.convert(VarSet::SD)?, Var::S),
        ModuleSpec::Vir00(_) => (Poly::var(VarSet::D0W0, Var::W0)?, Var::W0),
    };
    let window = match spec {
        ModuleSpec::H4(_) => 0,
        other => other.window().unwrap_or(UNBOUNDED_WINDOW),
    };
    let alg = spec.algebra();
    let vars = spec.var_set();
    let monomials: Vec<Poly> = Monomial::up_to_degree(vars.len(), CLOSURE_DEGREE)
        .into_iter()
        .map(|m| Poly::term(vars, m, Rational::one()))
        .collect();
    let mut checks = Vec::new();
    for x in alg.generators(window) {
        for m in &monomials {
            let element = generator.mul(m)?;
            let image = spec.act(x, &element)?;
            let contained = image.rem_by_univariate(&generator, variable)?.is_zero();
            checks.push(ClosureCheck {
                generator: x,
                element,
                image,
                contained,
            });
        }
    }
    Ok(ReducibilityWitness {
        ideal_generator: generator,
        variable,
        algebra: alg,
        checks,
    })
}

fn affine_ideal(a: &AffineSpec) -> Result<Poly> {
    match a.kind() {
        AffineKind::AlphaBeta { base, .. } => h4_ideal(base),
        AffineKind::F { .. } => Poly::var(VarSet::S, Var::S),
    }
}

/// Row-echelon span keyed by leading monomial.
#[derive(Default)]
struct Span {
    rows: BTreeMap<Monomial, Poly>,
}

impl Span {
    /// Remainder of `v` after cancelling leading terms against the rows.
    fn reduce(&self, v: &Poly) -> Result<Poly> {
        let mut cur = v.clone();
        while let Some((m, c)) = cur.leading_term() {
            match self.rows.get(m) {
                Some(row) => {
                    let c = c.clone();
                    cur = cur.sub(&row.scale(&c))?;
                }
                None => break,
            }
        }
        Ok(cur)
    }

    /// Inserts the reduced form of `v`; returns it if it was new.
    fn insert(&mut self, v: &Poly) -> Result<Option<Poly>> {
        let r = self.reduce(v)?;
        let Some((m, c)) = r.leading_term() else {
            return Ok(None);
        };
        let (m, inv) = (m.clone(), c.recip());
        let row = r.scale(&inv);
        self.rows.insert(m, row.clone());
        Ok(Some(row))
    }
}

fn total_degree(p: &Poly) -> u32 {
    p.total_degree().finite().unwrap_or(0)
}

/// Linear span of `seed` closed under the generators with loop index in
/// `[-1, 1]`: elements of total degree `<= max_degree` are expanded, images
/// of total degree `> cap_degree` are dropped. Returns whether `1` lies in
/// the span at the fixed point.
///
/// A `true` answer is a proof that the submodule generated by `seed` is the
/// whole module; a `false` answer is only evidence.
pub fn orbit_oracle(
    rep: &dyn Representation,
    seed: &Poly,
    max_degree: u32,
    cap_degree: u32,
) -> Result<bool> {
    if seed.is_zero() {
        return Err(Error::SeedZero);
    }
    if cap_degree < max_degree {
        return Err(Error::InvalidBounds(format!(
            "cap degree {cap_degree} is below max degree {max_degree}"
        )));
    }
    let gens: Vec<BasisSymbol> = rep
        .algebra()
        .generators(1)
        .into_iter()
        .filter(|g| rep.evaluable(*g))
        .collect();
    let mut span = Span::default();
    let mut work = Vec::new();
    if let Some(row) = span.insert(seed)? {
        work.push(row);
    }
    while let Some(v) = work.pop() {
        if total_degree(&v) > max_degree {
            continue;
        }
        for &x in &gens {
            let image = rep.act(x, &v)?;
            if image.is_zero() || total_degree(&image) > cap_degree {
                continue;
            }
            if let Some(row) = span.insert(&image)? {
                work.push(row);
            }
        }
    }
    Ok(span.reduce(&Poly::one(rep.var_set()))?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn s() -> Poly {
        Poly::var(VarSet::S, Var::S).unwrap()
    }

    fn cs(n: i64) -> Poly {
        Poly::constant(VarSet::S, rat(n))
    }

    fn h4(f: H4Family) -> ModuleSpec {
        ModuleSpec::H4(f)
    }

    #[test]
    fn verdicts() {
        let d = |f| decide(&h4(f)).unwrap().verdict;
        assert_eq!(d(H4Family::mg0(cs(2)).unwrap()), Verdict::Irreducible);
        assert_eq!(
            d(H4Family::mg0(s().pow(2).sub(&s()).unwrap()).unwrap()),
            Verdict::Reducible
        );
        assert_eq!(d(H4Family::M0), Verdict::Reducible);
        let beta = (-2..=2).map(|k| (k, rat(0))).collect();
        let lift = AffineSpec::alpha_beta(H4Family::mab(rat(3), rat(1)).unwrap(), rat(2), beta, 2)
            .unwrap();
        let dec = decide(&ModuleSpec::Affine(lift)).unwrap();
        assert_eq!(dec.verdict, Verdict::Irreducible);
        assert_eq!(dec.basis, Basis::Theorem);
    }

    #[test]
    fn chains() {
        let spec = h4(H4Family::mg0(cs(2)).unwrap());
        let cert = reduction_chain(&spec, &s().pow(2)).unwrap();
        let results: Vec<String> = cert.steps.iter().map(|s| s.result.to_string()).collect();
        assert_eq!(results, ["-2*s + 1", "2"]);
        assert!(cert.replay(&spec).unwrap());

        let spec = h4(H4Family::mhb(rat(1), rat(0), rat(1)).unwrap());
        let cert = reduction_chain(&spec, &s()).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(cert.end(), &cs(1));

        let cert = reduction_chain(&spec, &cs(7)).unwrap();
        assert!(cert.steps.is_empty());
        assert!(cert.replay(&spec).unwrap());

        assert_eq!(
            reduction_chain(&spec, &Poly::zero(VarSet::S)),
            Err(Error::SeedZero)
        );
        assert_eq!(
            reduction_chain(&h4(H4Family::M0), &s()),
            Err(Error::NotIrreducible)
        );
    }

    #[test]
    fn tampered_chain_fails_replay() {
        let spec = h4(H4Family::mg0(cs(2)).unwrap());
        let mut cert = reduction_chain(&spec, &s().pow(2)).unwrap();
        cert.steps[0].result = cert.steps[0].result.add(&cs(1)).unwrap();
        assert!(!cert.replay(&spec).unwrap());
    }

    #[test]
    fn witnesses() {
        let g = s().mul(&s().sub(&cs(1)).unwrap()).unwrap();
        let w = witness(&h4(H4Family::mg0(g).unwrap())).unwrap();
        assert_eq!(w.ideal_generator, s());
        assert!(w.all_contained());

        let g = s().pow(2).add(&cs(1)).unwrap();
        let w = witness(&h4(H4Family::mg0(g.clone()).unwrap())).unwrap();
        assert_eq!(w.ideal_generator, g);
        assert!(w.all_contained());

        let w = witness(&h4(H4Family::M0)).unwrap();
        assert_eq!(w.ideal_generator, s());
        assert!(w.all_contained());

        assert_eq!(
            witness(&h4(H4Family::mab(rat(2), rat(3)).unwrap())),
            Err(Error::NotReducible)
        );
    }

    #[test]
    fn non_ideal_fails_closure() {
        // (s) is not invariant for Mg0(g = s - 1)
        let spec = h4(H4Family::mg0(s().sub(&cs(1)).unwrap()).unwrap());
        let gen = s();
        let image = spec.act(BasisSymbol::p(0), &gen).unwrap();
        assert!(!image.rem_by_univariate(&gen, Var::S).unwrap().is_zero());
        assert_eq!(
            witness(&spec).unwrap().ideal_generator,
            s().sub(&cs(1)).unwrap()
        );
    }

    #[test]
    fn oracle_examples() {
        let spec = h4(H4Family::mg0(cs(1)).unwrap());
        assert!(orbit_oracle(&spec, &s().pow(3), 3, 5).unwrap());
        let spec = h4(H4Family::mg0(s()).unwrap());
        assert!(!orbit_oracle(&spec, &s(), 4, 6).unwrap());
        let spec = h4(H4Family::mab(rat(2), rat(3)).unwrap());
        assert!(orbit_oracle(&spec, &s().pow(2), 3, 5).unwrap());
        assert_eq!(
            orbit_oracle(&spec, &Poly::zero(VarSet::S), 3, 5),
            Err(Error::SeedZero)
        );
        assert!(matches!(
            orbit_oracle(&spec, &s(), 5, 3),
            Err(Error::InvalidBounds(_))
        ));
    }
}
