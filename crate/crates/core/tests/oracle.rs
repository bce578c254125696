//! Cross-checks against a dense reference model written from scratch here.
//!
//! The model stores polynomials in two variables `(x, y)` as exponent-pair
//! maps, substitutes shifts by repeated multiplication, and carries its own
//! copy of the bracket table. `x` is `s` (or `d0`), `y` is `d` (or `w0`).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use nappi_witten::exactpoly::{rat, ratio, Monomial, Poly, Rational, VarSet};
use nappi_witten::liealg::{AlgebraId, BasisSymbol, Kind};
use nappi_witten::modfam::{
    AffVirSpec, AffineSpec, H4Family, ModuleSpec, Representation, Vir00Spec,
};
use nappi_witten::specdsl::parse_poly_in;

#[derive(Clone, Debug, PartialEq, Default)]
struct Dense(BTreeMap<(u32, u32), Rational>);

impl Dense {
    fn constant(c: Rational) -> Self {
        let mut d = Dense::default();
        d.push((0, 0), c);
        d
    }

    fn x() -> Self {
        let mut d = Dense::default();
        d.push((1, 0), rat(1));
        d
    }

    fn y() -> Self {
        let mut d = Dense::default();
        d.push((0, 1), rat(1));
        d
    }

    fn push(&mut self, e: (u32, u32), c: Rational) {
        let entry = self.0.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    fn add(&self, o: &Dense) -> Dense {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.push(*e, c.clone());
        }
        out
    }

    fn scale(&self, c: &Rational) -> Dense {
        let mut out = Dense::default();
        for (e, v) in &self.0 {
            out.push(*e, v * c);
        }
        out
    }

    fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.scale(&rat(-1)))
    }

    fn mul(&self, o: &Dense) -> Dense {
        let mut out = Dense::default();
        for ((a, b), c) in &self.0 {
            for ((a2, b2), c2) in &o.0 {
                out.push((a + a2, b + b2), c * c2);
            }
        }
        out
    }

    fn power(&self, n: u32) -> Dense {
        (0..n).fold(Dense::constant(rat(1)), |acc, _| acc.mul(self))
    }

    /// `f(x + a, y + b)`.
    fn shift(&self, a: i64, b: i64) -> Dense {
        let xs = Dense::x().add(&Dense::constant(rat(a)));
        let ys = Dense::y().add(&Dense::constant(rat(b)));
        let mut out = Dense::default();
        for ((i, j), c) in &self.0 {
            out = out.add(&xs.power(*i).mul(&ys.power(*j)).scale(c));
        }
        out
    }

    fn from_poly(p: &Poly) -> Dense {
        let mut out = Dense::default();
        for (m, c) in p.terms() {
            let e = m.exponents();
            out.push((e[0], e.get(1).copied().unwrap_or(0)), c.clone());
        }
        out
    }
}

fn pow(a: &Rational, k: i64) -> Rational {
    let base = if k < 0 { a.recip() } else { a.clone() };
    (0..k.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// `(p.1, q.1, r.1)` of an H4 family, written out by hand.
fn h4_values(f: &H4Family) -> (Dense, Dense, Dense) {
    let zero = Dense::default;
    match f {
        H4Family::Mg0 { g } => (Dense::from_poly(g), zero(), zero()),
        H4Family::M0g { g } => (zero(), Dense::from_poly(g), zero()),
        H4Family::Mhb { a1, a2, b } => (
            Dense::x().scale(a1).add(&Dense::constant(a2.clone())),
            Dense::constant(b.clone()),
            Dense::constant(-(a1 * b)),
        ),
        H4Family::Mbh { a1, a2, b } => (
            Dense::constant(b.clone()),
            Dense::x().scale(a1).add(&Dense::constant(a2.clone())),
            Dense::constant(-(a1 * b)),
        ),
        H4Family::Mab { a, b } => (
            Dense::constant(a.clone()),
            Dense::constant(b.clone()),
            zero(),
        ),
        H4Family::M0 => (zero(), zero(), zero()),
    }
}

/// Reference action of `x` on `v`.
fn model_act(spec: &ModuleSpec, x: BasisSymbol, v: &Dense) -> Dense {
    let (kind, m) = (x.kind(), x.index());
    match spec {
        ModuleSpec::H4(f) => {
            let (p1, q1, r1) = h4_values(f);
            match kind {
                Kind::P => v.shift(-1, 0).mul(&p1),
                Kind::Q => v.shift(1, 0).mul(&q1),
                Kind::R => v.mul(&r1),
                _ => v.mul(&Dense::x()),
            }
        }
        ModuleSpec::Affine(a) => affine_act(a, kind, m, v),
        ModuleSpec::AffVir(av) => match kind {
            Kind::DVir => {
                let am = pow(av.alpha(), m);
                let value = Dense::y()
                    .scale(&am)
                    .add(&Dense::constant(rat(m) * &am * av.lambda()));
                v.shift(0, -m).mul(&value)
            }
            _ => affine_act(av.base(), kind, m, v),
        },
        ModuleSpec::Vir00(s) => {
            let lm = pow(s.lambda(), m);
            let value = match kind {
                Kind::DVir => Dense::x().add(&Dense::from_poly(s.fpoly()).scale(&rat(m))),
                Kind::K => return Dense::default(),
                _ => Dense::y(),
            };
            v.shift(-m, 0).mul(&value.scale(&lm))
        }
    }
}

fn affine_act(a: &AffineSpec, kind: Kind, m: i64, v: &Dense) -> Dense {
    use nappi_witten::modfam::AffineKind;
    match kind {
        Kind::K => return Dense::default(),
        Kind::D => return v.mul(&Dense::y()),
        _ => {}
    }
    match a.kind() {
        AffineKind::AlphaBeta { base, alpha, beta } => {
            let (p1, q1, r1) = h4_values(base);
            let am = pow(alpha, m);
            match kind {
                Kind::P => v.shift(-1, -m).mul(&p1.scale(&am)),
                Kind::Q => v.shift(1, -m).mul(&q1.scale(&am)),
                Kind::R => v.shift(0, -m).mul(&r1.scale(&am)),
                _ => v.shift(0, -m).mul(
                    &Dense::x()
                        .scale(&am)
                        .add(&Dense::constant(beta[&m].clone())),
                ),
            }
        }
        AffineKind::F { fseq } => match kind {
            Kind::S => v.shift(0, -m).mul(&Dense::from_poly(&fseq[&m])),
            _ => Dense::default(),
        },
    }
}

/// Reference bracket of two generators as `(coefficient, generator)` terms.
fn model_bracket(alg: AlgebraId, x: BasisSymbol, y: BasisSymbol) -> Vec<(Rational, BasisSymbol)> {
    use Kind::*;
    let (m, n) = (x.index(), y.index());
    let lp = |k: Kind, i: i64| BasisSymbol::loop_symbol(k, i).unwrap();
    let central = |c: i64| {
        if m + n == 0 && m != 0 {
            vec![(rat(m * c), BasisSymbol::k())]
        } else {
            vec![]
        }
    };
    match (x.kind(), y.kind()) {
        (K, _) | (_, K) | (D, D) => vec![],
        (D, _) => vec![(rat(n), y)],
        (_, D) => vec![(rat(-m), x)],
        (DVir, DVir) => {
            let mut out = vec![(rat(n - m), BasisSymbol::dvir(m + n))];
            if m + n == 0 {
                out.push((ratio(m * m * m - m, 12), BasisSymbol::k()));
            }
            out
        }
        (DVir, k) => vec![(rat(n), lp(k, m + n))],
        (k, DVir) => vec![(rat(-m), lp(k, m + n))],
        _ if alg == AlgebraId::Vir00 => vec![],
        (P, Q) => [vec![(rat(1), lp(R, m + n))], central(1)].concat(),
        (Q, P) => [vec![(rat(-1), lp(R, m + n))], central(1)].concat(),
        (S, P) => vec![(rat(1), lp(P, m + n))],
        (P, S) => vec![(rat(-1), lp(P, m + n))],
        (S, Q) => vec![(rat(-1), lp(Q, m + n))],
        (Q, S) => vec![(rat(1), lp(Q, m + n))],
        (R, S) | (S, R) => central(1),
        _ => vec![],
    }
}

fn monomials(vars: VarSet, degree: u32) -> Vec<Dense> {
    Monomial::up_to_degree(vars.len(), degree)
        .into_iter()
        .map(|m| Dense::from_poly(&Poly::term(vars, m, rat(1))))
        .collect()
}

fn to_poly(vars: VarSet, d: &Dense) -> Poly {
    Poly::from_terms(
        vars,
        d.0.iter().map(|((i, j), c)| {
            let exps = if vars.len() == 1 {
                vec![*i]
            } else {
                vec![*i, *j]
            };
            (Monomial::new(exps), c.clone())
        }),
    )
}

fn s_poly(t: &str) -> Poly {
    parse_poly_in(t, VarSet::S).unwrap()
}

fn sample_specs() -> Vec<(ModuleSpec, i64)> {
    let bases = vec![
        H4Family::mg0(s_poly("s^2 - s")).unwrap(),
        H4Family::m0g(s_poly("3*s + 1")).unwrap(),
        H4Family::mhb(rat(2), rat(-1), rat(3)).unwrap(),
        H4Family::mbh(ratio(1, 2), rat(0), rat(-1)).unwrap(),
        H4Family::mab(rat(2), rat(3)).unwrap(),
        H4Family::M0,
    ];
    let mut out: Vec<(ModuleSpec, i64)> = bases
        .iter()
        .map(|b| (ModuleSpec::H4(b.clone()), 1))
        .collect();
    for b in &bases {
        let beta = (-2..=2)
            .map(|k| (k, if k == 0 { rat(0) } else { ratio(k, 3) }))
            .collect();
        out.push((
            ModuleSpec::Affine(AffineSpec::alpha_beta(b.clone(), ratio(-3, 2), beta, 2).unwrap()),
            2,
        ));
        out.push((
            ModuleSpec::AffVir(AffVirSpec::from_base(b.clone(), rat(3), ratio(2, 5), 2).unwrap()),
            2,
        ));
    }
    let fseq = (-2..=2)
        .map(|k| {
            (
                k,
                if k == 0 {
                    s_poly("s")
                } else {
                    s_poly(&format!("s^2 + {k}"))
                },
            )
        })
        .collect();
    out.push((ModuleSpec::Affine(AffineSpec::tilde_f(fseq, 2).unwrap()), 2));
    let f = parse_poly_in("w0^2 - 2*w0 + 1/3", VarSet::D0W0).unwrap();
    out.push((
        ModuleSpec::Vir00(Vir00Spec::new(ratio(-2, 3), f).unwrap()),
        2,
    ));
    out
}

#[test]
fn library_action_matches_reference_model() {
    for (spec, window) in sample_specs() {
        let vars = spec.var_set();
        for x in spec.algebra().generators(window) {
            for v in monomials(vars, 3) {
                let got = spec.act(x, &to_poly(vars, &v)).unwrap();
                let want = model_act(&spec, x, &v);
                assert_eq!(
                    Dense::from_poly(&got),
                    want,
                    "{} on {v:?} in {spec:?}",
                    x.label(spec.algebra())
                );
            }
        }
    }
}

#[test]
fn reference_model_satisfies_its_own_bracket_table() {
    for (spec, window) in sample_specs() {
        let alg = spec.algebra();
        let gens = alg.generators(window);
        let vars = spec.var_set();
        for &x in &gens {
            for &y in &gens {
                let br = model_bracket(alg, x, y);
                if br.iter().any(|(_, g)| g.index().abs() > window) {
                    continue;
                }
                for v in monomials(vars, 2) {
                    let lhs = model_act(&spec, x, &model_act(&spec, y, &v)).sub(&model_act(
                        &spec,
                        y,
                        &model_act(&spec, x, &v),
                    ));
                    let rhs = br.iter().fold(Dense::default(), |acc, (c, g)| {
                        acc.add(&model_act(&spec, *g, &v).scale(c))
                    });
                    assert_eq!(lhs, rhs, "[{}, {}] in {spec:?}", x.label(alg), y.label(alg));
                }
            }
        }
    }
}

#[test]
fn library_bracket_matches_reference_table() {
    for alg in AlgebraId::ALL {
        let gens = alg.generators(3);
        for &x in &gens {
            for &y in &gens {
                let lib = nappi_witten::liealg::bracket_symbols(alg, x, y).unwrap();
                let mut want: BTreeMap<BasisSymbol, Rational> = BTreeMap::new();
                for (c, g) in model_bracket(alg, x, y) {
                    *want.entry(g).or_insert_with(Rational::zero) += c;
                }
                want.retain(|_, c| !c.is_zero());
                let got: BTreeMap<BasisSymbol, Rational> =
                    lib.terms().map(|(g, c)| (*g, c.clone())).collect();
                assert_eq!(got, want, "[{}, {}] in {alg}", x.label(alg), y.label(alg));
            }
        }
    }
}
