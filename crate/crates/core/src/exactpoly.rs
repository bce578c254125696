//! Exact rational scalars and sparse polynomials over a small fixed set of
//! variables.
//!
//! Every module in this crate lives on one of three polynomial rings:
//! `Q[s]`, `Q[s, d]` or `Q[d0, w0]`. A [`Poly`] records which ring it belongs
//! to and refuses to mix with polynomials from another ring.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. Two polynomials are equal iff their term maps are
//! equal, and printing walks the map from the largest monomial down, so
//! output is deterministic.
//!
//! [`Shift`] substitutes `v -> v + c` for integer offsets `c`. With offset
//! `-1` on `s` this is the automorphism `tau`; with offset `-1` on `d` it is
//! `sigma`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for any integer exponent. `base` must be non-zero when `exp < 0`.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S,
    D,
    D0,
    W0,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::D => "d",
            Var::D0 => "d0",
            Var::W0 => "w0",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "s" => Some(Var::S),
            "d" => Some(Var::D),
            "d0" => Some(Var::D0),
            "w0" => Some(Var::W0),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The ordered variable list of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarSet {
    /// `Q[s]`, the H4 modules.
    S,
    /// `Q[s, d]`, the affine and affine-Virasoro modules.
    SD,
    /// `Q[d0, w0]`, the Vir(0,0) modules.
    D0W0,
}

impl VarSet {
    pub fn vars(self) -> &'static [Var] {
        match self {
            VarSet::S => &[Var::S],
            VarSet::SD => &[Var::S, Var::D],
            VarSet::D0W0 => &[Var::D0, Var::W0],
        }
    }

    pub fn index_of(self, v: Var) -> Option<usize> {
        self.vars().iter().position(|&u| u == v)
    }

    pub fn len(self) -> usize {
        self.vars().len()
    }

    pub fn is_empty(self) -> bool {
        self.vars().is_empty()
    }

    /// Smallest ring containing every variable in `vars`, if one exists.
    pub fn smallest_containing(vars: &[Var]) -> Option<VarSet> {
        [VarSet::S, VarSet::SD, VarSet::D0W0]
            .into_iter()
            .find(|vs| vars.iter().all(|&v| vs.index_of(v).is_some()))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.vars().iter().map(|v| v.name()).collect();
        write!(f, "Q[{}]", names.join(", "))
    }
}

/// Exponent vector aligned with the owning ring's variable list.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first variable, then the second, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials in `nvars` variables with total degree `<= max_degree`,
    /// ascending in graded-lex order.
    pub fn up_to_degree(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                for e in 0..=left {
                    cur[i] = e;
                    out.push(Monomial(cur.clone()));
                }
                cur[i] = 0;
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            return vec![Monomial(Vec::new())];
        }
        rec(0, max_degree, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(n) => Some(n),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: VarSet) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VarSet) -> Self {
        Poly::constant(vars, Rational::one())
    }

    pub fn constant(vars: VarSet, c: Rational) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    /// The polynomial `v`.
    pub fn var(vars: VarSet, v: Var) -> Result<Self> {
        let i = vars
            .index_of(v)
            .ok_or_else(|| Error::VariableMismatch(format!("variable {v} is not in {vars}")))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Ok(Poly::term(vars, Monomial(exps), Rational::one()))
    }

    pub fn term(vars: VarSet, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.0.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms<I>(vars: VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial from coefficients `c0 + c1 v + c2 v^2 + ...`.
    pub fn univariate(vars: VarSet, v: Var, coeffs: &[Rational]) -> Result<Self> {
        let i = vars
            .index_of(v)
            .ok_or_else(|| Error::VariableMismatch(format!("variable {v} is not in {vars}")))?;
        Ok(Poly::from_terms(
            vars,
            coeffs.iter().enumerate().map(|(e, c)| {
                let mut exps = vec![0; vars.len()];
                exps[i] = e as u32;
                (Monomial(exps), c.clone())
            }),
        ))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn var_set(&self) -> VarSet {
        self.vars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (`Some(0)` for zero).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest monomial in graded-lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        match self.vars.index_of(v) {
            None => Degree::Finite(0),
            Some(i) => Degree::Finite(self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)),
        }
    }

    pub fn total_degree(&self) -> Degree {
        match self.leading_term() {
            None => Degree::NegInf,
            Some((m, _)) => Degree::Finite(m.total_degree()),
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(format!(
                "{} vs {}",
                self.vars, other.vars
            )))
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.vars);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Substitutes `v -> v + offset(v)` for every variable in the shift.
    pub fn apply_shift(&self, sh: &Shift) -> Result<Poly> {
        let mut cur = self.clone();
        for (&v, &off) in &sh.offsets {
            let i = self.vars.index_of(v).ok_or_else(|| {
                Error::VariableMismatch(format!("shift variable {v} is not in {}", self.vars))
            })?;
            cur = cur.shift_index(i, off);
        }
        Ok(cur)
    }

    fn shift_index(&self, i: usize, off: i64) -> Poly {
        if off == 0 {
            return self.clone();
        }
        let c = BigInt::from(off);
        let mut out = Poly::zero(self.vars);
        for (m, coef) in &self.terms {
            let e = m.0[i];
            // (v + c)^e = sum_j binom(e, j) c^(e-j) v^j
            let mut binom = BigInt::one();
            for j in 0..=e {
                let mut exps = m.0.clone();
                exps[i] = j;
                let cpow = num_traits::pow(c.clone(), (e - j) as usize);
                let k = Rational::from_integer(&binom * cpow);
                out.add_term(Monomial(exps), coef * k);
                binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
            }
        }
        out
    }

    /// Substitutes `v -> -v`.
    pub fn negate_var(&self, v: Var) -> Result<Poly> {
        let i = self.vars.index_of(v).ok_or_else(|| {
            Error::VariableMismatch(format!("variable {v} is not in {}", self.vars))
        })?;
        Ok(Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.0[i] % 2 == 1 { -c } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        })
    }

    /// Re-expresses the polynomial in another ring, matching variables by name.
    /// Fails if a variable that actually occurs is missing from `target`.
    pub fn convert(&self, target: VarSet) -> Result<Poly> {
        if target == self.vars {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = self.vars.vars()[k];
                let j = target.index_of(v).ok_or_else(|| {
                    Error::VariableMismatch(format!("{} uses {v}, which is not in {target}", self))
                })?;
                exps[j] = e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// True iff no variable other than `v` occurs.
    pub fn is_univariate_in(&self, v: Var) -> bool {
        let i = self.vars.index_of(v);
        self.terms
            .keys()
            .all(|m| m.0.iter().enumerate().all(|(k, &e)| e == 0 || Some(k) == i))
    }

    /// Coefficients of a polynomial in `v` alone, lowest degree first.
    pub fn univariate_coeffs(&self, v: Var) -> Result<Vec<Rational>> {
        if !self.is_univariate_in(v) {
            return Err(Error::VariableMismatch(format!(
                "{self} is not a polynomial in {v} alone"
            )));
        }
        let deg = match self.degree_in(v) {
            Degree::NegInf => return Ok(Vec::new()),
            Degree::Finite(n) => n as usize,
        };
        let mut out = vec![Rational::zero(); deg + 1];
        if let Some(i) = self.vars.index_of(v) {
            for (m, c) in &self.terms {
                out[m.0[i] as usize] = c.clone();
            }
        } else if let Some(c) = self.constant_value() {
            out[0] = c;
        }
        Ok(out)
    }

    /// Remainder of division by `g`, a non-zero polynomial in `v` alone, with
    /// the other variables treated as coefficients. Zero iff `self` lies in
    /// the ideal generated by `g`.
    pub fn rem_by_univariate(&self, g: &Poly, v: Var) -> Result<Poly> {
        self.check_same(g)?;
        if g.is_zero() || !g.is_univariate_in(v) {
            return Err(Error::InvalidDivisor(format!(
                "{g} is not a non-zero polynomial in {v}"
            )));
        }
        let gc = g.univariate_coeffs(v)?;
        let n = gc.len() - 1;
        if n == 0 {
            // unit
            return Ok(Poly::zero(self.vars));
        }
        let i = self
            .vars
            .index_of(v)
            .expect("non-constant univariate divisor uses v");
        let lead = gc[n].clone();
        let mut r = self.clone();
        loop {
            let top = match r.degree_in(v) {
                Degree::Finite(e) if e as usize >= n => e,
                _ => return Ok(r),
            };
            // subtract (top-degree slice / lead) * v^(top - n) * g
            let mut quot = Poly::zero(self.vars);
            for (m, c) in &r.terms {
                if m.0[i] == top {
                    let mut exps = m.0.clone();
                    exps[i] = top - n as u32;
                    quot.add_term(Monomial(exps), c / &lead);
                }
            }
            r = r.sub(&quot.mul(g)?)?;
        }
    }

    /// Rational roots of a polynomial in `v` alone, ascending, without
    /// multiplicity. Uses the numerator/denominator divisor test.
    pub fn rational_roots(&self, v: Var) -> Result<Vec<Rational>> {
        let coeffs = self.univariate_coeffs(v)?;
        if coeffs.len() <= 1 {
            return Ok(Vec::new());
        }
        // clear denominators
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            roots.push(Rational::zero());
            ints.drain(..low);
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints[ints.len() - 1].abs();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    for cand in [
                        Rational::new(p.clone(), q.clone()),
                        -Rational::new(p.clone(), q.clone()),
                    ] {
                        if eval_int_poly(&ints, &cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Spacing-free rendering used in line-oriented reports.
    pub fn compact(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

fn eval_int_poly(coeffs: &[BigInt], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
        acc * x + Rational::from_integer(c.clone())
    })
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            let j = n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.vars.vars();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[k].name().to_string()),
                    _ => factors.push(format!("{}^{}", names[k].name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Integer translation of variables, `v -> v + offset(v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Shift {
    offsets: BTreeMap<Var, i64>,
}

impl Shift {
    pub fn identity() -> Self {
        Shift::default()
    }

    pub fn by(v: Var, offset: i64) -> Self {
        Shift::identity().with(v, offset)
    }

    /// `s -> s - 1`.
    pub fn tau() -> Self {
        Shift::by(Var::S, -1)
    }

    /// `d -> d - 1`.
    pub fn sigma() -> Self {
        Shift::by(Var::D, -1)
    }

    /// Adds `offset` to the offset already carried by `v`.
    pub fn with(mut self, v: Var, offset: i64) -> Self {
        let total = self.offsets.get(&v).copied().unwrap_or(0) + offset;
        if total == 0 {
            self.offsets.remove(&v);
        } else {
            self.offsets.insert(v, total);
        }
        self
    }

    pub fn compose(&self, other: &Shift) -> Shift {
        other
            .offsets
            .iter()
            .fold(self.clone(), |acc, (&v, &o)| acc.with(v, o))
    }

    pub fn inverse(&self) -> Shift {
        Shift {
            offsets: self.offsets.iter().map(|(&v, &o)| (v, -o)).collect(),
        }
    }

    pub fn offset(&self, v: Var) -> i64 {
        self.offsets.get(&v).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.offsets.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s() -> Poly {
        Poly::var(VarSet::S, Var::S).unwrap()
    }

    fn sd(v: Var) -> Poly {
        Poly::var(VarSet::SD, v).unwrap()
    }

    fn c(vs: VarSet, n: i64) -> Poly {
        Poly::constant(vs, rat(n))
    }

    #[test]
    fn add_cancels_to_constant() {
        let a = s().pow(2).add(&c(VarSet::S, 1)).unwrap();
        let b = s().pow(2).neg();
        assert_eq!(a.add(&b).unwrap(), c(VarSet::S, 1));
    }

    #[test]
    fn add_like_terms() {
        let a = s().scale(&rat(2));
        let b = s().scale(&rat(3));
        assert_eq!(a.add(&b).unwrap(), s().scale(&rat(5)));
        let sd_prod = sd(Var::S).mul(&sd(Var::D)).unwrap();
        let sum = sd_prod.add(&sd(Var::S)).unwrap();
        assert_eq!(sum.num_terms(), 2);
        assert_eq!(sum.to_string(), "s*d + s");
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        assert!(matches!(
            s().add(&sd(Var::D)),
            Err(Error::VariableMismatch(_))
        ));
        assert!(matches!(
            s().mul(&sd(Var::D)),
            Err(Error::VariableMismatch(_))
        ));
    }

    #[test]
    fn products() {
        let a = s().sub(&c(VarSet::S, 1)).unwrap();
        let b = s().add(&c(VarSet::S, 1)).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "s^2 - 1");

        let zero = Poly::zero(VarSet::SD);
        let big = sd(Var::S).pow(3).add(&sd(Var::D)).unwrap();
        assert!(zero.mul(&big).unwrap().is_zero());

        let half_s = s().scale(&ratio(1, 2));
        let lin = s().scale(&rat(2)).add(&c(VarSet::S, 5)).unwrap();
        assert_eq!(half_s.mul(&lin).unwrap().to_string(), "s^2 + 5/2*s");
    }

    #[test]
    fn shifts() {
        let tau = Shift::tau();
        assert_eq!(
            s().pow(2).apply_shift(&tau).unwrap().to_string(),
            "s^2 - 2*s + 1"
        );
        let sdp = sd(Var::S).mul(&sd(Var::D)).unwrap();
        assert_eq!(
            sdp.apply_shift(&Shift::sigma()).unwrap().to_string(),
            "s*d - s"
        );
        // tau^-1 sigma^3
        let sh = Shift::tau().inverse().compose(&Shift::by(Var::D, -3));
        let x = sd(Var::S).add(&sd(Var::D)).unwrap();
        assert_eq!(x.apply_shift(&sh).unwrap().to_string(), "s + d - 2");
    }

    #[test]
    fn shift_on_foreign_variable_fails() {
        assert!(matches!(
            s().apply_shift(&Shift::sigma()),
            Err(Error::VariableMismatch(_))
        ));
    }

    #[test]
    fn negation() {
        let x = s().pow(2).add(&s()).unwrap();
        assert_eq!(x.negate_var(Var::S).unwrap().to_string(), "s^2 - s");
        assert_eq!(c(VarSet::S, 7).negate_var(Var::S).unwrap(), c(VarSet::S, 7));
        let sdp = sd(Var::S).mul(&sd(Var::D)).unwrap();
        assert_eq!(sdp.negate_var(Var::S).unwrap(), sdp.neg());
        assert!(s().negate_var(Var::W0).is_err());
    }

    #[test]
    fn degrees() {
        let x = sd(Var::S)
            .pow(2)
            .mul(&sd(Var::D))
            .unwrap()
            .add(&sd(Var::S))
            .unwrap();
        assert_eq!(x.degree_in(Var::S), Degree::Finite(2));
        assert_eq!(sd(Var::S).pow(2).degree_in(Var::D), Degree::Finite(0));
        assert_eq!(Poly::zero(VarSet::S).degree_in(Var::S), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
    }

    #[test]
    fn graded_lex_order_prints_highest_first() {
        let p = Poly::from_terms(
            VarSet::SD,
            [
                (Monomial::new(vec![0, 0]), rat(7)),
                (Monomial::new(vec![1, 1]), rat(-3)),
                (Monomial::new(vec![2, 0]), ratio(1, 2)),
                (Monomial::new(vec![0, 3]), rat(1)),
            ],
        );
        assert_eq!(p.to_string(), "d^3 + 1/2*s^2 - 3*s*d + 7");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Monomial::up_to_degree(2, 3).len(), 10);
        assert_eq!(Monomial::up_to_degree(1, 3).len(), 4);
        let ms = Monomial::up_to_degree(2, 2);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ideal_membership_by_division() {
        // s^2 d - s d = s(s-1) d lies in (s - 1)
        let g = sd(Var::S).sub(&c(VarSet::SD, 1)).unwrap();
        let x = sd(Var::S).mul(&g).unwrap().mul(&sd(Var::D)).unwrap();
        assert!(x.rem_by_univariate(&g, Var::S).unwrap().is_zero());
        let y = x.add(&sd(Var::D)).unwrap();
        assert_eq!(y.rem_by_univariate(&g, Var::S).unwrap(), sd(Var::D));
        assert!(x.rem_by_univariate(&sd(Var::D), Var::S).is_err());
    }

    #[test]
    fn rational_roots_by_divisor_test() {
        // s(s-1)
        let g = s().mul(&s().sub(&c(VarSet::S, 1)).unwrap()).unwrap();
        assert_eq!(g.rational_roots(Var::S).unwrap(), vec![rat(0), rat(1)]);
        // s^2 + 1
        let h = s().pow(2).add(&c(VarSet::S, 1)).unwrap();
        assert!(h.rational_roots(Var::S).unwrap().is_empty());
        // (2s - 3)(s + 4)/6
        let k = s()
            .scale(&rat(2))
            .sub(&c(VarSet::S, 3))
            .unwrap()
            .mul(&s().add(&c(VarSet::S, 4)).unwrap())
            .unwrap()
            .scale(&ratio(1, 6));
        assert_eq!(
            k.rational_roots(Var::S).unwrap(),
            vec![rat(-4), ratio(3, 2)]
        );
        assert!(c(VarSet::S, 5).rational_roots(Var::S).unwrap().is_empty());
    }

    #[test]
    fn conversion_between_rings() {
        let x = s().pow(2).add(&c(VarSet::S, 1)).unwrap();
        let y = x.convert(VarSet::SD).unwrap();
        assert_eq!(y.to_string(), "s^2 + 1");
        assert_eq!(y.convert(VarSet::S).unwrap(), x);
        assert!(sd(Var::D).convert(VarSet::S).is_err());
        assert_eq!(
            c(VarSet::S, 3).convert(VarSet::D0W0).unwrap(),
            c(VarSet::D0W0, 3)
        );
    }

    #[test]
    fn rational_power() {
        assert_eq!(rat_pow(&rat(2), -3), ratio(1, 8));
        assert_eq!(rat_pow(&ratio(1, 2), 2), ratio(1, 4));
        assert_eq!(rat_pow(&rat(5), 0), rat(1));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
    }

    fn poly_s(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(small_rat(), 1..=max_deg + 1)
            .prop_map(|cs| Poly::univariate(VarSet::S, Var::S, &cs).unwrap())
    }

    fn poly_sd() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..4, 0u32..4), small_rat()), 0..6).prop_map(|ts| {
            Poly::from_terms(
                VarSet::SD,
                ts.into_iter()
                    .map(|((a, b), c)| (Monomial::new(vec![a, b]), c)),
            )
        })
    }

    proptest! {
        #[test]
        fn tau_lowers_degree_by_one(x in poly_s(8)) {
            if let Degree::Finite(n) = x.degree_in(Var::S) {
                if n >= 1 {
                    let diff = x.apply_shift(&Shift::tau()).unwrap().sub(&x).unwrap();
                    prop_assert_eq!(diff.degree_in(Var::S), Degree::Finite(n - 1));
                }
            }
        }

        #[test]
        fn shifts_compose_additively(x in poly_sd(), u in -3i64..=3, v in -3i64..=3, a in -2i64..=2, b in -2i64..=2) {
            let su = Shift::by(Var::S, u).with(Var::D, a);
            let sv = Shift::by(Var::S, v).with(Var::D, b);
            let lhs = x.apply_shift(&sv).unwrap().apply_shift(&su).unwrap();
            let rhs = x.apply_shift(&su.compose(&sv)).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.apply_shift(&Shift::identity()).unwrap(), x.clone());
        }

        #[test]
        fn tau_and_sigma_commute(x in poly_sd()) {
            let ts = x.apply_shift(&Shift::sigma()).unwrap().apply_shift(&Shift::tau()).unwrap();
            let st = x.apply_shift(&Shift::tau()).unwrap().apply_shift(&Shift::sigma()).unwrap();
            prop_assert_eq!(ts, st);
        }

        #[test]
        fn negation_is_involution(x in poly_sd()) {
            let twice = x.negate_var(Var::S).unwrap().negate_var(Var::S).unwrap();
            prop_assert_eq!(twice, x);
        }

        #[test]
        fn ring_axioms(a in poly_sd(), b in poly_sd(), c in poly_sd()) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        }
    }
}
