//! Exact scalar expressions on jet space.
//!
//! An [`Expr`] is always stored in canonical form: a sum of monomials with
//! nonzero rational coefficients, each monomial a sorted product of atoms
//! raised to nonzero integer powers. Atoms are jet coordinates, named
//! parameters, opaque functions with derivative records, and unary
//! elementary functions of a canonical argument. Canonicalization happens
//! eagerly in every constructor, so structural equality is canonical
//! equality.

mod eval;
mod render;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jet_space::{JetCoordinate, MultiIndex};

pub use eval::{Env, Value};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Unary elementary functions. `Recip` is the reciprocal of a non-monomial
/// sum; reciprocals of monomials are expressed with negative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sqrt,
    Exp,
    Sin,
    Cos,
    Recip,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Recip => "recip",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sqrt" => Func::Sqrt,
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

/// An unspecified smooth function of declared jet coordinates, together with
/// how many times it has been differentiated in each slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Opaque {
    pub name: Arc<str>,
    pub derivs: Vec<u32>,
    pub slots: Arc<[JetCoordinate]>,
}

impl Opaque {
    pub fn slot_of(&self, c: &JetCoordinate) -> Option<usize> {
        self.slots.iter().position(|s| s == c)
    }

    fn bumped(&self, slot: usize) -> Opaque {
        let mut o = self.clone();
        o.derivs[slot] += 1;
        o
    }

    pub fn is_underived(&self) -> bool {
        self.derivs.iter().all(|&d| d == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Coord(JetCoordinate),
    Param(Arc<str>),
    Opaque(Arc<Opaque>),
    Func(Func, Arc<Expr>),
}

impl Atom {
    /// Whether the atom depends on any fibre coordinate.
    fn touches_fibre(&self) -> bool {
        match self {
            Atom::Coord(c) => c.is_fibre(),
            Atom::Param(_) => false,
            Atom::Opaque(o) => o.slots.iter().any(|c| c.is_fibre()),
            Atom::Func(_, arg) => arg.coordinates().iter().any(|c| c.is_fibre()),
        }
    }
}

/// A sorted product of atom powers with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Atom, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(a, e)])
        }
    }

    pub fn factors(&self) -> &[(Atom, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(a, e)| (a.clone(), -e)).collect())
    }

    /// Total degree in fibre coordinates, or `None` if the monomial is not
    /// polynomial in them.
    pub fn fibre_degree(&self) -> Option<u32> {
        let mut d = 0u32;
        for (a, e) in &self.0 {
            match a {
                Atom::Coord(c) if c.is_fibre() => {
                    if *e < 0 {
                        return None;
                    }
                    d += *e as u32;
                }
                other if other.touches_fibre() => return None,
                _ => {}
            }
        }
        Some(d)
    }
}

/// A canonical scalar expression.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

/// Outcome of a syntactic equality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Expr::from_term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(int(n))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Expr::constant(rat(n, d))
    }

    pub fn from_term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Expr { terms }
    }

    pub fn atom(a: Atom) -> Self {
        Expr::from_term(Monomial::atom(a, 1), Rational::one())
    }

    pub fn coord(c: JetCoordinate) -> Self {
        Expr::atom(Atom::Coord(c))
    }

    pub fn base(i: usize) -> Self {
        Expr::coord(JetCoordinate::Base(i))
    }

    pub fn fibre(sigma: usize, j: MultiIndex) -> Self {
        Expr::coord(JetCoordinate::fibre(sigma, j))
    }

    /// `y^σ_J` with `J` given as an unsorted list of directions.
    pub fn y(sigma: usize, j: &[usize]) -> Self {
        Expr::fibre(sigma, MultiIndex::new(j.to_vec()))
    }

    pub fn param(name: &str) -> Self {
        Expr::atom(Atom::Param(name.into()))
    }

    /// An underived opaque function of the given slots.
    pub fn opaque(name: &str, slots: Vec<JetCoordinate>) -> Self {
        let derivs = vec![0; slots.len()];
        Expr::atom(Atom::Opaque(Arc::new(Opaque {
            name: name.into(),
            derivs,
            slots: slots.into(),
        })))
    }

    pub fn apply(f: Func, arg: Expr) -> Result<Self> {
        if let Some(c) = arg.as_constant() {
            match f {
                Func::Exp | Func::Cos if c.is_zero() => return Ok(Expr::one()),
                Func::Sin | Func::Sqrt if c.is_zero() => return Ok(Expr::zero()),
                Func::Sqrt => {
                    if let Some(r) = rational_sqrt(&c) {
                        return Ok(Expr::constant(r));
                    }
                }
                _ => {}
            }
        }
        if f == Func::Recip {
            return arg.recip();
        }
        Ok(Expr::atom(Atom::Func(f, Arc::new(arg))))
    }

    pub fn sqrt(arg: Expr) -> Result<Self> {
        Expr::apply(Func::Sqrt, arg)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Returns the expression unchanged: every value is kept canonical.
    pub fn canonicalize(&self) -> Expr {
        self.clone()
    }

    /// Syntactic equality of canonical forms. Differences that involve
    /// elementary functions cannot be refuted syntactically and report
    /// [`Truth::Unknown`].
    pub fn equal(&self, other: &Expr) -> Truth {
        let diff = self - other;
        if diff.is_zero() {
            Truth::True
        } else if diff.has_functions() {
            Truth::Unknown
        } else {
            Truth::False
        }
    }

    pub fn has_functions(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.0.iter().any(|(a, _)| matches!(a, Atom::Func(..))))
    }

    pub fn has_opaque(&self) -> bool {
        fn atom_has(a: &Atom) -> bool {
            match a {
                Atom::Opaque(_) => true,
                Atom::Func(_, arg) => arg.has_opaque(),
                _ => false,
            }
        }
        self.terms
            .keys()
            .any(|m| m.0.iter().any(|(a, _)| atom_has(a)))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Expr {
        let mut out = Expr::zero();
        for (m2, c2) in &self.terms {
            out.add_term(m.mul(m2), c * c2);
        }
        out
    }

    pub fn pow(&self, e: i32) -> Result<Expr> {
        if e == 0 {
            return Ok(Expr::one());
        }
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        if let Some((m, c)) = self.as_monomial() {
            let m = Monomial(m.0.iter().map(|(a, k)| (a.clone(), k * e)).collect());
            return Ok(Expr::from_term(
                m,
                num_traits::pow::pow(c.clone(), e as usize),
            ));
        }
        let mut acc = Expr::one();
        let mut base = self.clone();
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `1/self`. Monomials invert exactly; other sums become a `Recip` atom
    /// of the sum normalized to leading coefficient one.
    pub fn recip(&self) -> Result<Expr> {
        if self.is_zero() {
            return Err(Error::Evaluation("division by zero".into()));
        }
        if let Some((m, c)) = self.as_monomial() {
            return Ok(Expr::from_term(m.inverse(), c.recip()));
        }
        let lead = self.terms.values().next().unwrap().clone();
        let normalized = self.scale(&lead.recip());
        Ok(Expr::from_term(
            Monomial::atom(Atom::Func(Func::Recip, Arc::new(normalized)), 1),
            lead.recip(),
        ))
    }

    pub fn div(&self, other: &Expr) -> Result<Expr> {
        Ok(self * &other.recip()?)
    }

    /// Applies a derivation specified by its values on atoms.
    pub fn derive(&self, rule: &mut dyn FnMut(&Atom) -> Expr) -> Expr {
        let mut cache: HashMap<Atom, Expr> = HashMap::new();
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            for (k, (a, e)) in m.0.iter().enumerate() {
                let da = cache.entry(a.clone()).or_insert_with(|| rule(a));
                if da.is_zero() {
                    continue;
                }
                let mut rest = m.0.clone();
                if *e == 1 {
                    rest.remove(k);
                } else {
                    rest[k].1 -= 1;
                }
                let coeff = c * int(*e as i64);
                for (m2, c2) in &da.terms {
                    out.add_term(Monomial(rest.clone()).mul(m2), &coeff * c2);
                }
            }
        }
        out
    }

    /// `f'(arg)` for the chain rule.
    fn func_derivative(f: Func, arg: &Arc<Expr>) -> Expr {
        let a = |g: Func| Expr::atom(Atom::Func(g, arg.clone()));
        match f {
            Func::Sqrt => Expr::from_term(
                Monomial::atom(Atom::Func(Func::Sqrt, arg.clone()), -1),
                rat(1, 2),
            ),
            Func::Exp => a(Func::Exp),
            Func::Sin => a(Func::Cos),
            Func::Cos => -a(Func::Sin),
            Func::Recip => Expr::from_term(
                Monomial::atom(Atom::Func(Func::Recip, arg.clone()), 2),
                int(-1),
            ),
        }
    }

    /// `∂e/∂c`.
    pub fn partial(&self, c: &JetCoordinate) -> Expr {
        self.derive(&mut |a| match a {
            Atom::Coord(c2) => {
                if c2 == c {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Atom::Param(_) => Expr::zero(),
            Atom::Opaque(o) => match o.slot_of(c) {
                Some(k) => Expr::atom(Atom::Opaque(Arc::new(o.bumped(k)))),
                None => Expr::zero(),
            },
            Atom::Func(f, arg) => {
                let inner = arg.partial(c);
                if inner.is_zero() {
                    Expr::zero()
                } else {
                    &Expr::func_derivative(*f, arg) * &inner
                }
            }
        })
    }

    /// The total derivative `d_i = ∂/∂x^i + Σ y^σ_{Ji} ∂/∂y^σ_J`.
    pub fn total_derivative(&self, i: usize) -> Expr {
        self.derive(&mut |a| total_derivative_of_atom(a, i))
    }

    /// `d_J`, the iterated total derivative.
    pub fn total_derivative_multi(&self, j: &MultiIndex) -> Expr {
        j.entries()
            .iter()
            .fold(self.clone(), |e, &i| e.total_derivative(i))
    }

    /// Rebuilds the expression with some atoms replaced. Function arguments
    /// are substituted recursively; opaque slots are left alone.
    pub fn substitute(&self, f: &mut dyn FnMut(&Atom) -> Option<Expr>) -> Result<Expr> {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let mut acc = Expr::constant(c.clone());
            for (a, e) in &m.0 {
                let replaced = match f(a) {
                    Some(r) => r,
                    None => match a {
                        Atom::Func(g, arg) => Expr::apply(*g, arg.substitute(f)?)?,
                        _ => Expr::atom(a.clone()),
                    },
                };
                acc = &acc * &replaced.pow(*e)?;
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// Every jet coordinate the expression depends on, including those
    /// inside function arguments and opaque slots.
    pub fn coordinates(&self) -> BTreeSet<JetCoordinate> {
        let mut out = BTreeSet::new();
        self.collect_coordinates(&mut out);
        out
    }

    fn collect_coordinates(&self, out: &mut BTreeSet<JetCoordinate>) {
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                match a {
                    Atom::Coord(c) => {
                        out.insert(c.clone());
                    }
                    Atom::Param(_) => {}
                    Atom::Opaque(o) => out.extend(o.slots.iter().cloned()),
                    Atom::Func(_, arg) => arg.collect_coordinates(out),
                }
            }
        }
    }

    /// Opaque functions by name, with their declared slots.
    pub fn opaques(&self) -> BTreeMap<String, Vec<JetCoordinate>> {
        let mut out = BTreeMap::new();
        self.collect_opaques(&mut out);
        out
    }

    fn collect_opaques(&self, out: &mut BTreeMap<String, Vec<JetCoordinate>>) {
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                match a {
                    Atom::Opaque(o) => {
                        out.insert(o.name.to_string(), o.slots.to_vec());
                    }
                    Atom::Func(_, arg) => arg.collect_opaques(out),
                    _ => {}
                }
            }
        }
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<String>) {
        for m in self.terms.keys() {
            for (a, _) in &m.0 {
                match a {
                    Atom::Param(p) => {
                        out.insert(p.to_string());
                    }
                    Atom::Func(_, arg) => arg.collect_params(out),
                    _ => {}
                }
            }
        }
    }

    /// Highest jet order among the coordinates the expression depends on.
    pub fn order(&self) -> usize {
        self.coordinates()
            .iter()
            .map(JetCoordinate::order)
            .max()
            .unwrap_or(0)
    }

    /// True when the expression is polynomial in every fibre coordinate.
    pub fn is_fibre_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.fibre_degree().is_some())
    }

    /// Splits into pieces of homogeneous fibre degree. Fails on
    /// non-polynomial fibre dependence.
    pub fn by_fibre_degree(&self) -> Result<BTreeMap<u32, Expr>> {
        let mut out: BTreeMap<u32, Expr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m
                .fibre_degree()
                .ok_or_else(|| Error::NotPolynomial(format!("{m:?}")))?;
            out.entry(d).or_default().add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Integer-exponent polynomial antiderivative in base coordinate `i`,
    /// vanishing at `x^i = 0`. Only for expressions whose dependence on
    /// `x^i` is through nonnegative powers of the bare coordinate.
    pub fn base_antiderivative(&self, i: usize) -> Result<Expr> {
        let xi = Atom::Coord(JetCoordinate::Base(i));
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let mut e = 0;
            let mut rest = Vec::new();
            for (a, k) in &m.0 {
                if *a == xi {
                    e = *k;
                } else {
                    if !Expr::atom(a.clone())
                        .partial(&JetCoordinate::Base(i))
                        .is_zero()
                    {
                        return Err(Error::NotPolynomial(format!(
                            "cannot integrate {a:?} in a base direction"
                        )));
                    }
                    rest.push((a.clone(), *k));
                }
            }
            if e < 0 {
                return Err(Error::NotPolynomial(
                    "negative power of a base coordinate".into(),
                ));
            }
            let m2 = Monomial(rest).mul(&Monomial::atom(xi.clone(), e + 1));
            out.add_term(m2, c / int(e as i64 + 1));
        }
        Ok(out)
    }
}

fn total_derivative_of_atom(a: &Atom, i: usize) -> Expr {
    match a {
        Atom::Coord(JetCoordinate::Base(j)) => {
            if *j == i {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Atom::Coord(JetCoordinate::Fibre { sigma, j }) => Expr::fibre(*sigma, j.append(i)),
        Atom::Param(_) => Expr::zero(),
        Atom::Opaque(o) => {
            let mut out = Expr::zero();
            for (k, slot) in o.slots.iter().enumerate() {
                let inner = total_derivative_of_atom(&Atom::Coord(slot.clone()), i);
                if !inner.is_zero() {
                    out = out + &Expr::atom(Atom::Opaque(Arc::new(o.bumped(k)))) * &inner;
                }
            }
            out
        }
        Atom::Func(f, arg) => {
            let inner = arg.total_derivative(i);
            if inner.is_zero() {
                Expr::zero()
            } else {
                &Expr::func_derivative(*f, arg) * &inner
            }
        }
    }
}

fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| Rational::new(n, d))
}

/// Approximate value of a rational, for float evaluation.
pub(crate) fn to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(mut self) -> Expr {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        &self - &rhs
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Expr::zero();
        for (m, c) in &small.terms {
            out = out + big.mul_term(m, c);
        }
        out
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        &self * &rhs
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a + b)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Self {
        Expr::constant(c)
    }
}

impl fmt::Display for Expr {
    /// Index-based rendering that needs no jet space; see
    /// [`Expr::to_text`] for named output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&render::IndexNames))
    }
}

pub use render::{latex_coordinate, latex_name, CoordinateNames, IndexNames};

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Expr {
        Expr::y(0, &[])
    }
    fn qd() -> Expr {
        Expr::y(0, &[0])
    }

    #[test]
    fn canonical_cancellation() {
        assert!((&(&q() * &qd()) - &(&qd() * &q())).is_zero());
        let lhs = (&q() + &qd()).pow(2).unwrap();
        let rhs = &(&q() * &q()) + &(&(&q() * &qd()).scale(&int(2)) + &(&qd() * &qd()));
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn derivatives() {
        let e = &q() * &qd();
        assert_eq!(
            e.partial(&JetCoordinate::fibre(0, MultiIndex::new(vec![0]))),
            q()
        );
        let q2 = q().pow(2).unwrap();
        assert_eq!(q2.total_derivative(0), (&q() * &qd()).scale(&int(2)));
        assert_eq!(
            q().total_derivative_multi(&MultiIndex::new(vec![0, 0])),
            Expr::y(0, &[0, 0])
        );
        assert_eq!(q().total_derivative_multi(&MultiIndex::empty()), q());
    }

    #[test]
    fn opaque_chain_rule() {
        let slots = vec![
            JetCoordinate::Base(0),
            JetCoordinate::fibre(0, MultiIndex::empty()),
            JetCoordinate::fibre(0, MultiIndex::new(vec![0])),
        ];
        let a = Expr::opaque("A", slots);
        let d = a.total_derivative(0);
        assert_eq!(d.num_terms(), 3);
        let third = JetCoordinate::fibre(0, MultiIndex::new(vec![0, 0, 0]));
        assert!(a.partial(&third).is_zero());
    }

    #[test]
    fn sqrt_square_is_not_decided() {
        let d = &q() * &qd();
        let s = Expr::sqrt(-&d).unwrap();
        assert_eq!((&(&s * &s) + &d).equal(&Expr::zero()), Truth::Unknown);
    }

    #[test]
    fn reciprocal_of_sum() {
        let s = &q() + &Expr::int(1);
        let r = s.recip().unwrap();
        let back = &r * &s;
        // shallow simplification keeps recip(q+1)*(q+1) unreduced
        assert_eq!(back.num_terms(), 2);
        assert_eq!(Expr::int(4).pow(-1).unwrap(), Expr::rational(1, 4));
    }
}
