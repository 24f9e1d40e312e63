//! Differential forms on `J^s Y` in the contact-adapted coframe
//! `{dx^i, ω^σ_J}` with `ω^σ_J = dy^σ_J − y^σ_{Jj} dx^j`.
//!
//! Because every form is held in this coframe, the contact splitting
//! `p_k` is a filter on the number of `ω` factors, and lifting to a higher
//! jet order only changes the recorded carrier order.

mod field;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::jet_space::{JetCoordinate, JetSpace, MultiIndex};
use crate::symexpr::{int, Expr, Rational};

pub use field::VectorField;

/// A basis covector. The derived order puts every `dx` before every `ω`,
/// `ω`s sorted by `(σ, J)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Covector {
    Dx(usize),
    Omega(usize, MultiIndex),
}

impl Covector {
    pub fn is_contact(&self) -> bool {
        matches!(self, Covector::Omega(..))
    }
}

/// Sorts a wedge product of basis covectors. Returns the sign of the
/// sorting permutation, or `None` if a covector repeats.
pub fn normalize_wedge(mut atoms: Vec<Covector>) -> Option<(bool, Vec<Covector>)> {
    let mut odd = false;
    for i in 1..atoms.len() {
        let mut k = i;
        while k > 0 && atoms[k - 1] > atoms[k] {
            atoms.swap(k - 1, k);
            odd = !odd;
            k -= 1;
        }
    }
    if atoms.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((odd, atoms))
}

/// A homogeneous form: `Σ coefficient · (sorted wedge of covectors)`.
///
/// Equality compares degree and terms only, so a form equals its lifts.
#[derive(Clone, Debug)]
pub struct Form {
    space: Arc<JetSpace>,
    order: usize,
    degree: usize,
    terms: BTreeMap<Vec<Covector>, Expr>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl Form {
    pub fn zero(space: &Arc<JetSpace>, degree: usize) -> Self {
        Form {
            space: space.clone(),
            order: 0,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn scalar(space: &Arc<JetSpace>, f: Expr) -> Self {
        let mut out = Form::zero(space, 0);
        out.push(Vec::new(), f);
        out.fix_order(0)
    }

    pub fn dx(space: &Arc<JetSpace>, i: usize) -> Self {
        let mut out = Form::zero(space, 1);
        out.push(vec![Covector::Dx(i)], Expr::one());
        out
    }

    pub fn omega(space: &Arc<JetSpace>, sigma: usize, j: MultiIndex) -> Self {
        let mut out = Form::zero(space, 1);
        let order = j.len() + 1;
        out.push(vec![Covector::Omega(sigma, j)], Expr::one());
        out.fix_order(order)
    }

    /// `ω^σ_J` with `J` given as an unsorted list.
    pub fn w(space: &Arc<JetSpace>, sigma: usize, j: &[usize]) -> Self {
        Form::omega(space, sigma, MultiIndex::new(j.to_vec()))
    }

    /// `ω₀ = dx¹ ∧ … ∧ dxⁿ`.
    pub fn volume(space: &Arc<JetSpace>) -> Self {
        let mut out = Form::zero(space, space.n());
        out.push((0..space.n()).map(Covector::Dx).collect(), Expr::one());
        out
    }

    /// `ω_i = ∂/∂x^i ⌟ ω₀`.
    pub fn volume_minus(space: &Arc<JetSpace>, i: usize) -> Self {
        Form::volume(space)
            .contract(&VectorField::total(space, i))
            .expect("complete field")
    }

    /// The differential of a coordinate, rewritten in the contact coframe:
    /// `dy^σ_J = ω^σ_J + y^σ_{Jj} dx^j`.
    pub fn coordinate_differential(space: &Arc<JetSpace>, c: &JetCoordinate) -> Self {
        match c {
            JetCoordinate::Base(i) => Form::dx(space, *i),
            JetCoordinate::Fibre { sigma, j } => {
                let mut out = Form::omega(space, *sigma, j.clone());
                for jj in 0..space.n() {
                    out = &out + &Form::dx(space, jj).scale(&Expr::fibre(*sigma, j.append(jj)));
                }
                out.fix_order(j.len() + 1)
            }
        }
    }

    /// Builds a form from coordinate-basis terms `f · dc₁ ∧ … ∧ dc_q` given
    /// on `J^r Y`; the result lives on `J^{r+1} Y`.
    pub fn ingest_coordinate_basis(
        space: &Arc<JetSpace>,
        degree: usize,
        terms: &[(Expr, Vec<JetCoordinate>)],
        r: usize,
    ) -> Result<Self> {
        let mut out = Form::zero(space, degree);
        for (f, cs) in terms {
            if cs.len() != degree {
                return Err(Error::Precondition(format!(
                    "term of degree {} in a {degree}-form",
                    cs.len()
                )));
            }
            if f.order() > r {
                return Err(Error::Order(format!(
                    "coefficient of order {} exceeds {r}",
                    f.order()
                )));
            }
            let mut acc = Form::scalar(space, f.clone());
            for c in cs {
                space.check(c)?;
                if c.order() > r {
                    return Err(Error::Order(format!(
                        "d{} exceeds order {r}",
                        space.coordinate_name(c)
                    )));
                }
                acc = acc.wedge(&Form::coordinate_differential(space, c));
            }
            out = &out + &acc;
        }
        Ok(out.fix_order(r + 1))
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Covector>, &Expr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, atoms: &[Covector]) -> Expr {
        self.terms.get(atoms).cloned().unwrap_or_default()
    }

    /// Adds `f · atoms`, sorting the wedge.
    pub fn push(&mut self, atoms: Vec<Covector>, f: Expr) {
        if f.is_zero() {
            return;
        }
        debug_assert_eq!(atoms.len(), self.degree, "degree mismatch");
        let Some((odd, atoms)) = normalize_wedge(atoms) else {
            return;
        };
        let f = if odd { -f } else { f };
        use std::collections::btree_map::Entry;
        match self.terms.entry(atoms) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The smallest carrier order compatible with the content.
    pub fn required_order(&self) -> usize {
        let mut s = 0;
        for (atoms, f) in &self.terms {
            s = s.max(f.order());
            for a in atoms {
                if let Covector::Omega(_, j) = a {
                    s = s.max(j.len() + 1);
                }
            }
        }
        s
    }

    /// Sets the carrier order to `max(nominal, required)`.
    pub fn fix_order(mut self, nominal: usize) -> Self {
        self.order = nominal.max(self.required_order());
        self
    }

    /// Records a higher carrier order; the coframe representation is unchanged.
    pub fn lift(&self, s: usize) -> Result<Self> {
        if s < self.order {
            return Err(Error::Order(format!(
                "cannot lift a form of order {} to {s}",
                self.order
            )));
        }
        let mut out = self.clone();
        out.order = s;
        Ok(out)
    }

    pub fn scale(&self, f: &Expr) -> Self {
        let mut out = Form::zero(&self.space, self.degree);
        if f.is_zero() {
            return out.fix_order(self.order);
        }
        for (atoms, g) in &self.terms {
            let p = g * f;
            if !p.is_zero() {
                out.terms.insert(atoms.clone(), p);
            }
        }
        out.fix_order(self.order)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&Expr::constant(c.clone()))
    }

    pub fn wedge(&self, other: &Form) -> Self {
        let mut out = Form::zero(&self.space, self.degree + other.degree);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                let mut atoms = a.clone();
                atoms.extend(b.iter().cloned());
                out.push(atoms, f * g);
            }
        }
        out.fix_order(self.order.max(other.order))
    }

    fn map_terms(&self, mut keep: impl FnMut(&[Covector]) -> bool) -> Self {
        let mut out = Form::zero(&self.space, self.degree);
        out.terms = self
            .terms
            .iter()
            .filter(|(a, _)| keep(a))
            .map(|(a, f)| (a.clone(), f.clone()))
            .collect();
        out.order = self.order;
        out
    }

    /// `p_k`: the terms with exactly `k` contact factors.
    pub fn contact_component(&self, k: usize) -> Self {
        self.map_terms(|a| a.iter().filter(|c| c.is_contact()).count() == k)
    }

    /// `h = p₀`.
    pub fn horizontal(&self) -> Self {
        self.contact_component(0)
    }

    /// Contact degrees present in the form.
    pub fn contact_degrees(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .map(|a| a.iter().filter(|c| c.is_contact()).count())
            .collect()
    }

    /// The lowest contact degree any form of this degree can have.
    pub fn min_contact_degree(&self) -> usize {
        self.degree.saturating_sub(self.n())
    }

    pub fn is_strongly_contact(&self) -> Result<bool> {
        if self.degree <= self.n() {
            return Err(Error::DegreeTooLow {
                op: "is_strongly_contact",
                degree: self.degree,
                min: self.n(),
            });
        }
        Ok(self.contact_component(self.degree - self.n()).is_zero())
    }

    /// The exterior derivative; the carrier order goes up by exactly one.
    pub fn exterior_d(&self) -> Self {
        let n = self.n();
        let mut out = Form::zero(&self.space, self.degree + 1);
        for (atoms, f) in &self.terms {
            // df ∧ atoms
            for i in 0..n {
                let di = f.total_derivative(i);
                if !di.is_zero() {
                    let mut a = vec![Covector::Dx(i)];
                    a.extend(atoms.iter().cloned());
                    out.push(a, di);
                }
            }
            for c in f.coordinates() {
                if let JetCoordinate::Fibre { sigma, j } = &c {
                    let p = f.partial(&c);
                    if !p.is_zero() {
                        let mut a = vec![Covector::Omega(*sigma, j.clone())];
                        a.extend(atoms.iter().cloned());
                        out.push(a, p);
                    }
                }
            }
            // f · d(atoms), with dω^σ_J = dx^j ∧ ω^σ_{Jj}
            for (pos, atom) in atoms.iter().enumerate() {
                if let Covector::Omega(sigma, j) = atom {
                    let sign = if pos % 2 == 0 { f.clone() } else { -f };
                    for jj in 0..n {
                        let mut a = atoms[..pos].to_vec();
                        a.push(Covector::Dx(jj));
                        a.push(Covector::Omega(*sigma, j.append(jj)));
                        a.extend(atoms[pos + 1..].iter().cloned());
                        out.push(a, sign.clone());
                    }
                }
            }
        }
        out.fix_order(self.order + 1)
    }

    /// `d_H`, applied to each contact component: `p_k d p_k`.
    pub fn d_h(&self) -> Self {
        self.split_d(0)
    }

    /// `d_V`, applied to each contact component: `p_{k+1} d p_k`.
    pub fn d_v(&self) -> Self {
        self.split_d(1)
    }

    fn split_d(&self, shift: usize) -> Self {
        let mut out = Form::zero(&self.space, self.degree + 1);
        for k in self.contact_degrees() {
            let pk = self.contact_component(k);
            out = &out + &pk.exterior_d().contact_component(k + shift);
        }
        out.fix_order(self.order + 1)
    }

    /// Interior product `X ⌟ ρ`.
    pub fn contract(&self, x: &VectorField) -> Result<Self> {
        if self.degree == 0 {
            return Ok(Form::zero(&self.space, 0));
        }
        let mut out = Form::zero(&self.space, self.degree - 1);
        for (atoms, f) in &self.terms {
            for (pos, atom) in atoms.iter().enumerate() {
                let p = x.pairing(atom)?;
                if p.is_zero() {
                    continue;
                }
                let mut a = atoms.clone();
                a.remove(pos);
                let coeff = f * &p;
                out.push(a, if pos % 2 == 0 { coeff } else { -coeff });
            }
        }
        Ok(out.fix_order(self.order.max(x.order_hint())))
    }

    /// `D_i = L_{d_i}`: total derivative acting on forms, with
    /// `D_i ω^σ_J = ω^σ_{Ji}` and `D_i dx^j = 0`.
    pub fn total_derivative(&self, i: usize) -> Self {
        let mut out = Form::zero(&self.space, self.degree);
        for (atoms, f) in &self.terms {
            out.push(atoms.clone(), f.total_derivative(i));
            for (pos, atom) in atoms.iter().enumerate() {
                if let Covector::Omega(sigma, j) = atom {
                    let mut a = atoms.clone();
                    a[pos] = Covector::Omega(*sigma, j.append(i));
                    out.push(a, f.clone());
                }
            }
        }
        out.fix_order(self.order + 1)
    }

    pub fn total_derivative_multi(&self, j: &MultiIndex) -> Self {
        j.entries()
            .iter()
            .fold(self.clone(), |acc, &i| acc.total_derivative(i))
    }

    /// Applies a map to every coefficient.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Expr) -> Result<Expr>) -> Result<Self> {
        let mut out = Form::zero(&self.space, self.degree);
        for (atoms, g) in &self.terms {
            out.push(atoms.clone(), f(g)?);
        }
        Ok(out.fix_order(self.order))
    }

    /// Pairs `(σ, J)` of every `ω^σ_J` occurring in the form.
    pub fn contact_atoms(&self) -> BTreeSet<(usize, MultiIndex)> {
        let mut out = BTreeSet::new();
        for atoms in self.terms.keys() {
            for a in atoms {
                if let Covector::Omega(s, j) = a {
                    out.insert((*s, j.clone()));
                }
            }
        }
        out
    }

    /// All coefficients are polynomial in the fibre coordinates.
    pub fn is_fibre_polynomial(&self) -> bool {
        self.terms.values().all(Expr::is_fibre_polynomial)
    }

    pub fn has_functions(&self) -> bool {
        self.terms.values().any(Expr::has_functions)
    }

    /// Components `E_σ` of a form `Σ E_σ ω^σ ∧ ω₀` (only those terms are read).
    pub fn source_components(&self) -> Vec<Expr> {
        let n = self.n();
        let sign = if n % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        (0..self.space.m())
            .map(|sigma| {
                let mut key: Vec<Covector> = (0..n).map(Covector::Dx).collect();
                key.push(Covector::Omega(sigma, MultiIndex::empty()));
                self.coefficient(&key).scale(&sign)
            })
            .collect()
    }

    /// `Σ E_σ ω^σ ∧ ω₀`.
    pub fn dynamical(space: &Arc<JetSpace>, components: &[Expr]) -> Self {
        let vol = Form::volume(space);
        let mut out = Form::zero(space, space.n() + 1);
        for (sigma, e) in components.iter().enumerate() {
            out = &out
                + &Form::omega(space, sigma, MultiIndex::empty())
                    .wedge(&vol)
                    .scale(e);
        }
        out
    }

    /// `L ω₀`.
    pub fn lagrangian(space: &Arc<JetSpace>, l: Expr) -> Self {
        Form::volume(space).scale(&l)
    }

    /// Coefficient of `ω₀` in a horizontal `n`-form.
    pub fn lagrangian_density(&self) -> Expr {
        let key: Vec<Covector> = (0..self.n()).map(Covector::Dx).collect();
        self.coefficient(&key)
    }

    fn combine(&self, other: &Form, negate: bool) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "adding forms of different degrees"
        );
        let mut out = self.clone();
        for (atoms, f) in &other.terms {
            let f = if negate { -f } else { f.clone() };
            let sum = match out.terms.get(atoms) {
                Some(g) => g + &f,
                None => f,
            };
            if sum.is_zero() {
                out.terms.remove(atoms);
            } else {
                out.terms.insert(atoms.clone(), sum);
            }
        }
        out.order = self.order.max(other.order);
        out
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.combine(rhs, false)
    }
}

impl Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.combine(rhs, true)
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        self.combine(&rhs, false)
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        self.combine(&rhs, true)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale_rational(&int(-1))
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
