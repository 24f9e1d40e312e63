//! Projectable vector fields, their jet prolongations, Lie derivatives and
//! Noether currents.

mod currents;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{Form, VectorField};
use crate::jet_space::{JetCoordinate, JetSpace, MultiIndex};
use crate::probe::{self, ProbeConfig};
use crate::symexpr::{Expr, Truth};
use crate::variational::class_representative;

pub use currents::{
    first_variation_split, higher_lie_identity_check, krbek_identity_check, nbh_current,
    noether_current, FirstVariation, NbhCurrent, NoetherCurrent,
};

/// `ξ^i(x) ∂/∂x^i + Ξ^σ ∂/∂y^σ`. A generalized field lets `Ξ^σ` depend on
/// jet coordinates; `ξ^i` always depends on the base only.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectableVectorField {
    space: Arc<JetSpace>,
    xi: Vec<Expr>,
    fibre: Vec<Expr>,
    generalized: bool,
}

impl ProjectableVectorField {
    pub fn new(space: &Arc<JetSpace>, xi: Vec<Expr>, fibre: Vec<Expr>) -> Result<Self> {
        Self::build(space, xi, fibre, false)
    }

    /// A field whose fibre components may depend on derivatives.
    pub fn generalized(space: &Arc<JetSpace>, xi: Vec<Expr>, fibre: Vec<Expr>) -> Result<Self> {
        Self::build(space, xi, fibre, true)
    }

    fn build(
        space: &Arc<JetSpace>,
        xi: Vec<Expr>,
        fibre: Vec<Expr>,
        generalized: bool,
    ) -> Result<Self> {
        if xi.len() != space.n() || fibre.len() != space.m() {
            return Err(Error::Precondition(format!(
                "field needs {} base and {} fibre components",
                space.n(),
                space.m()
            )));
        }
        for x in &xi {
            if x.coordinates().iter().any(JetCoordinate::is_fibre) {
                return Err(Error::Precondition(
                    "base components must depend on the base only".into(),
                ));
            }
        }
        if !generalized && fibre.iter().any(|f| f.order() > 0) {
            return Err(Error::Precondition(
                "fibre components of a projectable field must live on Y".into(),
            ));
        }
        Ok(ProjectableVectorField {
            space: space.clone(),
            xi,
            fibre,
            generalized,
        })
    }

    pub fn vertical(space: &Arc<JetSpace>, fibre: Vec<Expr>) -> Result<Self> {
        Self::new(space, vec![Expr::zero(); space.n()], fibre)
    }

    /// `∂/∂x^i`.
    pub fn base_translation(space: &Arc<JetSpace>, i: usize) -> Self {
        let mut xi = vec![Expr::zero(); space.n()];
        xi[i] = Expr::one();
        ProjectableVectorField {
            space: space.clone(),
            xi,
            fibre: vec![Expr::zero(); space.m()],
            generalized: false,
        }
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn xi(&self) -> &[Expr] {
        &self.xi
    }

    pub fn fibre(&self) -> &[Expr] {
        &self.fibre
    }

    pub fn is_generalized(&self) -> bool {
        self.generalized
    }

    pub fn is_vertical(&self) -> bool {
        self.xi.iter().all(Expr::is_zero)
    }
}

/// `J^rΞ`, with coordinate components `Ξ^σ_J` for `|J| ≤ r`.
#[derive(Clone, Debug)]
pub struct ProlongedVectorField {
    space: Arc<JetSpace>,
    order: usize,
    xi: Vec<Expr>,
    components: BTreeMap<(usize, MultiIndex), Expr>,
}

/// Prolongs by `Ξ^σ_{Ji} = d_iΞ^σ_J − y^σ_{Jl} ∂ξ^l/∂x^i`.
pub fn prolong(field: &ProjectableVectorField, r: usize) -> ProlongedVectorField {
    let space = &field.space;
    let n = space.n();
    let mut components = BTreeMap::new();
    for (sigma, f) in field.fibre.iter().enumerate() {
        components.insert((sigma, MultiIndex::empty()), f.clone());
    }
    for c in space.enumerate_coordinates(r) {
        let JetCoordinate::Fibre { sigma, j } = c else {
            continue;
        };
        if j.is_empty() {
            continue;
        }
        let (parent, i) = j.pop_last().expect("nonempty");
        let value = next_component(
            &components[&(sigma, parent.clone())],
            &field.xi,
            sigma,
            &parent,
            i,
            n,
        );
        components.insert((sigma, j), value);
    }
    ProlongedVectorField {
        space: space.clone(),
        order: r,
        xi: field.xi.clone(),
        components,
    }
}

fn next_component(
    prev: &Expr,
    xi: &[Expr],
    sigma: usize,
    parent: &MultiIndex,
    i: usize,
    n: usize,
) -> Expr {
    let mut v = prev.total_derivative(i);
    for (l, x) in xi.iter().enumerate().take(n) {
        let dx = x.partial(&JetCoordinate::Base(i));
        if !dx.is_zero() {
            v = &v - &(&Expr::fibre(sigma, parent.append(l)) * &dx);
        }
    }
    v
}

impl ProlongedVectorField {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn xi(&self) -> &[Expr] {
        &self.xi
    }

    /// `Ξ^σ_J`.
    pub fn component(&self, sigma: usize, j: &MultiIndex) -> Option<&Expr> {
        self.components.get(&(sigma, j.clone()))
    }

    pub fn components(&self) -> &BTreeMap<(usize, MultiIndex), Expr> {
        &self.components
    }

    /// Checks the prolongation recursion on every stored component, for
    /// every way of peeling one index off `J`.
    pub fn recursion_holds(&self) -> bool {
        let n = self.space.n();
        self.components.iter().all(|((sigma, j), v)| {
            (0..j.len()).all(|k| {
                let mut rest = j.entries().to_vec();
                let i = rest.remove(k);
                let parent = MultiIndex::new(rest);
                match self.components.get(&(*sigma, parent.clone())) {
                    Some(prev) => *v == next_component(prev, &self.xi, *sigma, &parent, i, n),
                    None => false,
                }
            })
        })
    }

    /// The field as it acts on forms.
    pub fn as_field(&self) -> VectorField {
        VectorField::from_coordinates(&self.space, self.xi.clone(), &self.components, self.order)
    }

    /// `(Z_H, Z_V)` with `Z_H = ξ^i d_i` and `Z_V` vertical with components
    /// `Ξ^σ_J − y^σ_{Ji} ξ^i`.
    pub fn split_hv(&self) -> (VectorField, VectorField) {
        let full = self.as_field();
        let horizontal = VectorField::new(self.xi.clone(), BTreeMap::new(), None);
        let vertical = VectorField::new(
            vec![Expr::zero(); self.space.n()],
            full.omega_components().clone(),
            Some(self.order),
        );
        (horizontal, vertical)
    }

    /// Coordinate components of `Z_V`.
    pub fn vertical_components(&self) -> BTreeMap<(usize, MultiIndex), Expr> {
        let mut out = BTreeMap::new();
        for ((sigma, j), v) in &self.components {
            let mut w = v.clone();
            for (i, x) in self.xi.iter().enumerate() {
                if !x.is_zero() {
                    w = &w - &(&Expr::fibre(*sigma, j.append(i)) * x);
                }
            }
            out.insert((*sigma, j.clone()), w);
        }
        out
    }
}

/// `L_Z ρ = Z ⌟ dρ + d(Z ⌟ ρ)`, with `Z` prolonged far enough for `ρ`.
pub fn lie_derivative(field: &ProjectableVectorField, rho: &Form) -> Result<Form> {
    let z = prolong(field, rho.order()).as_field();
    lie_derivative_along(&z, rho)
}

/// The Lie derivative along an already prolonged field.
pub fn lie_derivative_along(z: &VectorField, rho: &Form) -> Result<Form> {
    let a = rho.exterior_d().contract(z)?;
    if rho.degree() == 0 {
        return Ok(a);
    }
    Ok(&a + &rho.contract(z)?.exterior_d())
}

/// Whether `Ξ` is a symmetry: `L_{JΞ}λ = 0` for a Lagrangian, or the class
/// of `L_{JΞ}σ` vanishes for a form of degree above `n`. Equalities the
/// canonicalizer cannot settle fall back to the random-point probe.
pub fn symmetry_check(field: &ProjectableVectorField, sigma: &Form) -> Result<bool> {
    let l = lie_derivative(field, sigma)?;
    let target = if sigma.degree() > sigma.n() {
        class_representative(&l)?
    } else {
        l
    };
    if target.is_zero() {
        return Ok(true);
    }
    match form_is_zero(&target) {
        Truth::True => Ok(true),
        Truth::False => Ok(false),
        Truth::Unknown => Ok(probe::form_vanishes(&target, &ProbeConfig::default())?),
    }
}

fn form_is_zero(f: &Form) -> Truth {
    let mut unknown = false;
    for (_, c) in f.terms() {
        match c.equal(&Expr::zero()) {
            Truth::False => return Truth::False,
            Truth::Unknown => unknown = true,
            Truth::True => {}
        }
    }
    if unknown {
        Truth::Unknown
    } else {
        Truth::True
    }
}

#[cfg(test)]
mod tests;
