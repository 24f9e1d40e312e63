use std::collections::BTreeMap;
use std::sync::Arc;

use super::Covector;
use crate::error::{Error, Result};
use crate::jet_space::{JetSpace, MultiIndex};
use crate::symexpr::Expr;

/// A vector field along a jet projection, stored by its pairings with the
/// contact coframe: `X ⌟ dx^i` and `X ⌟ ω^σ_J`.
///
/// For a field written in coordinates as `ξ^i ∂/∂x^i + Ξ^σ_J ∂/∂y^σ_J`
/// these are `ξ^i` and `Ξ^σ_J − y^σ_{Ji} ξ^i`; the total derivative `d_i`
/// pairs only with `dx^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    dx: Vec<Expr>,
    omega: BTreeMap<(usize, MultiIndex), Expr>,
    /// `None`: absent contact pairings are zero. `Some(r)`: they are zero up
    /// to `|J| = r` and unknown beyond.
    known_to: Option<usize>,
}

impl VectorField {
    pub fn new(
        dx: Vec<Expr>,
        omega: BTreeMap<(usize, MultiIndex), Expr>,
        known_to: Option<usize>,
    ) -> Self {
        VectorField {
            dx,
            omega,
            known_to,
        }
    }

    pub fn zero(space: &Arc<JetSpace>) -> Self {
        VectorField {
            dx: vec![Expr::zero(); space.n()],
            omega: BTreeMap::new(),
            known_to: None,
        }
    }

    /// The total derivative `d_i`.
    pub fn total(space: &Arc<JetSpace>, i: usize) -> Self {
        let mut f = VectorField::zero(space);
        f.dx[i] = Expr::one();
        f
    }

    /// `∂/∂y^σ_J`.
    pub fn vertical_basis(space: &Arc<JetSpace>, sigma: usize, j: MultiIndex) -> Self {
        let mut f = VectorField::zero(space);
        f.omega.insert((sigma, j), Expr::one());
        f
    }

    /// A field given by coordinate components up to order `r`.
    pub fn from_coordinates(
        space: &Arc<JetSpace>,
        xi: Vec<Expr>,
        fibre: &BTreeMap<(usize, MultiIndex), Expr>,
        r: usize,
    ) -> Self {
        let mut omega = BTreeMap::new();
        for c in space.enumerate_coordinates(r) {
            if let crate::jet_space::JetCoordinate::Fibre { sigma, j } = c {
                let mut v = fibre.get(&(sigma, j.clone())).cloned().unwrap_or_default();
                for (i, x) in xi.iter().enumerate() {
                    if !x.is_zero() {
                        v = &v - &(&Expr::fibre(sigma, j.append(i)) * x);
                    }
                }
                if !v.is_zero() {
                    omega.insert((sigma, j), v);
                }
            }
        }
        VectorField {
            dx: xi,
            omega,
            known_to: Some(r),
        }
    }

    /// The coordinate field `∂/∂x^i`, known up to order `r`.
    pub fn base_partial(space: &Arc<JetSpace>, i: usize, r: usize) -> Self {
        let mut xi = vec![Expr::zero(); space.n()];
        xi[i] = Expr::one();
        VectorField::from_coordinates(space, xi, &BTreeMap::new(), r)
    }

    pub fn dx_components(&self) -> &[Expr] {
        &self.dx
    }

    pub fn omega_components(&self) -> &BTreeMap<(usize, MultiIndex), Expr> {
        &self.omega
    }

    pub fn is_vertical(&self) -> bool {
        self.dx.iter().all(Expr::is_zero)
    }

    pub fn pairing(&self, a: &Covector) -> Result<Expr> {
        match a {
            Covector::Dx(i) => Ok(self.dx.get(*i).cloned().unwrap_or_default()),
            Covector::Omega(sigma, j) => {
                if let Some(v) = self.omega.get(&(*sigma, j.clone())) {
                    return Ok(v.clone());
                }
                match self.known_to {
                    Some(r) if j.len() > r => Err(Error::Order(format!(
                        "field known to order {r} paired with a contact form of order {}",
                        j.len()
                    ))),
                    _ => Ok(Expr::zero()),
                }
            }
        }
    }

    /// Jet order the pairings depend on.
    pub(crate) fn order_hint(&self) -> usize {
        self.dx
            .iter()
            .chain(self.omega.values())
            .map(Expr::order)
            .max()
            .unwrap_or(0)
    }
}
