use super::helmholtz;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::jet_space::{JetCoordinate, MultiIndex};
use crate::symexpr::{rat, Expr};

/// The reduced Helmholtz form of a second-order dynamical form in
/// mechanics, together with the canonical one and the 2-contact witness
/// `η` relating them.
#[derive(Clone, Debug)]
pub struct ReducedHelmholtz {
    pub reduced: Form,
    pub canonical: Form,
    pub eta: Form,
    /// `H̄ − H − p₂dη`.
    pub residue: Form,
}

impl ReducedHelmholtz {
    pub fn holds(&self) -> bool {
        self.residue.is_zero()
    }
}

fn q(sigma: usize, order: usize) -> JetCoordinate {
    JetCoordinate::fibre(sigma, MultiIndex::new(vec![0; order]))
}

/// `H̄_ε`, with
/// `η = −¼ d/dt(∂E_σ/∂q̈^ν − ∂E_ν/∂q̈^σ) ω^ν ∧ ω^σ`.
pub fn reduced_helmholtz_mechanics(eps: &Form) -> Result<ReducedHelmholtz> {
    let space = eps.space();
    if space.n() != 1 {
        return Err(Error::Precondition(
            "reduced Helmholtz form is defined for n = 1".into(),
        ));
    }
    let canonical = helmholtz(eps)?;
    let e = eps.source_components();
    if e.iter().any(|f| f.order() > 2) {
        return Err(Error::Order(
            "reduced Helmholtz form needs a second-order dynamical form".into(),
        ));
    }
    let m = space.m();
    let half = Expr::constant(rat(1, 2));
    let quarter = Expr::constant(rat(-1, 4));
    let d = |f: &Expr, nu: usize, r: usize| f.partial(&q(nu, r));
    let dt = Form::dx(space, 0);
    let mut reduced = Form::zero(space, 3);
    let mut eta = Form::zero(space, 2);
    for s in 0..m {
        let tail = Form::omega(space, s, MultiIndex::empty()).wedge(&dt);
        for nu in 0..m {
            let c0 = &(&d(&e[s], nu, 0) - &d(&e[nu], s, 0))
                - &(&half * &(&d(&e[s], nu, 1) - &d(&e[nu], s, 1)).total_derivative(0));
            let c1 = &(&d(&e[s], nu, 1) + &d(&e[nu], s, 1))
                - &(&d(&e[s], nu, 2) + &d(&e[nu], s, 2)).total_derivative(0);
            let c2 = &d(&e[s], nu, 2) - &d(&e[nu], s, 2);
            let mut bracket = Form::zero(space, 1);
            for (r, c) in [(0, c0), (1, c1), (2, c2.clone())] {
                bracket = &bracket + &Form::omega(space, nu, MultiIndex::new(vec![0; r])).scale(&c);
            }
            reduced = &reduced + &bracket.wedge(&tail).scale(&half);
            let w = Form::omega(space, nu, MultiIndex::empty()).wedge(&Form::omega(
                space,
                s,
                MultiIndex::empty(),
            ));
            eta = &eta + &w.scale(&(&quarter * &c2.total_derivative(0)));
        }
    }
    let reduced = reduced.fix_order(3);
    let eta = eta.fix_order(3);
    let residue = &(&reduced - &canonical) - &eta.exterior_d().contact_component(2);
    Ok(ReducedHelmholtz {
        reduced,
        canonical,
        eta,
        residue,
    })
}
