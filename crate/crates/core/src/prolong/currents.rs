use super::{
    lie_derivative, lie_derivative_along, prolong, symmetry_check, ProjectableVectorField,
};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::symexpr::Expr;
use crate::variational::{
    cartan_form, euler_lagrange, interior_euler, is_lepage, is_variationally_trivial,
};

/// `Φ(Ξ) = JΞ ⌟ ρ` for a Lepage form `ρ`, and its horizontal part.
#[derive(Clone, Debug)]
pub struct NoetherCurrent {
    pub full: Form,
    pub horizontal: Form,
}

pub fn noether_current(rho: &Form, field: &ProjectableVectorField) -> Result<NoetherCurrent> {
    if !is_lepage(rho)? {
        return Err(Error::Precondition(
            "Noether currents need a Lepage form".into(),
        ));
    }
    let z = prolong(field, rho.order()).as_field();
    let full = rho.contract(&z)?;
    let horizontal = full.horizontal();
    Ok(NoetherCurrent { full, horizontal })
}

/// `L_{JΞ}λ = h(JΞ ⌟ dθ_λ) + d_H φ` with the canonical current
/// `φ = h(JΞ ⌟ θ_λ)`.
#[derive(Clone, Debug)]
pub struct FirstVariation {
    /// `Ξ_V^σ E_σ ω₀`.
    pub euler_term: Form,
    pub current: Form,
    /// `d_H φ`.
    pub boundary_term: Form,
    pub lie: Form,
}

pub fn first_variation_split(
    lambda: &Form,
    field: &ProjectableVectorField,
) -> Result<FirstVariation> {
    if lambda.degree() != lambda.n() || lambda.horizontal() != *lambda {
        return Err(Error::Precondition(
            "first variation needs a horizontal n-form".into(),
        ));
    }
    let theta = cartan_form(lambda)?;
    let d_theta = theta.exterior_d();
    let z = prolong(field, d_theta.order()).as_field();
    let euler_term = d_theta.contract(&z)?.horizontal();
    let current = theta.contract(&z)?.horizontal();
    let boundary_term = current.exterior_d().horizontal();
    let lie = lie_derivative(field, lambda)?;
    if &euler_term + &boundary_term != lie {
        return Err(Error::Identity(
            "first variation terms do not add up to the Lie derivative".into(),
        ));
    }
    Ok(FirstVariation {
        euler_term,
        current,
        boundary_term,
        lie,
    })
}

/// Class-level residue of
/// `L_{JΞ}𝓘ρ = JΞ_V ⌟ 𝓘(d𝓘ρ) + 𝓘(d(JΞ_V ⌟ 𝓘ρ))`.
pub fn higher_lie_identity_check(field: &ProjectableVectorField, rho: &Form) -> Result<Form> {
    let canonical = interior_euler(rho)?;
    let next = interior_euler(&canonical.exterior_d())?;
    let z = prolong(field, next.order().max(canonical.order()) + 1);
    let (_, zv) = z.split_hv();
    let lie = lie_derivative_along(&z.as_field(), &canonical)?;
    let hooked = next.contract(&zv)?;
    let pushed = interior_euler(&canonical.contract(&zv)?.exterior_d())?;
    interior_euler(&(&(&lie - &hooked) - &pushed))
}

/// Residue of `JΞ ⌟ p_i d p_iρ + p_{i−1} d(JΞ ⌟ p_iρ)` for vertical `Ξ`.
pub fn krbek_identity_check(field: &ProjectableVectorField, rho: &Form, i: usize) -> Result<Form> {
    if !field.is_vertical() {
        return Err(Error::Precondition(
            "the contact-degree identity needs a vertical field".into(),
        ));
    }
    if i == 0 || i > rho.degree() {
        return Err(Error::Precondition(format!(
            "contact degree {i} out of range"
        )));
    }
    let p = rho.contact_component(i);
    let z = prolong(field, rho.order() + 1).as_field();
    let lhs = p.exterior_d().contact_component(i).contract(&z)?;
    let rhs = p.contract(&z)?.exterior_d().contact_component(i - 1);
    Ok(&lhs + &rhs)
}

/// A Noether–Bessel-Hagen current `φ − β` of a symmetry of `E_λ`, where
/// `L_{JΞ}λ = d_H β`. It satisfies `d_H(φ − β) = Σ multiplier_σ E_σ ω₀`.
#[derive(Clone, Debug)]
pub struct NbhCurrent {
    pub current: Form,
    pub beta: Form,
    /// `−Ξ_V^σ`.
    pub multipliers: Vec<Expr>,
    pub euler: Form,
}

pub fn nbh_current(field: &ProjectableVectorField, lambda: &Form) -> Result<NbhCurrent> {
    let space = lambda.space();
    let euler = euler_lagrange(lambda)?;
    if !symmetry_check(field, &euler)? {
        return Err(Error::Precondition(
            "the field is not a symmetry of the Euler–Lagrange form".into(),
        ));
    }
    let fv = first_variation_split(lambda, field)?;
    let beta = if fv.lie.is_zero() {
        Form::zero(space, space.n() - 1)
    } else {
        let t = is_variationally_trivial(&fv.lie)?;
        match t.primitive {
            Some(b) if t.trivial => b.horizontal(),
            _ => {
                return Err(Error::NotPolynomial(
                    "no primitive for the Lie derivative of λ".into(),
                ))
            }
        }
    };
    let current = &fv.current - &beta;
    let z = prolong(field, 0);
    let multipliers: Vec<Expr> = z
        .vertical_components()
        .into_iter()
        .filter(|((_, j), _)| j.is_empty())
        .map(|(_, v)| -v)
        .collect();
    let components = euler.source_components();
    let source: Expr = multipliers
        .iter()
        .zip(&components)
        .map(|(a, b)| a * b)
        .sum();
    if current.exterior_d().horizontal() != Form::lagrangian(space, source) {
        return Err(Error::Identity(
            "d_H of the current is not the stated multiple of E".into(),
        ));
    }
    Ok(NbhCurrent {
        current,
        beta,
        multipliers,
        euler,
    })
}
