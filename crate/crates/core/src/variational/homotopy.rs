use super::{class_representative, euler_lagrange, interior_euler};
use crate::error::{Error, Result};
use crate::forms::{Covector, Form};
use crate::symexpr::{int, Expr};

/// The fibre-scaling homotopy operator `𝒜`.
///
/// Each coefficient monomial of fibre degree `d` sitting on a term with `c`
/// contact factors is weighted by `1/(d+c)` and the radial field
/// `Σ y^σ_J ∂/∂y^σ_J` is hooked into the term. With `ρ₀` the pull-back of
/// `ρ` to the zero section, `ρ − ρ₀ = 𝒜dρ + d𝒜ρ`.
pub fn contact_homotopy(rho: &Form) -> Result<Form> {
    let space = rho.space();
    let mut out = Form::zero(space, rho.degree().saturating_sub(1));
    if rho.degree() == 0 {
        return Ok(out);
    }
    for (atoms, f) in rho.terms() {
        let c = atoms.iter().filter(|a| a.is_contact()).count();
        if c == 0 {
            continue;
        }
        let mut weighted = Expr::zero();
        for (m, coeff) in f.terms() {
            let d = m
                .fibre_degree()
                .ok_or_else(|| Error::NotPolynomial(f.to_text(space.as_ref())))?;
            weighted = &weighted + &Expr::from_term(m.clone(), coeff / int(d as i64 + c as i64));
        }
        for (pos, a) in atoms.iter().enumerate() {
            if let Covector::Omega(sigma, j) = a {
                let mut rest = atoms.clone();
                rest.remove(pos);
                let g = &weighted * &Expr::fibre(*sigma, j.clone());
                out.push(rest, if pos % 2 == 0 { g } else { -g });
            }
        }
    }
    Ok(out.fix_order(rho.order()))
}

/// `ρ₀`: the horizontal fibre-degree-zero part, which is what survives the
/// pull-back to the zero section `y = 0`.
pub fn zero_section_part(rho: &Form) -> Result<Form> {
    rho.horizontal().map_coefficients(|f| {
        let mut out = Expr::zero();
        for (m, c) in f.terms() {
            match m.fibre_degree() {
                Some(0) => out = &out + &Expr::from_term(m.clone(), c.clone()),
                Some(_) => {}
                None => return Err(Error::NotPolynomial(f.to_text(rho.space().as_ref()))),
            }
        }
        Ok(out)
    })
}

/// Outcome of [`is_variationally_trivial`].
#[derive(Clone, Debug)]
pub struct Triviality {
    pub trivial: bool,
    /// A verified local primitive, when one could be built.
    pub primitive: Option<Form>,
}

/// Whether `σ` lies in the kernel of its variational morphism `E_q`, with a
/// primitive `η`, `E_{q−1}(η) = [σ]`, for polynomial inputs.
pub fn is_variationally_trivial(sigma: &Form) -> Result<Triviality> {
    let n = sigma.n();
    let q = sigma.degree();
    let trivial = if q == n {
        euler_lagrange(&sigma.horizontal())?.is_zero()
    } else {
        class_representative(&sigma.exterior_d())?.is_zero()
    };
    if !trivial || q == 0 || !sigma.is_fibre_polynomial() {
        return Ok(Triviality {
            trivial,
            primitive: None,
        });
    }
    let primitive = if q == n {
        lagrangian_primitive(sigma)?
    } else {
        source_primitive(sigma)?
    };
    Ok(Triviality { trivial, primitive })
}

/// `η` with `h dη = λ` for a null Lagrangian `λ`.
fn lagrangian_primitive(sigma: &Form) -> Result<Option<Form>> {
    let space = sigma.space();
    let lambda = sigma.horizontal();
    let theta = super::cartan_form(&lambda)?;
    let mut eta = contact_homotopy(&theta)?;
    let base = zero_section_part(&lambda)?.lagrangian_density();
    if !base.is_zero() {
        let Ok(f) = base.base_antiderivative(0) else {
            return Ok(None);
        };
        let beta = if space.n() == 1 {
            Form::scalar(space, f)
        } else {
            Form::volume_minus(space, 0).scale(&f)
        };
        eta = &eta + &beta;
    }
    if class_representative(&eta.exterior_d())? != lambda {
        return Err(Error::Identity(
            "h dη ≠ λ for the null-Lagrangian primitive".into(),
        ));
    }
    Ok(Some(eta))
}

/// `η = 𝒜𝓘σ` for a variationally trivial source form.
fn source_primitive(sigma: &Form) -> Result<Option<Form>> {
    if sigma.degree() < sigma.n() {
        return Ok(None);
    }
    let canonical = interior_euler(sigma)?;
    let eta = contact_homotopy(&canonical)?;
    if class_representative(&eta.exterior_d())? != canonical {
        return Err(Error::Identity(
            "E(𝒜σ) ≠ σ for a trivial source form".into(),
        ));
    }
    Ok(Some(eta))
}
