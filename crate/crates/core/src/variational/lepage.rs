use super::{interior_euler, residual};
use crate::error::{Error, Result};
use crate::forms::Form;

fn excess_degree(rho: &Form, op: &'static str) -> Result<usize> {
    let n = rho.n();
    if rho.degree() < n {
        return Err(Error::DegreeTooLow {
            op,
            degree: rho.degree(),
            min: n.saturating_sub(1),
        });
    }
    Ok(rho.degree() - n)
}

/// The Cartan form `θ = p_kρ − p_{k+1} 𝓡(d p_kρ)` of a form of degree `n+k`.
///
/// For `k = 0` this is the Poincaré–Cartan form of the Lagrangian `hρ`.
pub fn cartan_form(rho: &Form) -> Result<Form> {
    let k = excess_degree(rho, "cartan_form")?;
    let p = rho.contact_component(k);
    let correction = residual(&p.exterior_d())?.contact_component(k + 1);
    Ok(&p - &correction)
}

/// The Lepage condition `p_{k+1} dρ = 𝓘(dρ)`.
pub fn is_lepage(rho: &Form) -> Result<bool> {
    let k = excess_degree(rho, "is_lepage")?;
    let d = rho.exterior_d();
    Ok(d.contact_component(k + 1) == interior_euler(&d)?)
}

/// The distinguished Lepage equivalent of a Lagrangian or source form,
/// which is its Cartan form.
pub fn lepage_equivalent(sigma: &Form) -> Result<Form> {
    cartan_form(sigma)
}
