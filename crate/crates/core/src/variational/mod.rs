//! The representation machinery of the variational sequence.
//!
//! Classes of forms modulo contact forms are represented by the horizontal
//! part (degree `≤ n`) or by the interior Euler operator `𝓘` (degree `> n`).
//! The variational morphisms `E_q` are then `[ρ] ↦ [dρ]` read through those
//! representatives.

mod homotopy;
mod lepage;
mod mechanics;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{Covector, Form, VectorField};
use crate::jet_space::MultiIndex;
use crate::symexpr::{int, rat, Expr};

pub use homotopy::{contact_homotopy, is_variationally_trivial, zero_section_part, Triviality};
pub use lepage::{cartan_form, is_lepage, lepage_equivalent};
pub use mechanics::{reduced_helmholtz_mechanics, ReducedHelmholtz};

/// `k = q − n` for a form of degree `q > n`.
fn contact_degree(rho: &Form, op: &'static str) -> Result<usize> {
    let n = rho.n();
    if rho.degree() <= n {
        return Err(Error::DegreeTooLow {
            op,
            degree: rho.degree(),
            min: n,
        });
    }
    Ok(rho.degree() - n)
}

/// Runs the integration by parts once, returning `(𝓘ρ, 𝓡ρ)`.
fn integrate_by_parts(rho: &Form, k: usize) -> Result<(Form, Form)> {
    let space = rho.space();
    let p = rho.contact_component(k);
    let q = rho.degree();
    let mut canonical = Form::zero(space, q);
    let mut boundary = Form::zero(space, q - 1);
    for (sigma, j) in p.contact_atoms() {
        let mut y = p.contract(&VectorField::vertical_basis(space, sigma, j.clone()))?;
        let mut positive = true;
        let mut rest = j;
        while let Some((head, i)) = rest.pop_last() {
            // ω_{Ki} ∧ Y = D_i(ω_K ∧ Y) − ω_K ∧ D_i Y, and p_k D_i Z = p_k d(d_i ⌟ Z).
            let z = Form::omega(space, sigma, head.clone())
                .wedge(&y)
                .contract(&VectorField::total(space, i))?;
            boundary = if positive {
                &boundary + &z
            } else {
                &boundary - &z
            };
            y = y.total_derivative(i);
            positive = !positive;
            rest = head;
        }
        let term = Form::omega(space, sigma, MultiIndex::empty()).wedge(&y);
        canonical = if positive {
            &canonical + &term
        } else {
            &canonical - &term
        };
    }
    let w = rat(1, k as i64);
    Ok((
        canonical.scale_rational(&w).fix_order(rho.order()),
        boundary.scale_rational(&w).fix_order(rho.order()),
    ))
}

/// The interior Euler operator
/// `𝓘(ρ) = (1/k) ω^σ ∧ Σ_J (−1)^{|J|} D_J(∂/∂y^σ_J ⌟ p_k ρ)`.
///
/// `D_J` acts on forms as a Lie derivative, so contact factors of the
/// contracted form are differentiated too.
pub fn interior_euler(rho: &Form) -> Result<Form> {
    let k = contact_degree(rho, "interior_euler")?;
    Ok(integrate_by_parts(rho, k)?.0)
}

/// The residual operator: a `k`-contact `(n+k−1)`-form `𝓡(ρ)` with
/// `p_k ρ = 𝓘(ρ) + p_k d 𝓡(ρ)`. The identity is checked before returning.
pub fn residual(rho: &Form) -> Result<Form> {
    let k = contact_degree(rho, "residual")?;
    let (canonical, r) = integrate_by_parts(rho, k)?;
    let lhs = &rho.contact_component(k) - &canonical;
    if lhs != r.exterior_d().contact_component(k) {
        return Err(Error::Identity("p_k ρ − 𝓘(ρ) ≠ p_k d𝓡(ρ)".into()));
    }
    Ok(r)
}

/// The Euler–Lagrange form `E_λ = 𝓘(dλ)` of a horizontal `n`-form.
pub fn euler_lagrange(lambda: &Form) -> Result<Form> {
    let n = lambda.n();
    if lambda.degree() != n || !lambda.contact_component(0).eq(lambda) {
        return Err(Error::Precondition(
            "euler_lagrange needs a horizontal n-form".into(),
        ));
    }
    interior_euler(&lambda.exterior_d())
}

/// The canonical Helmholtz form `H_ε = 𝓘(dε)` of a dynamical form.
pub fn helmholtz(eps: &Form) -> Result<Form> {
    if eps.degree() != eps.n() + 1 {
        return Err(Error::Precondition(format!(
            "helmholtz needs a 1-contact (n+1)-form, got degree {}",
            eps.degree()
        )));
    }
    interior_euler(&eps.exterior_d())
}

/// `R_q`: the distinguished representative of the class `[ρ]`.
pub fn class_representative(rho: &Form) -> Result<Form> {
    match rho.degree() {
        0 => Ok(rho.clone()),
        q if q <= rho.n() => Ok(rho.horizontal()),
        _ => interior_euler(rho),
    }
}

pub fn classes_equal(a: &Form, b: &Form) -> Result<bool> {
    if a.degree() != b.degree() {
        return Err(Error::Precondition("classes of different degrees".into()));
    }
    Ok(class_representative(&(a - b))?.is_zero())
}

/// `E_q([ρ]) = [dρ]`, returned as its representative.
pub fn variational_morphism(rho: &Form) -> Result<Form> {
    class_representative(&rho.exterior_d())
}

/// A class `[ρ]` in the variational sequence, compared through
/// representatives.
#[derive(Clone, Debug)]
pub struct VariationalClass {
    representative: Form,
    order: usize,
}

impl VariationalClass {
    pub fn new(rho: &Form) -> Result<Self> {
        Ok(VariationalClass {
            representative: class_representative(rho)?,
            order: rho.order(),
        })
    }

    pub fn representative(&self) -> &Form {
        &self.representative
    }

    pub fn degree(&self) -> usize {
        self.representative.degree()
    }

    /// Order of the jet space the class was taken from.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The image under the next variational morphism.
    pub fn next(&self) -> Result<VariationalClass> {
        let d = self.representative.exterior_d();
        Ok(VariationalClass {
            representative: class_representative(&d)?,
            order: d.order(),
        })
    }
}

impl PartialEq for VariationalClass {
    fn eq(&self, other: &Self) -> bool {
        self.representative == other.representative
    }
}

/// A `k`-contact `(n+k)`-form generated by the `ω^σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceForm {
    form: Form,
    k: usize,
}

impl SourceForm {
    pub fn new(form: Form) -> Result<Self> {
        let k = contact_degree(&form, "source form")?;
        for (atoms, _) in form.terms() {
            let contact = atoms.iter().filter(|a| a.is_contact()).count();
            let generated = atoms
                .iter()
                .any(|a| matches!(a, Covector::Omega(_, j) if j.is_empty()));
            if contact != k || !generated {
                return Err(Error::Precondition(
                    "not an ω^σ-generated k-contact form".into(),
                ));
            }
        }
        Ok(SourceForm { form, k })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn into_form(self) -> Form {
        self.form
    }

    pub fn contact_degree(&self) -> usize {
        self.k
    }

    /// `ρ = 𝓘(ρ)`.
    pub fn is_canonical(&self) -> Result<bool> {
        Ok(interior_euler(&self.form)? == self.form)
    }

    /// The factors `η_σ` in `ρ = ω^σ ∧ η_σ`; each term is charged to its
    /// first order-zero contact factor.
    pub fn factors(&self) -> Vec<Form> {
        let space = self.form.space();
        let mut eta: Vec<Form> = (0..space.m())
            .map(|_| Form::zero(space, self.form.degree() - 1))
            .collect();
        for (atoms, f) in self.form.terms() {
            let pos = atoms
                .iter()
                .position(|a| matches!(a, Covector::Omega(_, j) if j.is_empty()))
                .expect("checked in the constructor");
            let Covector::Omega(sigma, _) = atoms[pos] else {
                unreachable!()
            };
            let mut rest = atoms.clone();
            rest.remove(pos);
            eta[sigma].push(rest, if pos % 2 == 0 { f.clone() } else { -f });
        }
        eta.into_iter()
            .map(|e| e.fix_order(self.form.order()))
            .collect()
    }
}

/// The pieces of `ρ = ω^σ ∧ η_σ` and the residues of the canonicalization
/// identities. A residue is the difference of the two sides.
#[derive(Clone, Debug)]
pub struct SourceCanonicalization {
    pub k: usize,
    pub eta: Vec<Form>,
    /// `𝓘(ρ)`.
    pub canonical: Form,
    /// `ρ − k𝓘(ρ) + (k−1) ω^σ ∧ 𝓘(η_σ)`.
    pub decomposition_residue: Form,
    /// `𝓘` of the previous residue: the same identity modulo contact forms.
    pub decomposition_class_residue: Form,
    /// `ρ − 𝓘(ρ) − p_k d 𝓡(ρ)`.
    pub residual_residue: Form,
    /// `𝓘(ρ) − 𝓘(ω^σ ∧ 𝓘(η_σ))`, zero for `k = 1` by convention.
    pub consequence_residue: Form,
}

impl SourceCanonicalization {
    pub fn holds_exactly(&self) -> bool {
        self.decomposition_residue.is_zero()
            && self.residual_residue.is_zero()
            && self.consequence_residue.is_zero()
    }

    pub fn holds_modulo_contact(&self) -> bool {
        self.decomposition_class_residue.is_zero()
            && self.residual_residue.is_zero()
            && self.consequence_residue.is_zero()
    }
}

/// Splits a source form as `ω^σ ∧ η_σ` and evaluates the identities relating
/// it to its canonical representative.
pub fn source_canonicalize(rho: &Form) -> Result<SourceCanonicalization> {
    let source = SourceForm::new(rho.clone())?;
    let k = source.contact_degree();
    let space: &Arc<_> = rho.space();
    let eta = source.factors();
    let canonical = interior_euler(rho)?;
    let (decomposition_residue, consequence_residue) = if k == 1 {
        (rho - &canonical, Form::zero(space, rho.degree()))
    } else {
        let mut hooked = Form::zero(space, rho.degree());
        for (sigma, e) in eta.iter().enumerate() {
            hooked = &hooked
                + &Form::omega(space, sigma, MultiIndex::empty()).wedge(&interior_euler(e)?);
        }
        let ki = Expr::constant(int(k as i64));
        let k1 = Expr::constant(int(k as i64 - 1));
        let residue = &(rho - &canonical.scale(&ki)) + &hooked.scale(&k1);
        (residue, &canonical - &interior_euler(&hooked)?)
    };
    let decomposition_class_residue = interior_euler(&decomposition_residue)?;
    let r = residual(rho)?;
    let residual_residue = &(rho - &canonical) - &r.exterior_d().contact_component(k);
    Ok(SourceCanonicalization {
        k,
        eta,
        canonical,
        decomposition_residue,
        decomposition_class_residue,
        residual_residue,
        consequence_residue,
    })
}
