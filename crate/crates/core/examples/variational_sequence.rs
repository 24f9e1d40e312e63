//! Classes in the variational sequence: representatives, the morphisms
//! between columns, and the fact that two steps always give zero.

use std::sync::Arc;

use varseq::variational::{class_representative, classes_equal, variational_morphism};
use varseq::{Expr, Form, JetCoordinate, JetSpace, MultiIndex};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t", "x"], ["u"])?);
    let (u, ut, ux) = (Expr::y(0, &[]), Expr::y(0, &[0]), Expr::y(0, &[1]));
    let du_x =
        Form::coordinate_differential(&space, &JetCoordinate::fibre(0, MultiIndex::new(vec![1])));
    // A 2-form written in coordinate differentials.
    let rho = &Form::dx(&space, 0)
        .wedge(&Form::dx(&space, 1))
        .scale(&(&(&ut * &ux) + &u.pow(3)?))
        + &du_x.wedge(&Form::dx(&space, 0)).scale(&u);

    let class = class_representative(&rho)?;
    println!("[ρ]      = {}", class.to_text());
    let e = variational_morphism(&rho)?;
    println!("E([ρ])   = {}", e.to_text());
    println!("E(E([ρ])) = {}", variational_morphism(&e)?.to_text());
    println!(
        "[ρ] = [ρ + ω ∧ dt]: {}",
        classes_equal(
            &rho,
            &(&rho + &Form::omega(&space, 0, MultiIndex::empty()).wedge(&Form::dx(&space, 0)))
        )?
    );
    Ok(())
}
