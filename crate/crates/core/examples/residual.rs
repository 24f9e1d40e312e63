//! Interior Euler and residual operators on a general 1-contact 2-form in
//! mechanics with unspecified coefficient functions.

use std::sync::Arc;

use varseq::variational::{interior_euler, residual};
use varseq::{Expr, Form, JetCoordinate, JetSpace, MultiIndex};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t"], ["q"])?);
    let slots: Vec<JetCoordinate> = std::iter::once(JetCoordinate::Base(0))
        .chain((0..3).map(|k| JetCoordinate::fibre(0, MultiIndex::new(vec![0; k]))))
        .collect();
    let dt = Form::dx(&space, 0);
    let mut rho = Form::zero(&space, 2);
    for k in 0..3 {
        let a = Expr::opaque(&format!("A{k}"), slots.clone());
        rho = &rho
            + &Form::omega(&space, 0, MultiIndex::new(vec![0; k]))
                .wedge(&dt)
                .scale(&a);
    }
    let i = interior_euler(&rho)?;
    let r = residual(&rho)?;
    println!("ρ  = {}", rho.to_text());
    println!("𝓘ρ = {}", i.to_text());
    println!("𝓡ρ = {}", r.to_text());

    // p₁ρ splits into the source form and an exact remainder.
    let rest = &(&rho.contact_component(1) - &i) - &r.exterior_d().contact_component(1);
    assert!(rest.is_zero());
    println!("p₁ρ = 𝓘ρ + p₁d𝓡ρ holds");
    Ok(())
}
