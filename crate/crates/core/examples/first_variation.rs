//! The first variation formula: the Lie derivative of a Lagrangian splits
//! into an Euler–Lagrange term and a total divergence.

use std::sync::Arc;

use varseq::prolong::{first_variation_split, lie_derivative, ProjectableVectorField};
use varseq::symexpr::rat;
use varseq::{Expr, Form, JetSpace};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t"], ["q"])?);
    let qd = Expr::y(0, &[0]);
    let lambda = Form::lagrangian(&space, (&qd * &qd).scale(&rat(1, 2)));
    let boost = ProjectableVectorField::vertical(&space, vec![Expr::base(0)])?;

    let fv = first_variation_split(&lambda, &boost)?;
    println!("L_Ξ λ      = {}", fv.lie.to_text());
    println!("Euler term = {}", fv.euler_term.to_text());
    println!("current φ  = {}", fv.current.to_text());
    println!("d_H φ      = {}", fv.boundary_term.to_text());
    assert_eq!(
        &fv.euler_term + &fv.boundary_term,
        lie_derivative(&boost, &lambda)?
    );
    Ok(())
}
