//! Cartan forms and the Lepage property, from Lagrangians to source forms.

use std::sync::Arc;

use varseq::symexpr::rat;
use varseq::variational::{cartan_form, is_lepage, lepage_equivalent};
use varseq::{Expr, Form, JetSpace};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t"], ["q"])?);
    let (q, qd) = (Expr::y(0, &[]), Expr::y(0, &[0]));
    let k = Expr::param("k");
    let l = &(&qd * &qd).scale(&rat(1, 2)) - &(&k * &q.pow(4)?).scale(&rat(1, 4));
    let lambda = Form::lagrangian(&space, l);

    let theta = cartan_form(&lambda)?;
    println!("θ_λ = {}", theta.to_text());
    println!(
        "λ Lepage: {}, θ_λ Lepage: {}",
        is_lepage(&lambda)?,
        is_lepage(&theta)?
    );

    // A second-order dynamical form and its Lepage equivalent.
    let eps = Form::dynamical(&space, &[&(-Expr::y(0, &[0, 0])) - &(&k * &q.pow(3)?)]);
    let theta_eps = lepage_equivalent(&eps)?;
    println!("θ_ε = {}", theta_eps.to_text());
    println!("θ_ε Lepage: {}", is_lepage(&theta_eps)?);
    Ok(())
}
