//! The contact homotopy operator: Tonti Lagrangians of variational source
//! forms and primitives of variationally trivial forms.

use std::sync::Arc;

use varseq::variational::{contact_homotopy, euler_lagrange, is_variationally_trivial};
use varseq::{Expr, Form, JetSpace};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t"], ["q"])?);
    let q = Expr::y(0, &[]);
    let eps = Form::dynamical(&space, &[&(-Expr::y(0, &[0, 0])) - &q.pow(3)?]);
    let lambda = contact_homotopy(&eps)?.horizontal();
    println!("ε       = {}", eps.to_text());
    println!("Tonti λ = {}", lambda.to_text());
    assert_eq!(euler_lagrange(&lambda)?, eps);

    // A total derivative has a primitive.
    let total = Form::lagrangian(&space, (&q * &q).total_derivative(0));
    let t = is_variationally_trivial(&total)?;
    if let Some(p) = t.primitive {
        println!("{} = d_H({})", total.to_text(), p.to_text());
    }
    Ok(())
}
