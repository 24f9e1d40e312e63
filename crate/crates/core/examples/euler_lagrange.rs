//! Schrödinger equations of a free quantum particle as the Euler–Lagrange
//! form of a first-order Lagrangian in two independent variables.

use std::sync::Arc;

use varseq::symexpr::rat;
use varseq::variational::{euler_lagrange, interior_euler};
use varseq::{Expr, Form, JetSpace};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t", "x"], ["v", "w"])?);
    let hbar = Expr::param("hbar");
    let inv_m = Expr::param("m").pow(-1)?;
    let (v, w) = (Expr::y(0, &[]), Expr::y(1, &[]));
    let (vt, vx, wt, wx) = (
        Expr::y(0, &[0]),
        Expr::y(0, &[1]),
        Expr::y(1, &[0]),
        Expr::y(1, &[1]),
    );

    let kinetic = &(&(&(&vx * &vx) + &(&wx * &wx)) * &(&hbar * &hbar)).scale(&rat(-1, 4)) * &inv_m;
    let drift = (&hbar * &(&(&v * &wt) - &(&w * &vt))).scale(&rat(-1, 2));
    let lambda = Form::lagrangian(&space, &kinetic + &drift);
    println!("λ   = {}", lambda.to_text());

    let e = euler_lagrange(&lambda)?;
    println!("E_λ = {}", e.to_text());
    // The same form is the interior Euler image of dλ.
    assert_eq!(interior_euler(&lambda.exterior_d())?, e);
    println!("LaTeX: {}", e.to_latex());
    Ok(())
}
