//! Helmholtz forms of dynamical forms: a damped oscillator that is not
//! variational, and the reduced Helmholtz form of a generic system.

use std::sync::Arc;

use varseq::variational::{helmholtz, reduced_helmholtz_mechanics};
use varseq::{Expr, Form, JetCoordinate, JetSpace, MultiIndex};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t"], ["q"])?);
    let damped = Form::dynamical(&space, &[&(-Expr::y(0, &[0, 0])) - &Expr::y(0, &[0])]);
    let h = helmholtz(&damped)?;
    println!("H of the damped oscillator: {}", h.to_text());
    assert!(!h.is_zero());

    let space = Arc::new(JetSpace::new(["t"], ["q1", "q2"])?);
    let mut slots = vec![JetCoordinate::Base(0)];
    for k in 0..=2 {
        slots.extend((0..2).map(|s| JetCoordinate::fibre(s, MultiIndex::new(vec![0; k]))));
    }
    let e: Vec<Expr> = (1..=2)
        .map(|s| Expr::opaque(&format!("E{s}"), slots.clone()))
        .collect();
    let r = reduced_helmholtz_mechanics(&Form::dynamical(&space, &e))?;
    println!("η        = {}", r.eta.to_text());
    println!(
        "reduced H has {} terms, canonical H has {}",
        r.reduced.terms().count(),
        r.canonical.terms().count()
    );
    println!("H̄ = H + p₂dη: {}", r.holds());
    Ok(())
}
