//! Randomized identity testing where exact canonicalization stops: square
//! roots are compared at random rational points.

use std::sync::Arc;

use varseq::probe::{exprs_equal_probabilistic, ProbeConfig, Verdict};
use varseq::{Expr, JetSpace};

fn main() -> varseq::Result<()> {
    let space = Arc::new(JetSpace::new(["t"], ["q"])?);
    let (q, qd) = (Expr::y(0, &[]), Expr::y(0, &[0]));
    let r = Expr::sqrt(&(&q * &q) + &(&qd * &qd))?;
    let cfg = ProbeConfig::default();

    let square = r.pow(2)?;
    let expected = &(&q * &q) + &(&qd * &qd);
    println!(
        "√(q²+q̇²)² = q²+q̇²: {:?}",
        exprs_equal_probabilistic(&space, &square, &expected, &cfg)?
    );

    match exprs_equal_probabilistic(&space, &r, &(&q + &qd), &cfg)? {
        Verdict::Unequal(w) => println!(
            "√(q²+q̇²) ≠ q+q̇, witness at trial {}: {} vs {}",
            w.trial,
            w.left.to_f64(),
            w.right.to_f64()
        ),
        other => println!("unexpected verdict {other:?}"),
    }
    Ok(())
}
