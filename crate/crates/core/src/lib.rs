//! Exact symbolic calculus of variations on jet bundles.
//!
//! The crate works on the trivial fibred chart `ℝⁿ×ℝᵐ → ℝⁿ` and its finite
//! jet prolongations. Forms live in the contact-adapted coframe, and the
//! variational machinery (interior Euler operator, residual operator,
//! Euler–Lagrange and Helmholtz morphisms, Cartan and Lepage forms, contact
//! homotopy, Lie derivatives and Noether currents) is built on top.
//!
//! ```
//! use std::sync::Arc;
//! use varseq::{Expr, Form, JetSpace};
//!
//! let space = Arc::new(JetSpace::new(["t"], ["q"]).unwrap());
//! let qd = Expr::y(0, &[0]);
//! let lambda = Form::lagrangian(&space, (&qd * &qd).scale(&varseq::symexpr::rat(1, 2)));
//! let e = varseq::variational::euler_lagrange(&lambda).unwrap();
//! assert_eq!(e.to_text(), "-qdd w(q)^dt");
//! ```

pub mod cli;
pub mod error;
pub mod forms;
pub mod jet_space;
pub mod probe;
pub mod prolong;
pub mod symexpr;
pub mod variational;

pub use error::{Error, Result};
pub use forms::{Covector, Form, VectorField};
pub use jet_space::{JetCoordinate, JetSpace, MultiIndex};
pub use symexpr::{Expr, Rational};
