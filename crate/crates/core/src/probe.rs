//! Randomized identity testing at exact rational points.
//!
//! Coordinates and parameters get random nonzero rationals; opaque functions
//! get random cubic polynomials in their slots. Rational-closed coefficients
//! are compared exactly, anything with an elementary function in floating
//! point with a relative tolerance. An `Equal` verdict is evidence, not proof.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forms::{Covector, Form};
use crate::jet_space::{JetCoordinate, JetSpace};
use crate::symexpr::{Env, Expr, Rational, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub seed: u64,
    pub trials: usize,
    /// Bound on numerators and denominators.
    pub bound: i64,
    pub tolerance: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seed: 1,
            trials: 20,
            bound: 100,
            tolerance: 1e-9,
        }
    }
}

/// A point where two sides differ, reproducible from `seed` and `trial`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub seed: u64,
    pub trial: usize,
    pub env: Env,
    /// Basis wedge whose coefficients differ (empty for scalars).
    pub atoms: Vec<Covector>,
    pub left: Value,
    pub right: Value,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Equal,
    Unequal(Box<Witness>),
    /// No trial could be evaluated (e.g. every point left a square root's domain).
    Unknown,
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let bound = bound.max(1);
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-bound..=bound);
    }
    Rational::new(num.into(), rng.gen_range(1..=bound).into())
}

fn stream(cfg: &ProbeConfig, trial: usize, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(((trial as u64) << 16) | attempt as u64);
    rng
}

/// Random nonzero values for every coordinate of `J^order Y`.
pub fn random_assignment(space: &JetSpace, order: usize, cfg: &ProbeConfig) -> Env {
    let mut rng = stream(cfg, 0, 0);
    fill(
        space,
        order,
        &BTreeSet::new(),
        &BTreeMap::new(),
        cfg,
        &mut rng,
    )
}

fn fill(
    space: &JetSpace,
    order: usize,
    params: &BTreeSet<String>,
    opaques: &BTreeMap<String, Vec<JetCoordinate>>,
    cfg: &ProbeConfig,
    rng: &mut ChaCha8Rng,
) -> Env {
    let mut env = Env::default();
    for c in space.enumerate_coordinates(order) {
        let v = random_rational(rng, cfg.bound);
        env.coords.insert(c, v);
    }
    for p in params {
        let v = random_rational(rng, cfg.bound);
        env.params.insert(p.clone(), v);
    }
    for (name, slots) in opaques {
        env.opaque
            .insert(name.clone(), random_cubic(slots, cfg, rng));
    }
    env
}

fn random_cubic(slots: &[JetCoordinate], cfg: &ProbeConfig, rng: &mut ChaCha8Rng) -> Expr {
    let vars: Vec<Expr> = slots.iter().map(|c| Expr::coord(c.clone())).collect();
    let mut out = Expr::constant(random_rational(rng, cfg.bound));
    let small = (cfg.bound / 10).max(2);
    for a in 0..vars.len() {
        out = &out + &vars[a].scale(&random_rational(rng, small));
        for b in a..vars.len() {
            let ab = &vars[a] * &vars[b];
            out = &out + &ab.scale(&random_rational(rng, small));
            for c in b..vars.len() {
                if rng.gen_bool(0.5) {
                    out = &out + &(&ab * &vars[c]).scale(&random_rational(rng, small));
                }
            }
        }
    }
    out
}

struct Inputs {
    order: usize,
    params: BTreeSet<String>,
    opaques: BTreeMap<String, Vec<JetCoordinate>>,
}

fn inputs<'a>(exprs: impl Iterator<Item = &'a Expr>) -> Inputs {
    let mut i = Inputs {
        order: 0,
        params: BTreeSet::new(),
        opaques: BTreeMap::new(),
    };
    for e in exprs {
        i.order = i.order.max(e.order());
        i.params.extend(e.params());
        i.opaques.extend(e.opaques());
    }
    i
}

fn close(a: &Value, b: &Value, tol: f64) -> bool {
    match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => x == y,
        _ => {
            let (x, y) = (a.to_f64(), b.to_f64());
            (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
        }
    }
}

const ATTEMPTS: usize = 32;

/// Compares coefficient lists pairwise at random points.
fn compare(
    space: &JetSpace,
    pairs: &[(Vec<Covector>, Expr, Expr)],
    cfg: &ProbeConfig,
) -> Result<Verdict> {
    let inp = inputs(pairs.iter().flat_map(|(_, a, b)| [a, b]));
    let mut evaluated = 0;
    for trial in 0..cfg.trials.max(1) {
        for attempt in 0..ATTEMPTS {
            let mut rng = stream(cfg, trial, attempt);
            let env = fill(space, inp.order, &inp.params, &inp.opaques, cfg, &mut rng);
            let mut values = Vec::with_capacity(pairs.len());
            let mut ok = true;
            for (atoms, a, b) in pairs {
                match (a.eval(&env), b.eval(&env)) {
                    (Ok(x), Ok(y)) => values.push((atoms, x, y)),
                    (Err(Error::Evaluation(_)), _) | (_, Err(Error::Evaluation(_))) => {
                        ok = false;
                        break;
                    }
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
            if !ok {
                continue;
            }
            evaluated += 1;
            for (atoms, x, y) in values {
                if !close(&x, &y, cfg.tolerance) {
                    return Ok(Verdict::Unequal(Box::new(Witness {
                        seed: cfg.seed,
                        trial,
                        env,
                        atoms: atoms.clone(),
                        left: x,
                        right: y,
                    })));
                }
            }
            break;
        }
    }
    Ok(if evaluated == 0 {
        Verdict::Unknown
    } else {
        Verdict::Equal
    })
}

pub fn exprs_equal_probabilistic(
    space: &JetSpace,
    a: &Expr,
    b: &Expr,
    cfg: &ProbeConfig,
) -> Result<Verdict> {
    compare(space, &[(Vec::new(), a.clone(), b.clone())], cfg)
}

pub fn forms_equal_probabilistic(a: &Form, b: &Form, cfg: &ProbeConfig) -> Result<Verdict> {
    if a.degree() != b.degree() || a.space() != b.space() {
        return Err(Error::Precondition(
            "probe compares forms of one degree on one space".into(),
        ));
    }
    let mut keys: BTreeSet<Vec<Covector>> = a.terms().map(|(k, _)| k.clone()).collect();
    keys.extend(b.terms().map(|(k, _)| k.clone()));
    let pairs: Vec<_> = keys
        .into_iter()
        .map(|k| (k.clone(), a.coefficient(&k), b.coefficient(&k)))
        .collect();
    compare(a.space(), &pairs, cfg)
}

/// `Equal` against zero; `Unknown` counts as failure to vanish.
pub fn form_vanishes(f: &Form, cfg: &ProbeConfig) -> Result<bool> {
    Ok(forms_equal_probabilistic(f, &Form::zero(f.space(), f.degree()), cfg)?.is_equal())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::jet_space::MultiIndex;
    use crate::symexpr::rat;

    fn mech() -> Arc<JetSpace> {
        Arc::new(JetSpace::new(vec!["t".to_string()], vec!["q".to_string()]).unwrap())
    }

    #[test]
    fn assignments_are_seeded() {
        let space = mech();
        let one = ProbeConfig::default();
        let two = ProbeConfig {
            seed: 2,
            ..ProbeConfig::default()
        };
        let a = random_assignment(&space, 3, &one);
        assert_eq!(a.coords, random_assignment(&space, 3, &one).coords);
        assert_ne!(a.coords, random_assignment(&space, 3, &two).coords);
        assert_eq!(a.coords.len(), 5);
        for v in a.coords.values() {
            assert!(*v != rat(0, 1));
            assert!(v.numer().magnitude() <= &100u32.into());
            assert!(v.denom().magnitude() <= &100u32.into());
        }
    }

    #[test]
    fn equal_and_unequal_forms() {
        let space = mech();
        let qd = Expr::y(0, &[0]);
        let lambda = Form::lagrangian(&space, (&qd * &qd).scale(&rat(1, 2)));
        let cfg = ProbeConfig::default();
        assert!(forms_equal_probabilistic(&lambda, &lambda, &cfg)
            .unwrap()
            .is_equal());
        let shifted = &lambda + &Form::lagrangian(&space, Expr::y(0, &[]));
        let Verdict::Unequal(w) = forms_equal_probabilistic(&lambda, &shifted, &cfg).unwrap()
        else {
            panic!("expected a witness");
        };
        // The witness reproduces the disagreement.
        let left = lambda.coefficient(&w.atoms).eval(&w.env).unwrap();
        let right = shifted.coefficient(&w.atoms).eval(&w.env).unwrap();
        assert_eq!(
            (left.clone(), right.clone()),
            (w.left.clone(), w.right.clone())
        );
        assert!(!close(&left, &right, cfg.tolerance));
        assert!(forms_equal_probabilistic(&lambda, &Form::zero(&space, 0), &cfg).is_err());
    }

    #[test]
    fn opaque_functions_are_instantiated() {
        let space = mech();
        let slots = vec![
            JetCoordinate::Base(0),
            JetCoordinate::fibre(0, MultiIndex::empty()),
        ];
        let f = Expr::opaque("f", slots);
        let g = &f.total_derivative(0) - &f.partial(&JetCoordinate::Base(0));
        let expected =
            &Expr::y(0, &[0]) * &f.partial(&JetCoordinate::fibre(0, MultiIndex::empty()));
        let cfg = ProbeConfig::default();
        assert!(exprs_equal_probabilistic(&space, &g, &expected, &cfg)
            .unwrap()
            .is_equal());
        assert!(!exprs_equal_probabilistic(&space, &g, &f, &cfg)
            .unwrap()
            .is_equal());
    }

    #[test]
    fn radicals_compare_in_floating_point() {
        let space = mech();
        let q = Expr::y(0, &[]);
        let s = Expr::sqrt(&q * &q).unwrap();
        let cfg = ProbeConfig::default();
        let square = s.pow(2).unwrap();
        assert!(exprs_equal_probabilistic(&space, &square, &(&q * &q), &cfg)
            .unwrap()
            .is_equal());
        let r = Expr::sqrt(q.clone()).unwrap();
        // Negative samples leave the domain and are redrawn.
        assert!(exprs_equal_probabilistic(&space, &(&r * &r), &q, &cfg)
            .unwrap()
            .is_equal());
        assert!(!exprs_equal_probabilistic(&space, &r, &q, &cfg)
            .unwrap()
            .is_equal());
    }
}
