mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use varseq::jet_space::JetCoordinate;
use varseq::symexpr::{rat, Env, Func};
use varseq::{Expr, JetSpace, Rational};

fn space_and_order() -> impl Strategy<Value = (Arc<JetSpace>, usize)> {
    configuration().prop_map(|(n, m, r)| (space(n, m), r))
}

/// Values of `j^r s` at `x` for a polynomial section `s`.
fn jet_env(space: &JetSpace, section: &[Expr], x: &[Rational], r: usize) -> Env {
    let mut env = Env::default();
    for (i, v) in x.iter().enumerate() {
        env = env.with_coord(JetCoordinate::Base(i), v.clone());
    }
    let mut point = Env::default();
    for (i, v) in x.iter().enumerate() {
        point = point.with_coord(JetCoordinate::Base(i), v.clone());
    }
    for c in space.enumerate_coordinates(r) {
        if let JetCoordinate::Fibre { sigma, j } = &c {
            let d = j.entries().iter().fold(section[*sigma].clone(), |acc, &i| {
                acc.partial(&JetCoordinate::Base(i))
            });
            env = env.with_coord(c.clone(), d.eval_exact(&point).unwrap());
        }
    }
    env
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-50i64..=50).prop_map(|k| rat(k, 50)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_derivatives_commute(
        (space, r, e) in space_and_order().prop_flat_map(|(s, r)| (Just(s.clone()), Just(r), polynomial(&s, r)))
    ) {
        let n = space.n();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(e.total_derivative(i).total_derivative(j), e.total_derivative(j).total_derivative(i));
            }
        }
        let _ = r;
    }

    #[test]
    fn canonicalization_is_idempotent(
        (_space, e) in space_and_order().prop_flat_map(|(s, r)| (Just(s.clone()), polynomial(&s, r)))
    ) {
        let once = e.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        prop_assert_eq!(once, e);
    }

    #[test]
    fn partials_commute(
        (space, r, e) in space_and_order().prop_flat_map(|(s, r)| (Just(s.clone()), Just(r), polynomial(&s, r)))
    ) {
        let coords = space.enumerate_coordinates(r);
        for a in &coords {
            for b in &coords {
                prop_assert_eq!(e.partial(a).partial(b), e.partial(b).partial(a));
            }
        }
    }

    #[test]
    fn total_derivative_matches_finite_differences(
        (space, r, e, section, x, wrap) in space_and_order().prop_flat_map(|(s, r)| {
            let n = s.n();
            let m = s.m();
            (
                Just(s.clone()),
                Just(r),
                polynomial(&s, r),
                prop::collection::vec(base_polynomial(&s), m),
                point(n),
                any::<bool>(),
            )
        })
    ) {
        // Optionally compose with sin so that floating evaluation is exercised.
        let e = if wrap { Expr::apply(Func::Sin, e).unwrap() } else { e };
        let h = rat(1, 100_000_000);
        for i in 0..space.n() {
            let exact = e.total_derivative(i).eval(&jet_env(&space, &section, &x, r + 1)).unwrap().to_f64();
            let mut plus = x.clone();
            plus[i] += &h;
            let mut minus = x.clone();
            minus[i] -= &h;
            let fp = e.eval(&jet_env(&space, &section, &plus, r)).unwrap().to_f64();
            let fm = e.eval(&jet_env(&space, &section, &minus, r)).unwrap().to_f64();
            let numeric = (fp - fm) / (2.0 * 1e-8);
            prop_assert!((exact - numeric).abs() <= 1e-6 * (1.0 + exact.abs()), "{} vs {}", exact, numeric);
        }
    }

    #[test]
    fn arithmetic_agrees_with_evaluation(
        (space, a, b, x) in space_and_order().prop_flat_map(|(s, r)| {
            let n = s.n();
            (Just(s.clone()), polynomial(&s, r), polynomial(&s, r), point(n))
        })
    ) {
        let section: Vec<Expr> = (0..space.m()).map(|s| Expr::base(0).pow(s as i32 + 1).unwrap()).collect();
        let env = jet_env(&space, &section, &x, 2);
        let va = a.eval_exact(&env).unwrap();
        let vb = b.eval_exact(&env).unwrap();
        prop_assert_eq!((&a + &b).eval_exact(&env).unwrap(), &va + &vb);
        prop_assert_eq!((&a * &b).eval_exact(&env).unwrap(), &va * &vb);
        prop_assert_eq!(&a - &a, Expr::zero());
    }
}
