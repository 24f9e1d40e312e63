mod common;

use common::*;
use proptest::prelude::*;
use varseq::{Form, VectorField};

/// A form of any degree `0..=n+2` in a random configuration.
fn any_form() -> impl Strategy<Value = Form> {
    configuration()
        .prop_flat_map(|(n, m, r)| (0..=n + 2).prop_flat_map(move |q| form(space(n, m), r, q)))
}

/// A form together with a field and a second form on the same space.
fn form_field_form(vertical: bool) -> impl Strategy<Value = (Form, VectorField, Form)> {
    configuration().prop_flat_map(move |(n, m, r)| {
        let s = space(n, m);
        (1..=n + 1, 1..=2usize).prop_flat_map(move |(p, q)| {
            (
                form(s.clone(), r, p),
                vector_field(s.clone(), r, vertical),
                form(s.clone(), r, q),
            )
        })
    })
}

fn sign(deg: usize) -> bool {
    deg % 2 == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn contact_components_sum_to_the_form(rho in any_form()) {
        let sum = (0..=rho.degree()).fold(Form::zero(rho.space(), rho.degree()), |acc, k| &acc + &rho.contact_component(k));
        prop_assert_eq!(sum, rho.lift(rho.order() + 1).unwrap());
    }

    #[test]
    fn d_squared_vanishes(rho in any_form()) {
        let dd = rho.exterior_d().exterior_d();
        prop_assert!(dd.is_zero(), "{}", dd);
        prop_assert_eq!(dd.order(), rho.order() + 2);
    }

    #[test]
    fn horizontal_and_vertical_differentials(rho in any_form()) {
        prop_assert!(rho.d_h().d_h().is_zero());
        prop_assert!(rho.d_v().d_v().is_zero());
        prop_assert_eq!(rho.d_h().d_v(), -rho.d_v().d_h());
        prop_assert_eq!(&rho.d_h() + &rho.d_v(), rho.exterior_d());
    }

    #[test]
    fn contraction_is_a_graded_derivation((a, x, b) in form_field_form(false)) {
        let lhs = a.wedge(&b).contract(&x).unwrap();
        let first = a.contract(&x).unwrap().wedge(&b);
        let second = a.wedge(&b.contract(&x).unwrap());
        let rhs = if sign(a.degree()) { &first + &second } else { &first - &second };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vertical_contraction_lowers_contact_degree(
        (rho, x, k) in configuration().prop_flat_map(|(n, m, r)| {
            let s = space(n, m);
            (1..=2usize, 0..=n).prop_flat_map(move |(k, h)| {
                (k_contact_form(s.clone(), r, h + k, k), vector_field(s.clone(), r, true), Just(k))
            })
        })
    ) {
        let hooked = rho.contract(&x).unwrap();
        prop_assert!(hooked.contact_degrees().iter().all(|&c| c == k - 1), "{:?}", hooked.contact_degrees());
        prop_assert!(rho.contact_degrees().iter().all(|&c| c == k));
    }

    #[test]
    fn wedge_is_graded_commutative((a, _x, b) in form_field_form(true)) {
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        if (a.degree() * b.degree()) % 2 == 0 {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, -ba);
        }
    }

    #[test]
    fn d_is_an_antiderivation((a, _x, b) in form_field_form(true)) {
        let lhs = a.wedge(&b).exterior_d();
        let first = a.exterior_d().wedge(&b);
        let second = a.wedge(&b.exterior_d());
        let rhs = if sign(a.degree()) { &first + &second } else { &first - &second };
        prop_assert_eq!(lhs, rhs);
    }
}
