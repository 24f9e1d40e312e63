use std::sync::Arc;

use super::*;
use crate::symexpr::rat;
use crate::variational::{cartan_form, euler_lagrange, helmholtz};

fn mech() -> Arc<JetSpace> {
    Arc::new(JetSpace::new(vec!["t".to_string()], vec!["q".to_string()]).unwrap())
}

fn string() -> Arc<JetSpace> {
    let base = vec!["tau0".to_string(), "tau1".to_string()];
    let fibre: Vec<String> = (0..4).map(|m| format!("x{m}")).collect();
    Arc::new(JetSpace::new(base, fibre).unwrap())
}

fn q(k: usize) -> Expr {
    Expr::y(0, &vec![0; k])
}

fn half_qdot_squared(space: &Arc<JetSpace>) -> Form {
    Form::lagrangian(space, (&q(1) * &q(1)).scale(&rat(1, 2)))
}

#[test]
fn constant_vertical_field_stays_constant() {
    let space = mech();
    let field = ProjectableVectorField::vertical(&space, vec![Expr::one()]).unwrap();
    let z = prolong(&field, 2);
    assert!(z.recursion_holds());
    assert_eq!(z.component(0, &MultiIndex::empty()), Some(&Expr::one()));
    for k in 1..=2 {
        assert!(z
            .component(0, &MultiIndex::new(vec![0; k]))
            .unwrap()
            .is_zero());
    }
}

#[test]
fn scaling_field_prolongs_linearly() {
    let space = mech();
    let field = ProjectableVectorField::vertical(&space, vec![q(0)]).unwrap();
    let z = prolong(&field, 2);
    assert!(z.recursion_holds());
    for k in 0..=2 {
        assert_eq!(z.component(0, &MultiIndex::new(vec![0; k])), Some(&q(k)));
    }
    let (h, v) = z.split_hv();
    assert!(h.dx_components().iter().all(Expr::is_zero));
    assert!(v.is_vertical());
}

#[test]
fn time_translation_splits_into_total_derivative() {
    let space = mech();
    let z = prolong(&ProjectableVectorField::base_translation(&space, 0), 2);
    assert!(z.recursion_holds());
    let (h, v) = z.split_hv();
    assert_eq!(h.dx_components(), &[Expr::one()]);
    assert!(v.is_vertical());
    for k in 0..=2 {
        let j = MultiIndex::new(vec![0; k]);
        assert_eq!(v.omega_components()[&(0, j.clone())], -q(k + 1));
        assert_eq!(z.vertical_components()[&(0, j)], -q(k + 1));
    }
}

#[test]
fn projectability_is_enforced() {
    let space = mech();
    assert!(ProjectableVectorField::new(&space, vec![q(0)], vec![Expr::zero()]).is_err());
    assert!(ProjectableVectorField::new(&space, vec![Expr::zero()], vec![q(1)]).is_err());
    assert!(ProjectableVectorField::generalized(&space, vec![Expr::zero()], vec![q(1)]).is_ok());
    assert!(ProjectableVectorField::new(&space, vec![], vec![Expr::zero()]).is_err());
}

#[test]
fn time_dependent_base_component() {
    // ξ = t²: Ξ_t = −2t q̇, Ξ_tt = d_t(−2t q̇) − 2t q̈ = −2q̇ − 4t q̈.
    let space = mech();
    let t = Expr::base(0);
    let field = ProjectableVectorField::new(&space, vec![&t * &t], vec![Expr::zero()]).unwrap();
    let z = prolong(&field, 2);
    assert!(z.recursion_holds());
    assert_eq!(
        z.component(0, &MultiIndex::new(vec![0])),
        Some(&(&t * &q(1)).scale(&rat(-2, 1)))
    );
    let expected = &q(1).scale(&rat(-2, 1)) - &(&t * &q(2)).scale(&rat(4, 1));
    assert_eq!(
        z.component(0, &MultiIndex::new(vec![0, 0])),
        Some(&expected)
    );
}

#[test]
fn string_rotation_prolongation() {
    let space = string();
    let x = |mu: usize, j: &[usize]| Expr::y(mu, j);
    let fibre = vec![Expr::zero(), x(2, &[]), -x(1, &[]), Expr::zero()];
    let z = prolong(&ProjectableVectorField::vertical(&space, fibre).unwrap(), 1);
    assert!(z.recursion_holds());
    for i in 0..2 {
        let j = MultiIndex::new(vec![i]);
        assert_eq!(z.component(1, &j), Some(&x(2, &[i])));
        assert_eq!(z.component(2, &j), Some(&-x(1, &[i])));
        assert!(z.component(0, &j).unwrap().is_zero());
    }
}

#[test]
fn lie_derivatives() {
    let space = mech();
    let lambda = half_qdot_squared(&space);
    let translate = ProjectableVectorField::vertical(&space, vec![Expr::one()]).unwrap();
    assert!(lie_derivative(&translate, &lambda).unwrap().is_zero());
    let time = ProjectableVectorField::base_translation(&space, 0);
    let potential = &(&q(1) * &q(1)) - &Expr::pow(&q(0), 4).unwrap();
    assert!(lie_derivative(&time, &Form::lagrangian(&space, potential))
        .unwrap()
        .is_zero());

    let scale = ProjectableVectorField::vertical(&space, vec![q(0)]).unwrap();
    let w = Form::w(&space, 0, &[]);
    assert_eq!(lie_derivative(&scale, &w).unwrap(), w);
    let l = lie_derivative(&scale, &lambda).unwrap();
    assert_eq!(l, Form::lagrangian(&space, &q(1) * &q(1)));
}

#[test]
fn lie_derivative_preserves_contact_degree() {
    let space = mech();
    let t = Expr::base(0);
    let field = ProjectableVectorField::new(&space, vec![&t * &t], vec![&q(0) * &t]).unwrap();
    let rho = &Form::w(&space, 0, &[0])
        .wedge(&Form::dx(&space, 0))
        .scale(&(&q(0) * &q(1)))
        + &Form::w(&space, 0, &[])
            .wedge(&Form::w(&space, 0, &[0]))
            .scale(&q(2));
    let l = lie_derivative(&field, &rho).unwrap();
    for k in 0..=2 {
        let part = lie_derivative(&field, &rho.contact_component(k)).unwrap();
        assert_eq!(l.contact_component(k), part, "k = {k}");
    }
}

#[test]
fn energy_as_noether_current() {
    let space = mech();
    let theta = cartan_form(&half_qdot_squared(&space)).unwrap();
    let time = ProjectableVectorField::base_translation(&space, 0);
    let phi = noether_current(&theta, &time).unwrap();
    let energy = (&q(1) * &q(1)).scale(&rat(1, 2));
    assert_eq!(phi.horizontal, Form::scalar(&space, -energy));

    let nothing = ProjectableVectorField::vertical(&space, vec![Expr::zero()]).unwrap();
    assert!(noether_current(&theta, &nothing).unwrap().full.is_zero());
    assert!(noether_current(&half_qdot_squared(&space), &time).is_err());
}

#[test]
fn first_order_noether_formula() {
    // Φ(Ξ) = Lξ⁰ + ∂L/∂q̇ (Ξ − q̇ξ⁰) for opaque L and Ξ.
    let space = mech();
    let slots = vec![
        JetCoordinate::Base(0),
        JetCoordinate::fibre(0, MultiIndex::empty()),
    ];
    let l = Expr::opaque(
        "L",
        vec![
            slots[0].clone(),
            slots[1].clone(),
            JetCoordinate::fibre(0, MultiIndex::new(vec![0])),
        ],
    );
    let xi = Expr::opaque("xi", vec![slots[0].clone()]);
    let big = Expr::opaque("X", slots.clone());
    let field = ProjectableVectorField::new(&space, vec![xi.clone()], vec![big.clone()]).unwrap();
    let theta = cartan_form(&Form::lagrangian(&space, l.clone())).unwrap();
    let phi = noether_current(&theta, &field).unwrap();
    let p = l.partial(&JetCoordinate::fibre(0, MultiIndex::new(vec![0])));
    let expected = &(&l * &xi) + &(&p * &(&big - &(&q(1) * &xi)));
    assert_eq!(phi.horizontal, Form::scalar(&space, expected));
}

#[test]
fn first_variation_with_opaque_data() {
    let space = mech();
    let coords = |k: usize| {
        let mut v = vec![JetCoordinate::Base(0)];
        v.extend((0..=k).map(|r| JetCoordinate::fibre(0, MultiIndex::new(vec![0; r]))));
        v
    };
    let l = Expr::opaque("L", coords(1));
    let lambda = Form::lagrangian(&space, l.clone());
    let big = Expr::opaque("X", coords(0));
    let dq = |r: usize| JetCoordinate::fibre(0, MultiIndex::new(vec![0; r]));
    let e = &l.partial(&dq(0)) - &l.partial(&dq(1)).total_derivative(0);

    let vertical = ProjectableVectorField::vertical(&space, vec![big.clone()]).unwrap();
    let fv = first_variation_split(&lambda, &vertical).unwrap();
    assert_eq!(fv.euler_term, Form::lagrangian(&space, &e * &big));
    assert_eq!(&fv.euler_term + &fv.boundary_term, fv.lie);

    let t = Expr::base(0);
    let moving = ProjectableVectorField::new(&space, vec![&t * &t], vec![big.clone()]).unwrap();
    let fv = first_variation_split(&lambda, &moving).unwrap();
    let xv = &big - &(&q(1) * &(&t * &t));
    assert_eq!(fv.euler_term, Form::lagrangian(&space, &e * &xv));
}

#[test]
fn first_variation_of_the_free_particle() {
    let space = mech();
    let field = ProjectableVectorField::vertical(&space, vec![Expr::one()]).unwrap();
    let fv = first_variation_split(&half_qdot_squared(&space), &field).unwrap();
    assert_eq!(fv.euler_term, Form::lagrangian(&space, -q(2)));
    assert_eq!(fv.current, Form::scalar(&space, q(1)));
    assert_eq!(fv.boundary_term, Form::lagrangian(&space, q(2)));
    assert!(fv.lie.is_zero());
}

#[test]
fn symmetry_checks() {
    let space = mech();
    let lambda = half_qdot_squared(&space);
    let translate = ProjectableVectorField::vertical(&space, vec![Expr::one()]).unwrap();
    assert!(symmetry_check(&translate, &lambda).unwrap());
    let scale = ProjectableVectorField::vertical(&space, vec![q(0)]).unwrap();
    assert!(!symmetry_check(&scale, &lambda).unwrap());
    // A Galilean boost changes λ by a total derivative, so it is a
    // symmetry of the Euler–Lagrange form only.
    let boost = ProjectableVectorField::vertical(&space, vec![Expr::base(0)]).unwrap();
    assert!(!symmetry_check(&boost, &lambda).unwrap());
    assert!(symmetry_check(&boost, &euler_lagrange(&lambda).unwrap()).unwrap());
}

fn mechanics_rho(space: &Arc<JetSpace>) -> Form {
    let dt = Form::dx(space, 0);
    let a = [&q(0) * &q(2), &q(1) * &q(1), &(&q(0) * &q(0)) * &q(1)];
    let mut rho = Form::zero(space, 2);
    for (k, ak) in a.iter().enumerate() {
        rho = &rho + &Form::w(space, 0, &vec![0; k]).wedge(&dt).scale(ak);
    }
    rho
}

#[test]
fn contact_degree_identity() {
    let space = mech();
    let translate = ProjectableVectorField::vertical(&space, vec![Expr::one()]).unwrap();
    let rho = mechanics_rho(&space);
    assert!(krbek_identity_check(&translate, &rho, 1).unwrap().is_zero());
    let cubic = ProjectableVectorField::vertical(&space, vec![&q(0) * &q(0)]).unwrap();
    assert!(krbek_identity_check(&cubic, &rho, 1).unwrap().is_zero());
    let flat = half_qdot_squared(&space);
    assert!(krbek_identity_check(&translate, &flat, 1)
        .unwrap()
        .is_zero());
    assert!(krbek_identity_check(
        &ProjectableVectorField::base_translation(&space, 0),
        &rho,
        1
    )
    .is_err());
    assert!(krbek_identity_check(&translate, &rho, 3).is_err());
}

#[test]
fn lie_derivative_of_classes() {
    let space = mech();
    let lambda = Form::lagrangian(&space, &(&q(1) * &q(1)) * &q(0));
    let eps = euler_lagrange(&lambda).unwrap();
    let vertical = ProjectableVectorField::vertical(&space, vec![&q(0) * &q(0)]).unwrap();
    assert!(higher_lie_identity_check(&vertical, &eps)
        .unwrap()
        .is_zero());
    let time = ProjectableVectorField::base_translation(&space, 0);
    assert!(higher_lie_identity_check(&time, &eps).unwrap().is_zero());
    let h = helmholtz(&mechanics_rho(&space)).unwrap_or_else(|_| Form::zero(&space, 3));
    let two_contact = &h
        + &Form::w(&space, 0, &[])
            .wedge(&Form::w(&space, 0, &[0, 0]))
            .wedge(&Form::dx(&space, 0));
    assert!(higher_lie_identity_check(&vertical, &two_contact)
        .unwrap()
        .is_zero());
}

#[test]
fn noether_bessel_hagen_currents() {
    let space = mech();
    let lambda = half_qdot_squared(&space);
    let translate = ProjectableVectorField::vertical(&space, vec![Expr::one()]).unwrap();
    let c = nbh_current(&translate, &lambda).unwrap();
    assert_eq!(c.current, Form::scalar(&space, q(1)));
    assert_eq!(c.multipliers, vec![-Expr::one()]);

    let potential = &(&q(1) * &q(1)).scale(&rat(1, 2)) - &Expr::pow(&q(0), 4).unwrap();
    let time = ProjectableVectorField::base_translation(&space, 0);
    let c = nbh_current(&time, &Form::lagrangian(&space, potential)).unwrap();
    let energy = &(&q(1) * &q(1)).scale(&rat(1, 2)) + &Expr::pow(&q(0), 4).unwrap();
    assert_eq!(c.current, Form::scalar(&space, -energy));
    assert_eq!(c.multipliers, vec![q(1)]);

    // The boost shifts λ by d_t q: current t q̇ − q.
    let boost = ProjectableVectorField::vertical(&space, vec![Expr::base(0)]).unwrap();
    let c = nbh_current(&boost, &lambda).unwrap();
    assert_eq!(c.beta, Form::scalar(&space, q(0)));
    assert_eq!(
        c.current,
        Form::scalar(&space, &(&Expr::base(0) * &q(1)) - &q(0))
    );

    let scale = ProjectableVectorField::vertical(&space, vec![q(0)]).unwrap();
    assert!(nbh_current(&scale, &lambda).is_err());
}

#[test]
fn string_currents_with_abstract_momenta() {
    let space = string();
    let velocities: Vec<JetCoordinate> = (0..4)
        .flat_map(|mu| (0..2).map(move |i| JetCoordinate::fibre(mu, MultiIndex::new(vec![i]))))
        .collect();
    let l = Expr::opaque("L", velocities);
    let theta = cartan_form(&Form::lagrangian(&space, l.clone())).unwrap();
    let p = |i: usize, mu: usize| l.partial(&JetCoordinate::fibre(mu, MultiIndex::new(vec![i])));
    let x = |mu: usize| Expr::y(mu, &[]);
    let d0 = Form::dx(&space, 0);
    let d1 = Form::dx(&space, 1);
    let current = |big: Vec<Expr>| {
        let field = ProjectableVectorField::vertical(&space, big).unwrap();
        noether_current(&theta, &field).unwrap().horizontal
    };
    for mu in 0..4 {
        let mut big = vec![Expr::zero(); 4];
        big[mu] = Expr::one();
        let expected = &d0.scale(&-p(1, mu)) + &d1.scale(&p(0, mu));
        assert_eq!(current(big), expected);
    }
    for s in 1..4 {
        let mut big = vec![Expr::zero(); 4];
        big[0] = x(s);
        big[s] = x(0);
        let a = &(&-p(1, 0) * &x(s)) - &(&p(1, s) * &x(0));
        let b = &(&p(0, 0) * &x(s)) + &(&p(0, s) * &x(0));
        assert_eq!(current(big), &d0.scale(&a) + &d1.scale(&b));
    }
    let big = vec![Expr::zero(), x(2), -x(1), Expr::zero()];
    let a = &(&-p(1, 1) * &x(2)) + &(&p(1, 2) * &x(1));
    let b = &(&p(0, 1) * &x(2)) - &(&p(0, 2) * &x(1));
    assert_eq!(current(big), &d0.scale(&a) + &d1.scale(&b));
}
