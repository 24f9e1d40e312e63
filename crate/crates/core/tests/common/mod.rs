//! Random polynomial fixtures shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use varseq::forms::Covector;
use varseq::jet_space::JetCoordinate;
use varseq::prolong::ProjectableVectorField;
use varseq::{Expr, Form, JetSpace, MultiIndex, VectorField};

pub const BASE: [&str; 2] = ["t", "x"];
pub const FIBRE: [&str; 2] = ["u", "v"];

pub fn space(n: usize, m: usize) -> Arc<JetSpace> {
    Arc::new(JetSpace::new(BASE[..n].iter().copied(), FIBRE[..m].iter().copied()).unwrap())
}

/// Every `(n, m, r)` in `{1,2}³`.
pub fn configurations() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for m in 1..=2 {
            for r in 1..=2 {
                out.push((n, m, r));
            }
        }
    }
    out
}

pub fn configuration() -> impl Strategy<Value = (usize, usize, usize)> {
    prop::sample::select(configurations())
}

fn monomial(pool: &[Expr], picks: &[(usize, i32)]) -> Expr {
    picks.iter().fold(Expr::one(), |acc, (k, e)| {
        &acc * &pool[*k % pool.len()].pow(*e).unwrap()
    })
}

/// Polynomials with small integer coefficients in the given variables.
pub fn polynomial_in(pool: Vec<Expr>, terms: usize, degree: usize) -> impl Strategy<Value = Expr> {
    let term = (
        -3i64..=3,
        prop::collection::vec((0..pool.len().max(1), 1..=2i32), 0..=degree),
    );
    prop::collection::vec(term, 0..=terms).prop_map(move |ts| {
        ts.iter().fold(Expr::zero(), |acc, (c, picks)| {
            &acc + &monomial(&pool, picks).scale(&varseq::symexpr::int(*c))
        })
    })
}

pub fn coordinates(space: &JetSpace, r: usize) -> Vec<Expr> {
    space
        .enumerate_coordinates(r)
        .into_iter()
        .map(Expr::coord)
        .collect()
}

/// A polynomial on `J^r Y`.
pub fn polynomial(space: &Arc<JetSpace>, r: usize) -> impl Strategy<Value = Expr> {
    polynomial_in(coordinates(space, r), 3, 2)
}

/// A polynomial in the base coordinates only.
pub fn base_polynomial(space: &Arc<JetSpace>) -> impl Strategy<Value = Expr> {
    polynomial_in((0..space.n()).map(Expr::base).collect(), 2, 2)
}

/// Basis covectors of `J^r Y`: the `dx^i` and the `ω^σ_J` with `|J| < r`.
pub fn covectors(space: &JetSpace, r: usize) -> Vec<Covector> {
    let mut out: Vec<Covector> = (0..space.n()).map(Covector::Dx).collect();
    for c in space.enumerate_coordinates(r.saturating_sub(1)) {
        if let JetCoordinate::Fibre { sigma, j } = c {
            out.push(Covector::Omega(sigma, j));
        }
    }
    out
}

/// A polynomial `q`-form on `J^r Y`.
pub fn form(space: Arc<JetSpace>, r: usize, q: usize) -> impl Strategy<Value = Form> {
    let pool = covectors(&space, r);
    let atoms = prop::collection::vec(0..pool.len(), q);
    let term = (atoms, polynomial(&space, r));
    prop::collection::vec(term, 1..=3).prop_map(move |ts| {
        let mut f = Form::zero(&space, q);
        for (idx, coeff) in ts {
            f.push(idx.iter().map(|&k| pool[k].clone()).collect(), coeff);
        }
        f.fix_order(r)
    })
}

/// A `q`-form with exactly `k` contact factors in every term.
pub fn k_contact_form(
    space: Arc<JetSpace>,
    r: usize,
    q: usize,
    k: usize,
) -> impl Strategy<Value = Form> {
    let n = space.n();
    let omegas: Vec<Covector> = covectors(&space, r)
        .into_iter()
        .filter(Covector::is_contact)
        .collect();
    let term = (
        prop::collection::vec(0..n, q - k),
        prop::collection::vec(0..omegas.len(), k),
        polynomial(&space, r),
    );
    prop::collection::vec(term, 1..=3).prop_map(move |ts| {
        let mut f = Form::zero(&space, q);
        for (dx, om, coeff) in ts {
            let mut atoms: Vec<Covector> = dx.into_iter().map(Covector::Dx).collect();
            atoms.extend(om.iter().map(|&k| omegas[k].clone()));
            f.push(atoms, coeff);
        }
        f.fix_order(r)
    })
}

/// A horizontal `n`-form `L dx¹∧…∧dxⁿ` of order `r`.
pub fn lagrangian(space: Arc<JetSpace>, r: usize) -> impl Strategy<Value = Form> {
    polynomial(&space, r).prop_map(move |l| Form::lagrangian(&space, l).fix_order(r))
}

/// A form `(configuration, form)` of degree `n + shift` (`shift ≥ -1`).
pub fn form_of_degree(shift: isize) -> impl Strategy<Value = Form> {
    configuration().prop_flat_map(move |(n, m, r)| {
        let q = (n as isize + shift).max(0) as usize;
        form(space(n, m), r, q)
    })
}

/// A vector field with polynomial pairings on every basis covector of `J^r Y`.
pub fn vector_field(
    space: Arc<JetSpace>,
    r: usize,
    vertical: bool,
) -> impl Strategy<Value = VectorField> {
    let n = space.n();
    let keys: Vec<(usize, MultiIndex)> = space
        .enumerate_coordinates(r)
        .into_iter()
        .filter_map(|c| match c {
            JetCoordinate::Fibre { sigma, j } => Some((sigma, j)),
            _ => None,
        })
        .collect();
    let count = keys.len();
    (
        prop::collection::vec(polynomial(&space, r), n),
        prop::collection::vec(polynomial(&space, r), count),
    )
        .prop_map(move |(dx, om)| {
            let dx = if vertical { vec![Expr::zero(); n] } else { dx };
            let omega: BTreeMap<_, _> = keys.iter().cloned().zip(om).collect();
            VectorField::new(dx, omega, None)
        })
}

/// A projectable field: `ξ` on the base, `Ξ` polynomial in base and fibre.
pub fn projectable_field(space: Arc<JetSpace>) -> impl Strategy<Value = ProjectableVectorField> {
    let n = space.n();
    let m = space.m();
    let fibre_pool = coordinates(&space, 0);
    (
        prop::collection::vec(base_polynomial(&space), n),
        prop::collection::vec(polynomial_in(fibre_pool, 2, 2), m),
    )
        .prop_map(move |(xi, fibre)| ProjectableVectorField::new(&space, xi, fibre).unwrap())
}

/// A `q`-form on `J^r Y` written in the coordinate coframe `dx^i, dy^σ_J`
/// (`|J| ≤ r`); in the contact coframe it lives on `J^{r+1} Y`.
pub fn coordinate_form(space: Arc<JetSpace>, r: usize, q: usize) -> impl Strategy<Value = Form> {
    let coords = space.enumerate_coordinates(r);
    let term = (
        prop::collection::vec(0..coords.len(), q),
        polynomial(&space, r),
    );
    prop::collection::vec(term, 1..=3).prop_map(move |ts| {
        let terms: Vec<(Expr, Vec<JetCoordinate>)> = ts
            .into_iter()
            .map(|(idx, f)| (f, idx.iter().map(|&k| coords[k].clone()).collect()))
            .collect();
        Form::ingest_coordinate_basis(&space, q, &terms, r).unwrap()
    })
}

/// `(n, m, r)` and a coordinate-coframe form of degree `n + shift`.
pub fn coordinate_form_of_degree(shift: isize) -> impl Strategy<Value = Form> {
    configuration().prop_flat_map(move |(n, m, r)| {
        let q = (n as isize + shift).max(0) as usize;
        coordinate_form(space(n, m), r, q)
    })
}

/// Highest power of any coordinate of `set` in a monomial of `e`.
pub fn degree_in(e: &Expr, set: &[JetCoordinate]) -> i32 {
    use varseq::symexpr::Atom;
    e.terms()
        .map(|(m, _)| {
            m.factors()
                .iter()
                .filter(|(a, _)| matches!(a, Atom::Coord(c) if set.contains(c)))
                .map(|(_, k)| *k)
                .sum::<i32>()
        })
        .max()
        .unwrap_or(0)
}
