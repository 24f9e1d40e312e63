//! Point evaluation. Rational-closed expressions evaluate exactly; anything
//! with an elementary function falls back to `f64`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{to_f64, Atom, Expr, Func, Rational};
use crate::error::{Error, Result};
use crate::jet_space::JetCoordinate;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Float(x) => *x,
        }
    }

    fn add(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            (a, b) => Value::Float(a.to_f64() + b.to_f64()),
        }
    }

    fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            (a, b) => Value::Float(a.to_f64() * b.to_f64()),
        }
    }

    fn powi(self, e: i32) -> Result<Value> {
        match self {
            Value::Exact(a) => {
                if e < 0 && a.is_zero() {
                    return Err(Error::Evaluation("division by zero".into()));
                }
                Ok(Value::Exact(num_traits::pow::pow(
                    if e < 0 { a.recip() } else { a },
                    e.unsigned_abs() as usize,
                )))
            }
            Value::Float(x) => Ok(Value::Float(x.powi(e))),
        }
    }
}

/// Values for coordinates and parameters, plus polynomial stand-ins for
/// opaque functions (written over their declared slot coordinates).
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub coords: BTreeMap<JetCoordinate, Rational>,
    pub params: BTreeMap<String, Rational>,
    pub opaque: BTreeMap<String, Expr>,
}

impl Env {
    pub fn with_coord(mut self, c: JetCoordinate, v: Rational) -> Self {
        self.coords.insert(c, v);
        self
    }

    pub fn with_param(mut self, p: &str, v: Rational) -> Self {
        self.params.insert(p.to_string(), v);
        self
    }
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<Value> {
        let mut total = Value::Exact(Rational::zero());
        for (m, c) in self.terms() {
            let mut acc = Value::Exact(c.clone());
            for (a, e) in m.factors() {
                acc = acc.mul(eval_atom(a, env)?.powi(*e)?);
            }
            total = total.add(acc);
        }
        if let Value::Float(x) = total {
            if !x.is_finite() {
                return Err(Error::Evaluation("non-finite value".into()));
            }
        }
        Ok(total)
    }

    /// Exact evaluation; fails if the expression is not rational-closed.
    pub fn eval_exact(&self, env: &Env) -> Result<Rational> {
        match self.eval(env)? {
            Value::Exact(r) => Ok(r),
            Value::Float(_) => Err(Error::Evaluation(
                "expression is not rational-closed".into(),
            )),
        }
    }
}

fn eval_atom(a: &Atom, env: &Env) -> Result<Value> {
    match a {
        Atom::Coord(c) => env
            .coords
            .get(c)
            .cloned()
            .map(Value::Exact)
            .ok_or_else(|| Error::Evaluation(format!("no value for coordinate {c:?}"))),
        Atom::Param(p) => env
            .params
            .get(p.as_ref())
            .cloned()
            .map(Value::Exact)
            .ok_or_else(|| Error::Evaluation(format!("no value for parameter {p}"))),
        Atom::Opaque(o) => {
            let inst = env.opaque.get(o.name.as_ref()).ok_or_else(|| {
                Error::Evaluation(format!("opaque function {} has no instantiation", o.name))
            })?;
            let mut d = inst.clone();
            for (slot, &k) in o.slots.iter().zip(&o.derivs) {
                for _ in 0..k {
                    d = d.partial(slot);
                }
            }
            d.eval(env)
        }
        Atom::Func(f, arg) => {
            let x = arg.eval(env)?;
            if *f == Func::Recip {
                return x.powi(-1);
            }
            let x = x.to_f64();
            let y = match f {
                Func::Sqrt => x.sqrt(),
                Func::Exp => x.exp(),
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Recip => unreachable!(),
            };
            if y.is_nan() {
                return Err(Error::Evaluation(format!("{}({x}) is undefined", f.name())));
            }
            Ok(Value::Float(y))
        }
    }
}
