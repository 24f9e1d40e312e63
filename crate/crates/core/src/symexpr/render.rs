//! Text, LaTeX and JSON renderings of expressions.
//!
//! The text form is re-readable by the model-file parser: powers are `^`,
//! the coefficient and parameters form a leading fraction, and negative
//! powers of everything else are trailing divisions (`hbar^2/(2*m)*v_xx`).
//! Terms are listed from the highest monomial down.

use num_traits::{One, Signed};
use serde_json::{json, Value as Json};

use super::{Atom, Expr, Func, Monomial, Rational};
use crate::jet_space::{JetCoordinate, JetSpace};

/// How coordinates are spelled in output.
pub trait CoordinateNames {
    fn text(&self, c: &JetCoordinate) -> String;
    fn latex(&self, c: &JetCoordinate) -> String;
}

/// Fallback names `x1`, `y1_12` that need no jet space.
pub struct IndexNames;

impl CoordinateNames for IndexNames {
    fn text(&self, c: &JetCoordinate) -> String {
        match c {
            JetCoordinate::Base(i) => format!("x{}", i + 1),
            JetCoordinate::Fibre { sigma, j } if j.is_empty() => format!("y{}", sigma + 1),
            JetCoordinate::Fibre { sigma, j } => {
                let s: String = j.entries().iter().map(|e| (e + 1).to_string()).collect();
                format!("y{}_{s}", sigma + 1)
            }
        }
    }

    fn latex(&self, c: &JetCoordinate) -> String {
        match c {
            JetCoordinate::Base(i) => format!("x^{{{}}}", i + 1),
            JetCoordinate::Fibre { sigma, j } if j.is_empty() => format!("y^{{{}}}", sigma + 1),
            JetCoordinate::Fibre { sigma, j } => {
                let s: String = j.entries().iter().map(|e| (e + 1).to_string()).collect();
                format!("y^{{{}}}_{{{s}}}", sigma + 1)
            }
        }
    }
}

impl CoordinateNames for JetSpace {
    fn text(&self, c: &JetCoordinate) -> String {
        self.coordinate_name(c)
    }

    fn latex(&self, c: &JetCoordinate) -> String {
        latex_coordinate(self, c)
    }
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi",
    "omega", "hbar", "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Phi", "Psi",
    "Omega",
];

/// LaTeX for an identifier: Greek names become macros, a trailing digit
/// run becomes a superscript, other multi-letter names go upright.
pub fn latex_name(name: &str) -> String {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, digits) = name.split_at(split);
    let stem_tex = if GREEK.contains(&stem) {
        format!("\\{stem}")
    } else if stem.chars().count() <= 1 {
        stem.to_string()
    } else {
        format!("\\mathrm{{{stem}}}")
    };
    if digits.is_empty() || stem.is_empty() {
        if stem.is_empty() {
            return name.to_string();
        }
        stem_tex
    } else {
        format!("{stem_tex}^{{{digits}}}")
    }
}

pub fn latex_coordinate(space: &JetSpace, c: &JetCoordinate) -> String {
    match c {
        JetCoordinate::Base(i) => latex_name(space.base_name(*i)),
        JetCoordinate::Fibre { sigma, j } => {
            let base = latex_name(space.fibre_name(*sigma));
            if j.is_empty() {
                base
            } else if space.n() == 1 {
                match j.len() {
                    1 => format!("\\dot{{{base}}}"),
                    2 => format!("\\ddot{{{base}}}"),
                    3 => format!("\\dddot{{{base}}}"),
                    k => format!("{base}^{{({k})}}"),
                }
            } else {
                let sub: Vec<String> = j
                    .entries()
                    .iter()
                    .map(|&e| latex_name(space.base_name(e)))
                    .collect();
                format!("{base}_{{{}}}", sub.join(""))
            }
        }
    }
}

fn rational_text(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn opaque_text(o: &super::Opaque, names: &dyn CoordinateNames) -> String {
    if o.is_underived() {
        return o.name.to_string();
    }
    let mut vars = Vec::new();
    for (slot, &k) in o.slots.iter().zip(&o.derivs) {
        for _ in 0..k {
            vars.push(names.text(slot));
        }
    }
    format!("{}[{}]", o.name, vars.join(","))
}

fn atom_text(a: &Atom, names: &dyn CoordinateNames) -> String {
    match a {
        Atom::Coord(c) => names.text(c),
        Atom::Param(p) => p.to_string(),
        Atom::Opaque(o) => opaque_text(o, names),
        Atom::Func(Func::Recip, arg) => format!("({})", arg.to_text(names)),
        Atom::Func(f, arg) => format!("{}({})", f.name(), arg.to_text(names)),
    }
}

fn power_text(base: String, e: i32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// Splits a monomial into the constant prefix (coefficient and parameters)
/// and the rest, each as numerator and denominator factor lists.
struct Layout<T> {
    prefix_num: Vec<T>,
    prefix_den: Vec<T>,
    num: Vec<T>,
    den: Vec<T>,
}

fn layout<T>(
    m: &Monomial,
    c: &Rational,
    atom: impl Fn(&Atom, i32) -> T,
    number: impl Fn(String) -> T,
) -> Layout<T> {
    let mut l = Layout {
        prefix_num: Vec::new(),
        prefix_den: Vec::new(),
        num: Vec::new(),
        den: Vec::new(),
    };
    if !c.numer().is_one() {
        l.prefix_num.push(number(c.numer().to_string()));
    }
    if !c.denom().is_one() {
        l.prefix_den.push(number(c.denom().to_string()));
    }
    for (a, e) in m.factors() {
        // a reciprocal atom to a positive power is a division
        let e = if matches!(a, Atom::Func(Func::Recip, _)) {
            -e
        } else {
            *e
        };
        let t = atom(a, e.abs());
        match (matches!(a, Atom::Param(_)), e > 0) {
            (true, true) => l.prefix_num.push(t),
            (true, false) => l.prefix_den.push(t),
            (false, true) => l.num.push(t),
            (false, false) => l.den.push(t),
        }
    }
    l
}

fn monomial_text(m: &Monomial, c: &Rational, names: &dyn CoordinateNames) -> String {
    let l = layout(m, c, |a, e| power_text(atom_text(a, names), e), |s| s);
    let mut parts = Vec::new();
    if !l.prefix_num.is_empty() || !l.prefix_den.is_empty() {
        let mut p = if l.prefix_num.is_empty() {
            "1".to_string()
        } else {
            l.prefix_num.join("*")
        };
        match l.prefix_den.len() {
            0 => {}
            1 => p = format!("{p}/{}", l.prefix_den[0]),
            _ => p = format!("{p}/({})", l.prefix_den.join("*")),
        }
        parts.push(p);
    }
    parts.extend(l.num);
    let mut s = if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    };
    for d in l.den {
        s.push('/');
        s.push_str(&d);
    }
    s
}

fn atom_latex(a: &Atom, names: &dyn CoordinateNames) -> String {
    match a {
        Atom::Coord(c) => names.latex(c),
        Atom::Param(p) => latex_name(p),
        Atom::Opaque(o) => {
            let f = latex_name(&o.name);
            if o.is_underived() {
                return f;
            }
            let total: u32 = o.derivs.iter().sum();
            let mut den = Vec::new();
            for (slot, &k) in o.slots.iter().zip(&o.derivs) {
                match k {
                    0 => {}
                    1 => den.push(format!("\\partial {}", names.latex(slot))),
                    k => den.push(format!("\\partial {}^{{{k}}}", names.latex(slot))),
                }
            }
            if total == 1 {
                format!("\\frac{{\\partial {f}}}{{{}}}", den.join(" "))
            } else {
                format!("\\frac{{\\partial^{{{total}}} {f}}}{{{}}}", den.join(" "))
            }
        }
        Atom::Func(Func::Sqrt, arg) => format!("\\sqrt{{{}}}", arg.to_latex(names)),
        Atom::Func(Func::Recip, arg) => format!("\\left({}\\right)", arg.to_latex(names)),
        Atom::Func(f, arg) => format!("\\{}\\left({}\\right)", f.name(), arg.to_latex(names)),
    }
}

fn latex_power(base: String, e: i32, atom: &Atom) -> String {
    if e == 1 {
        return base;
    }
    let wrapped = match atom {
        Atom::Opaque(o) if !o.is_underived() => format!("\\left({base}\\right)"),
        Atom::Func(Func::Sqrt, _) => format!("\\left({base}\\right)"),
        _ => base,
    };
    format!("{wrapped}^{{{e}}}")
}

fn monomial_latex(m: &Monomial, c: &Rational, names: &dyn CoordinateNames) -> String {
    let l = layout(m, c, |a, e| latex_power(atom_latex(a, names), e, a), |s| s);
    let frac = |num: Vec<String>, den: Vec<String>| {
        let num = if num.is_empty() {
            "1".to_string()
        } else {
            num.join(" ")
        };
        if den.is_empty() {
            num
        } else {
            format!("\\frac{{{num}}}{{{}}}", den.join(" "))
        }
    };
    if !l.den.is_empty() {
        let mut num = l.prefix_num;
        num.extend(l.num);
        let mut den = l.prefix_den;
        den.extend(l.den);
        return frac(num, den);
    }
    let has_prefix = !l.prefix_num.is_empty() || !l.prefix_den.is_empty();
    let mut parts = Vec::new();
    if has_prefix || l.num.is_empty() {
        parts.push(frac(l.prefix_num, l.prefix_den));
    }
    parts.extend(l.num);
    parts.join(" ")
}

fn coord_json(c: &JetCoordinate) -> Json {
    match c {
        JetCoordinate::Base(i) => json!({"kind": "base", "i": i + 1}),
        JetCoordinate::Fibre { sigma, j } => json!({
            "kind": "fibre",
            "sigma": sigma + 1,
            "J": j.entries().iter().map(|e| e + 1).collect::<Vec<_>>(),
        }),
    }
}

fn atom_json(a: &Atom) -> Json {
    match a {
        Atom::Coord(c) => coord_json(c),
        Atom::Param(p) => json!({"kind": "param", "name": p.as_ref()}),
        Atom::Opaque(o) => json!({
            "kind": "opaque",
            "name": o.name.as_ref(),
            "slots": o.slots.iter().map(coord_json).collect::<Vec<_>>(),
            "derivs": o.derivs,
        }),
        Atom::Func(f, arg) => json!({"kind": "func", "name": f.name(), "arg": arg.to_json()}),
    }
}

impl Expr {
    pub fn to_text(&self, names: &dyn CoordinateNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let body = monomial_text(m, &c.abs(), names);
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => s.push('-'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" - "),
            }
            s.push_str(&body);
        }
        s
    }

    pub fn to_latex(&self, names: &dyn CoordinateNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let body = monomial_latex(m, &c.abs(), names);
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => s.push('-'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" - "),
            }
            s.push_str(&body);
        }
        s
    }

    /// Stable JSON tree; indices are one-based.
    pub fn to_json(&self) -> Json {
        let terms: Vec<Json> = self
            .terms()
            .map(|(m, c)| {
                let factors: Vec<Json> = m
                    .factors()
                    .iter()
                    .map(|(a, e)| json!({"atom": atom_json(a), "exp": e}))
                    .collect();
                json!({"coeff": rational_text(c), "factors": factors})
            })
            .collect();
        json!({ "terms": terms })
    }
}
