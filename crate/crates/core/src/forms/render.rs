use serde_json::{json, Value as Json};

use super::{Covector, Form};
use crate::jet_space::JetSpace;
use crate::symexpr::latex_name;
use crate::symexpr::Expr;

fn covector_text(space: &JetSpace, a: &Covector) -> String {
    match a {
        Covector::Dx(i) => format!("d{}", space.base_name(*i)),
        Covector::Omega(s, j) if j.is_empty() => format!("w({})", space.fibre_name(*s)),
        Covector::Omega(s, j) => {
            let names: Vec<&str> = j.entries().iter().map(|&e| space.base_name(e)).collect();
            format!("w({},[{}])", space.fibre_name(*s), names.join(","))
        }
    }
}

fn covector_latex(space: &JetSpace, a: &Covector) -> String {
    match a {
        Covector::Dx(i) => format!("\\mathrm{{d}}{}", latex_name(space.base_name(*i))),
        Covector::Omega(s, j) => {
            let sup = latex_name(space.fibre_name(*s));
            if j.is_empty() {
                format!("\\omega^{{{sup}}}")
            } else if space.n() == 1 {
                let dots = match j.len() {
                    1 => "\\dot",
                    2 => "\\ddot",
                    3 => "\\dddot",
                    _ => "",
                };
                if dots.is_empty() {
                    format!("\\omega^{{{sup}}}_{{({})}}", j.len())
                } else {
                    format!("{dots}{{\\omega}}^{{{sup}}}")
                }
            } else {
                let sub: Vec<String> = j
                    .entries()
                    .iter()
                    .map(|&e| latex_name(space.base_name(e)))
                    .collect();
                format!("\\omega^{{{sup}}}_{{{}}}", sub.join(""))
            }
        }
    }
}

fn term_text(coeff: &Expr, wedge: &str, space: &JetSpace) -> String {
    if wedge.is_empty() {
        return if coeff.num_terms() > 1 {
            format!("({})", coeff.to_text(space))
        } else {
            coeff.to_text(space)
        };
    }
    if *coeff == Expr::one() {
        return wedge.to_string();
    }
    if *coeff == Expr::int(-1) {
        return format!("-{wedge}");
    }
    if coeff.num_terms() > 1 {
        format!("({}) {wedge}", coeff.to_text(space))
    } else {
        format!("{} {wedge}", coeff.to_text(space))
    }
}

/// Display order of a stored wedge: contact factors first, then the `dx`.
/// Returns the reordered factors and whether the coefficient flips sign.
fn display_order(atoms: &[Covector]) -> (Vec<&Covector>, bool) {
    let dx = atoms.iter().filter(|a| !a.is_contact()).count();
    let contact = atoms.len() - dx;
    let mut out: Vec<&Covector> = atoms.iter().filter(|a| a.is_contact()).collect();
    out.extend(atoms.iter().filter(|a| !a.is_contact()));
    (out, dx * contact % 2 == 1)
}

fn signed(f: &Expr, flip: bool) -> Expr {
    if flip {
        -f
    } else {
        f.clone()
    }
}

impl Form {
    /// Plain-text rendering, re-readable by the model parser.
    pub fn to_text(&self) -> String {
        let space = self.space();
        if self.is_zero() {
            return "0".into();
        }
        if self.degree() == 0 {
            return self.coefficient(&[]).to_text(space.as_ref());
        }
        let mut out = String::new();
        for (k, (atoms, f)) in self.terms().enumerate() {
            let (atoms, flip) = display_order(atoms);
            let wedge: Vec<String> = atoms.iter().map(|a| covector_text(space, a)).collect();
            let t = term_text(&signed(f, flip), &wedge.join("^"), space);
            if k == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let space = self.space();
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (atoms, f)) in self.terms().enumerate() {
            let (atoms, flip) = display_order(atoms);
            let f = &signed(f, flip);
            let wedge: Vec<String> = atoms.iter().map(|a| covector_latex(space, a)).collect();
            let wedge = wedge.join(" \\wedge ");
            let c = f.to_latex(space.as_ref());
            let t = if wedge.is_empty() {
                c
            } else if *f == Expr::one() {
                wedge
            } else if *f == Expr::int(-1) {
                format!("-{wedge}")
            } else if f.num_terms() > 1 {
                format!("\\left({c}\\right) {wedge}")
            } else {
                format!("{c} \\, {wedge}")
            };
            if k == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        out
    }

    /// JSON per `docs/form.schema.json`; indices are one-based.
    pub fn to_json(&self) -> Json {
        let terms: Vec<Json> = self
            .terms()
            .map(|(atoms, f)| {
                let atoms: Vec<Json> = atoms
                    .iter()
                    .map(|a| match a {
                        Covector::Dx(i) => json!({"kind": "dx", "i": i + 1}),
                        Covector::Omega(s, j) => json!({
                            "kind": "omega",
                            "sigma": s + 1,
                            "J": j.entries().iter().map(|e| e + 1).collect::<Vec<_>>(),
                        }),
                    })
                    .collect();
                json!({"coeff": f.to_json(), "atoms": atoms})
            })
            .collect();
        json!({"order": self.order(), "degree": self.degree(), "terms": terms})
    }
}
