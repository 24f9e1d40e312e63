//! Model files: a jet space, parameters, opaque functions, named forms and
//! named vector fields.
//!
//! ```text
//! space { base t x; fibre v w; }
//! param hbar m;
//! opaque V(v);
//! form lambda : degree 2 order 1 = (-hbar^2/(4*m)*(v_x^2 + w_x^2)) dt^dx;
//! field phase = [v: w, w: -v];
//! ```
//!
//! Inside form expressions `^` is a power between a scalar and an integer
//! and a wedge otherwise; juxtaposition multiplies, so the text rendering of
//! a form reads back as the same form. `w(v)` is the contact form of the
//! fibre coordinate `v` even if `w` names a coordinate; write `w*(v)` for
//! the product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::lexer::{tokenize, Spanned, Tok};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::jet_space::{JetCoordinate, JetSpace, MultiIndex};
use crate::prolong::ProjectableVectorField;
use crate::symexpr::{Expr, Func};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: warning: {}", self.line, self.col, self.msg)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OpaqueDecl {
    pub name: String,
    pub slots: Vec<JetCoordinate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedForm {
    pub name: String,
    pub form: Form,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedField {
    pub name: String,
    pub field: ProjectableVectorField,
}

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub space: Arc<JetSpace>,
    pub params: Vec<String>,
    pub opaques: Vec<OpaqueDecl>,
    pub forms: Vec<NamedForm>,
    pub fields: Vec<NamedField>,
    pub warnings: Vec<Warning>,
}

/// Equality of content; warnings are ignored.
impl PartialEq for ModelFile {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.params == other.params
            && self.opaques == other.opaques
            && self.fields == other.fields
            && self.forms.len() == other.forms.len()
            && self.forms.iter().zip(&other.forms).all(|(a, b)| {
                a.name == b.name && a.form == b.form && a.form.order() == b.form.order()
            })
    }
}

impl ModelFile {
    pub fn parse(src: &str) -> Result<ModelFile> {
        Parser::new(tokenize(src)?).model()
    }

    pub fn form(&self, name: &str) -> Option<&Form> {
        self.forms.iter().find(|f| f.name == name).map(|f| &f.form)
    }

    pub fn field(&self, name: &str) -> Option<&ProjectableVectorField> {
        self.fields
            .iter()
            .find(|f| f.name == name)
            .map(|f| &f.field)
    }

    /// Canonical model text; parsing it gives back an equal model.
    pub fn to_text(&self) -> String {
        let space = self.space.as_ref();
        let mut out = format!(
            "space {{ base {}; fibre {}; }}\n",
            space.base_names().join(" "),
            space.fibre_names().join(" ")
        );
        if !self.params.is_empty() {
            out.push_str(&format!("param {};\n", self.params.join(" ")));
        }
        for o in &self.opaques {
            let slots: Vec<String> = o.slots.iter().map(|c| space.coordinate_name(c)).collect();
            out.push_str(&format!("opaque {}({});\n", o.name, slots.join(", ")));
        }
        for f in &self.forms {
            out.push_str(&format!(
                "form {} : degree {} order {} = {};\n",
                f.name,
                f.form.degree(),
                f.form.order(),
                f.form.to_text()
            ));
        }
        for f in &self.fields {
            let mut parts = Vec::new();
            for (i, x) in f.field.xi().iter().enumerate() {
                if !x.is_zero() {
                    parts.push(format!("{}: {}", space.base_name(i), x.to_text(space)));
                }
            }
            for (s, x) in f.field.fibre().iter().enumerate() {
                if !x.is_zero() {
                    parts.push(format!("{}: {}", space.fibre_name(s), x.to_text(space)));
                }
            }
            out.push_str(&format!("field {} = [{}];\n", f.name, parts.join(", ")));
        }
        out
    }
}

/// A parsed value: scalar or form.
#[derive(Clone, Debug)]
enum Val {
    S(Expr),
    F(Form),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    space: Option<Arc<JetSpace>>,
    params: Vec<String>,
    opaques: BTreeMap<String, Vec<JetCoordinate>>,
    opaque_order: Vec<String>,
    forms: Vec<NamedForm>,
    fields: Vec<NamedField>,
    warnings: Vec<Warning>,
    /// Declared order of the form being parsed.
    order_limit: Option<(String, usize)>,
}

const BUILTINS: &[&str] = &["d", "sqrt", "exp", "sin", "cos"];
const KEYWORDS: &[&str] = &[
    "space", "base", "fibre", "param", "opaque", "form", "field", "degree", "order",
];

impl Parser {
    fn new(toks: Vec<Spanned>) -> Self {
        Parser {
            toks,
            pos: 0,
            space: None,
            params: Vec::new(),
            opaques: BTreeMap::new(),
            opaque_order: Vec::new(),
            forms: Vec::new(),
            fields: Vec::new(),
            warnings: Vec::new(),
            order_limit: None,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, at: (usize, usize), msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: at.0,
            col: at.1,
            msg: msg.into(),
        })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        self.err_at(self.here(), msg)
    }

    fn warn(&mut self, at: (usize, usize), msg: String) {
        self.warnings.push(Warning {
            line: at.0,
            col: at.1,
            msg,
        });
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!(
                "expected {}, found {}",
                t.describe(),
                self.peek().describe()
            ))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => self.err(format!("expected an identifier, found {}", t.describe())),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == k => {
                self.next();
                Ok(())
            }
            t => self.err(format!("expected `{k}`, found {}", t.describe())),
        }
    }

    fn uint(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let at = self.here();
                self.next();
                s.parse()
                    .or_else(|_| self.err_at(at, format!("number `{s}` is too large")))
            }
            t => self.err(format!("expected a number, found {}", t.describe())),
        }
    }

    fn space(&self) -> &Arc<JetSpace> {
        self.space.as_ref().expect("space declared")
    }

    fn model(mut self) -> Result<ModelFile> {
        while *self.peek() != Tok::Eof {
            let at = self.here();
            let kw = self.ident()?;
            if kw != "space" && self.space.is_none() {
                return self.err_at(at, "the model must start with a `space` declaration");
            }
            match kw.as_str() {
                "space" if self.space.is_some() => {
                    return self.err_at(at, "the space is already declared")
                }
                "space" => self.space_decl(at)?,
                "param" => self.param_decl()?,
                "opaque" => self.opaque_decl()?,
                "form" => self.form_decl()?,
                "field" => self.field_decl()?,
                other => return self.err_at(at, format!("unknown statement `{other}`")),
            }
        }
        let Some(space) = self.space else {
            return self.err("the model must start with a `space` declaration");
        };
        let opaques = self
            .opaque_order
            .iter()
            .map(|n| OpaqueDecl {
                name: n.clone(),
                slots: self.opaques[n].clone(),
            })
            .collect();
        Ok(ModelFile {
            space,
            params: self.params,
            opaques,
            forms: self.forms,
            fields: self.fields,
            warnings: self.warnings,
        })
    }

    fn name_list(&mut self) -> Result<Vec<(String, (usize, usize))>> {
        let mut out = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            let at = self.here();
            out.push((self.ident()?, at));
            self.eat(&Tok::Comma);
        }
        Ok(out)
    }

    fn space_decl(&mut self, at: (usize, usize)) -> Result<()> {
        self.expect(Tok::LBrace)?;
        let mut base = None;
        let mut fibre = None;
        while *self.peek() != Tok::RBrace {
            let kat = self.here();
            let which = self.ident()?;
            let names = self.name_list()?;
            for (n, nat) in &names {
                if KEYWORDS.contains(&n.as_str()) || BUILTINS.contains(&n.as_str()) {
                    return self.err_at(*nat, format!("`{n}` is reserved"));
                }
            }
            let names: Vec<String> = names.into_iter().map(|(n, _)| n).collect();
            self.expect(Tok::Semi)?;
            match which.as_str() {
                "base" => base = Some(names),
                "fibre" | "fiber" => fibre = Some(names),
                other => {
                    return self.err_at(kat, format!("expected `base` or `fibre`, found `{other}`"))
                }
            }
        }
        self.expect(Tok::RBrace)?;
        self.eat(&Tok::Semi);
        let space = JetSpace::new(base.unwrap_or_default(), fibre.unwrap_or_default());
        match space {
            Ok(s) => {
                self.space = Some(Arc::new(s));
                Ok(())
            }
            Err(Error::InvalidSpace(msg)) => self.err_at(at, msg),
            Err(e) => Err(e),
        }
    }

    fn check_fresh(&self, name: &str, at: (usize, usize)) -> Result<()> {
        let space = self.space();
        let taken = self.params.iter().any(|p| p == name)
            || self.opaques.contains_key(name)
            || self.forms.iter().any(|f| f.name == name)
            || self.fields.iter().any(|f| f.name == name)
            || resolve_coordinate(space, name).is_some();
        if taken {
            return self.err_at(at, format!("`{name}` is already declared"));
        }
        if KEYWORDS.contains(&name) || BUILTINS.contains(&name) {
            return self.err_at(at, format!("`{name}` is reserved"));
        }
        Ok(())
    }

    fn param_decl(&mut self) -> Result<()> {
        for (name, at) in self.name_list()? {
            self.check_fresh(&name, at)?;
            self.params.push(name);
        }
        self.expect(Tok::Semi)
    }

    fn opaque_decl(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.check_fresh(&name, at)?;
        self.expect(Tok::LParen)?;
        let mut slots = Vec::new();
        for (c, cat) in self.name_list()? {
            let coord = self.coordinate(&c, cat)?;
            if slots.contains(&coord) {
                return self.err_at(cat, format!("slot `{c}` repeated"));
            }
            slots.push(coord);
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        self.opaques.insert(name.clone(), slots);
        self.opaque_order.push(name);
        Ok(())
    }

    fn coordinate(&mut self, name: &str, at: (usize, usize)) -> Result<JetCoordinate> {
        let space = self.space().clone();
        match resolve_coordinate(&space, name) {
            Some((c, sorted)) => {
                if !sorted {
                    let canonical = space.coordinate_name(&c);
                    self.warn(
                        at,
                        format!("multi-index of `{name}` sorted to `{canonical}`"),
                    );
                }
                if let Some((form, r)) = &self.order_limit {
                    if c.order() > *r {
                        return self.err_at(
                            at,
                            format!("`{name}` has order {} but form `{form}` is declared with order {r}", c.order()),
                        );
                    }
                }
                Ok(c)
            }
            None => self.err_at(at, format!("undeclared identifier `{name}`")),
        }
    }

    fn form_decl(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.check_fresh(&name, at)?;
        self.expect(Tok::Colon)?;
        self.keyword("degree")?;
        let degree = self.uint()?;
        self.keyword("order")?;
        let order = self.uint()?;
        self.expect(Tok::Eq)?;
        let eat = self.here();
        self.order_limit = Some((name.clone(), order));
        let v = self.sum();
        self.order_limit = None;
        let v = v?;
        self.expect(Tok::Semi)?;
        let space = self.space().clone();
        let form = match v {
            Val::S(e) if e.is_zero() => Form::zero(&space, degree),
            Val::S(e) => Form::scalar(&space, e),
            Val::F(f) => f,
        };
        if form.degree() != degree {
            return self.err_at(
                eat,
                format!(
                    "form `{name}` is declared with degree {degree} but has degree {}",
                    form.degree()
                ),
            );
        }
        let required = form.required_order();
        if required > order {
            return self.err_at(
                eat,
                format!("form `{name}` is declared with order {order} but needs order {required}"),
            );
        }
        self.forms.push(NamedForm {
            name,
            form: form.fix_order(order),
        });
        Ok(())
    }

    fn field_decl(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.check_fresh(&name, at)?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBracket)?;
        let space = self.space().clone();
        let mut xi = vec![Expr::zero(); space.n()];
        let mut fibre = vec![Expr::zero(); space.m()];
        let mut seen = BTreeSet::new();
        while *self.peek() != Tok::RBracket {
            let kat = self.here();
            let key = self.ident()?;
            let slot = match resolve_coordinate(&space, &key) {
                Some((JetCoordinate::Base(i), _)) => (0, i),
                Some((JetCoordinate::Fibre { sigma, j }, _)) if j.is_empty() => (1, sigma),
                _ => return self.err_at(kat, format!("`{key}` is not a base or fibre coordinate")),
            };
            if !seen.insert(slot) {
                return self.err_at(kat, format!("component `{key}` given twice"));
            }
            self.expect(Tok::Colon)?;
            let vat = self.here();
            let e = match self.sum()? {
                Val::S(e) => e,
                Val::F(f) if f.degree() == 0 => f.coefficient(&[]),
                Val::F(_) => return self.err_at(vat, "field components must be scalars"),
            };
            if slot.0 == 0 {
                xi[slot.1] = e
            } else {
                fibre[slot.1] = e
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Semi)?;
        let generalized = fibre.iter().any(|f| f.order() > 0);
        let field = if generalized {
            self.warn(at, format!("field `{name}` depends on derivatives; generalized prolongation is experimental"));
            ProjectableVectorField::generalized(&space, xi, fibre)
        } else {
            ProjectableVectorField::new(&space, xi, fibre)
        };
        match field {
            Ok(field) => {
                self.fields.push(NamedField { name, field });
                Ok(())
            }
            Err(Error::Precondition(msg)) => self.err_at(at, msg),
            Err(e) => Err(e),
        }
    }

    // ---- expressions ----

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::LParen)
    }

    fn sum(&mut self) -> Result<Val> {
        let mut acc = self.product()?;
        loop {
            let at = self.here();
            if self.eat(&Tok::Plus) {
                let rhs = self.product()?;
                acc = self.add(acc, rhs, at)?;
            } else if self.eat(&Tok::Minus) {
                let rhs = self.product()?;
                acc = self.add(acc, neg(rhs), at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            if self.eat(&Tok::Star) {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs, at)?;
            } else if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                acc = self.div(acc, rhs, at)?;
            } else if self.starts_primary() {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Val> {
        if self.eat(&Tok::Minus) {
            return Ok(neg(self.unary()?));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.wedge()
    }

    fn wedge(&mut self) -> Result<Val> {
        let mut acc = self.power()?;
        while *self.peek() == Tok::Caret {
            self.next();
            let rhs = self.power()?;
            acc = Val::F(self.as_form(acc).wedge(&self.as_form(rhs)));
        }
        Ok(acc)
    }

    /// An integer exponent after `^` or `**`, if one follows.
    fn exponent_ahead(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2)),
            (Tok::StarStar, _, _)
                | (Tok::Caret, Tok::Int(_), _)
                | (Tok::Caret, Tok::Minus, Tok::Int(_))
        )
    }

    fn power(&mut self) -> Result<Val> {
        let base_at = self.here();
        let mut v = self.primary()?;
        while self.exponent_ahead() {
            let at = self.here();
            self.next();
            let negative = self.eat(&Tok::Minus);
            let eat = self.here();
            let k = self.uint()?;
            let k = i32::try_from(k).or_else(|_| self.err_at(eat, "exponent too large"))?;
            let k = if negative { -k } else { k };
            let base = match v {
                Val::S(e) => e,
                Val::F(f) if f.degree() == 0 => f.coefficient(&[]),
                Val::F(_) => return self.err_at(at, "cannot raise a form to a power"),
            };
            match base.pow(k) {
                Ok(e) => v = Val::S(e),
                Err(e) => return self.err_at(base_at, e.to_string()),
            }
        }
        Ok(v)
    }

    fn primary(&mut self) -> Result<Val> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Int(s) => {
                self.next();
                let n: num_bigint::BigInt = s.parse().expect("digits");
                Ok(Val::S(Expr::constant(n.into())))
            }
            Tok::LParen => {
                self.next();
                let v = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name) => {
                self.next();
                self.identifier(name, at)
            }
            t => self.err(format!("expected an expression, found {}", t.describe())),
        }
    }

    fn declared(&self, name: &str) -> bool {
        self.params.iter().any(|p| p == name)
            || self.opaques.contains_key(name)
            || self.forms.iter().any(|f| f.name == name)
            || resolve_coordinate(self.space(), name).is_some()
    }

    fn identifier(&mut self, name: String, at: (usize, usize)) -> Result<Val> {
        let space = self.space().clone();
        let call = *self.peek() == Tok::LParen && !self.declared(&name);
        if call {
            if let Some(f) = Func::from_name(&name) {
                self.next();
                let arg = self.sum()?;
                self.expect(Tok::RParen)?;
                let arg = self.as_scalar(arg, at, "function arguments must be scalars")?;
                return match Expr::apply(f, arg) {
                    Ok(e) => Ok(Val::S(e)),
                    Err(e) => self.err_at(at, e.to_string()),
                };
            }
            if name == "d" {
                self.next();
                let arg = self.sum()?;
                self.expect(Tok::RParen)?;
                let d = self.as_form(arg).exterior_d();
                return Ok(Val::F(d));
            }
        }
        if name == "w" && self.omega_ahead() {
            self.next();
            return self.omega(at);
        }
        if self.params.contains(&name) {
            return Ok(Val::S(Expr::param(&name)));
        }
        if let Some(slots) = self.opaques.get(&name).cloned() {
            let mut e = Expr::opaque(&name, slots.clone());
            if self.eat(&Tok::LBracket) {
                for (c, cat) in self.name_list()? {
                    let coord = self.coordinate(&c, cat)?;
                    if !slots.contains(&coord) {
                        return self.err_at(cat, format!("`{c}` is not a slot of `{name}`"));
                    }
                    e = e.partial(&coord);
                }
                self.expect(Tok::RBracket)?;
            }
            if let Some((form, r)) = &self.order_limit {
                if e.order() > *r {
                    let msg = format!(
                        "`{name}` has order {} but form `{form}` is declared with order {r}",
                        e.order()
                    );
                    return self.err_at(at, msg);
                }
            }
            return Ok(Val::S(e));
        }
        if let Some(f) = self.forms.iter().find(|f| f.name == name) {
            return Ok(Val::F(f.form.clone()));
        }
        if resolve_coordinate(&space, &name).is_some() {
            return Ok(Val::S(Expr::coord(self.coordinate(&name, at)?)));
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(i) = space.base_names().iter().position(|b| b == rest) {
                return Ok(Val::F(Form::dx(&space, i)));
            }
        }
        self.err_at(at, format!("undeclared identifier `{name}`"))
    }

    /// `w(` followed by a fibre name and `)` or `,` is always a contact
    /// form, even when `w` is itself a fibre coordinate.
    fn omega_ahead(&self) -> bool {
        match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Tok::LParen, Tok::Ident(f), Tok::RParen | Tok::Comma) => {
                self.space().fibre_names().contains(f)
            }
            _ => false,
        }
    }

    /// `w(v)` or `w(v, [t, x])`, after `w(`.
    fn omega(&mut self, at: (usize, usize)) -> Result<Val> {
        let space = self.space().clone();
        let fat = self.here();
        let fibre = self.ident()?;
        let Some(sigma) = space.fibre_names().iter().position(|f| *f == fibre) else {
            return self.err_at(fat, format!("`{fibre}` is not a fibre coordinate"));
        };
        let mut j = Vec::new();
        if self.eat(&Tok::Comma) {
            self.expect(Tok::LBracket)?;
            for (b, bat) in self.name_list()? {
                match space.base_names().iter().position(|x| *x == b) {
                    Some(i) => j.push(i),
                    None => return self.err_at(bat, format!("`{b}` is not a base coordinate")),
                }
            }
            self.expect(Tok::RBracket)?;
        }
        self.expect(Tok::RParen)?;
        if j.windows(2).any(|w| w[0] > w[1]) {
            let mut sorted = j.clone();
            sorted.sort_unstable();
            let names: Vec<&str> = sorted.iter().map(|&i| space.base_name(i)).collect();
            self.warn(at, format!("multi-index sorted to [{}]", names.join(",")));
        }
        if let Some((form, r)) = &self.order_limit {
            if j.len() + 1 > *r {
                let msg = format!(
                    "contact form of order {} in form `{form}` declared with order {r}",
                    j.len() + 1
                );
                return self.err_at(at, msg);
            }
        }
        Ok(Val::F(Form::omega(&space, sigma, MultiIndex::new(j))))
    }

    fn as_form(&self, v: Val) -> Form {
        match v {
            Val::S(e) => Form::scalar(self.space(), e),
            Val::F(f) => f,
        }
    }

    fn as_scalar(&self, v: Val, at: (usize, usize), msg: &str) -> Result<Expr> {
        match v {
            Val::S(e) => Ok(e),
            Val::F(f) if f.degree() == 0 => Ok(f.coefficient(&[])),
            Val::F(_) => self.err_at(at, msg),
        }
    }

    fn add(&self, a: Val, b: Val, at: (usize, usize)) -> Result<Val> {
        match (a, b) {
            (Val::S(x), Val::S(y)) => Ok(Val::S(&x + &y)),
            (a, b) => {
                let (fa, fb) = (self.as_form(a), self.as_form(b));
                // A zero scalar is the zero of every degree.
                if fa.is_zero() {
                    return Ok(Val::F(fb));
                }
                if fb.is_zero() {
                    return Ok(Val::F(fa));
                }
                if fa.degree() != fb.degree() {
                    return self.err_at(
                        at,
                        format!(
                            "cannot add forms of degree {} and {}",
                            fa.degree(),
                            fb.degree()
                        ),
                    );
                }
                Ok(Val::F(&fa + &fb))
            }
        }
    }

    fn mul(&self, a: Val, b: Val, at: (usize, usize)) -> Result<Val> {
        match (a, b) {
            (Val::S(x), Val::S(y)) => Ok(Val::S(&x * &y)),
            (Val::S(x), Val::F(f)) | (Val::F(f), Val::S(x)) => Ok(Val::F(f.scale(&x))),
            (Val::F(f), Val::F(g)) if f.degree() == 0 || g.degree() == 0 => Ok(Val::F(f.wedge(&g))),
            _ => self.err_at(at, "use `^` to wedge forms"),
        }
    }

    fn div(&self, a: Val, b: Val, at: (usize, usize)) -> Result<Val> {
        let d = self.as_scalar(b, at, "cannot divide by a form")?;
        let inv = match d.recip() {
            Ok(e) => e,
            Err(e) => return self.err_at(at, e.to_string()),
        };
        self.mul(a, Val::S(inv), at)
    }
}

fn neg(v: Val) -> Val {
    match v {
        Val::S(e) => Val::S(-e),
        Val::F(f) => Val::F(-f),
    }
}

/// Resolves a coordinate spelling: `q`, `qdd` (one base coordinate),
/// `v_tx` or `v_xt`. The flag is false when the multi-index was unsorted.
pub fn resolve_coordinate(space: &JetSpace, name: &str) -> Option<(JetCoordinate, bool)> {
    if let Some(i) = space.base_names().iter().position(|b| b == name) {
        return Some((JetCoordinate::Base(i), true));
    }
    for (sigma, f) in space.fibre_names().iter().enumerate() {
        let Some(rest) = name.strip_prefix(f.as_str()) else {
            continue;
        };
        if rest.is_empty() {
            return Some((JetCoordinate::fibre(sigma, MultiIndex::empty()), true));
        }
        if space.n() == 1 && rest.chars().all(|c| c == 'd') {
            return Some((
                JetCoordinate::fibre(sigma, MultiIndex::new(vec![0; rest.len()])),
                true,
            ));
        }
        if let Some(suffix) = rest.strip_prefix('_') {
            if let Some(j) = split_base_names(space, suffix) {
                let sorted = j.windows(2).all(|w| w[0] <= w[1]);
                return Some((JetCoordinate::fibre(sigma, MultiIndex::new(j)), sorted));
            }
        }
    }
    None
}

fn split_base_names(space: &JetSpace, s: &str) -> Option<Vec<usize>> {
    if s.is_empty() {
        return None;
    }
    fn go(space: &JetSpace, s: &str, acc: &mut Vec<usize>) -> bool {
        if s.is_empty() {
            return true;
        }
        for (i, b) in space.base_names().iter().enumerate() {
            if let Some(rest) = s.strip_prefix(b.as_str()) {
                acc.push(i);
                if go(space, rest, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    go(space, s, &mut acc).then_some(acc)
}
