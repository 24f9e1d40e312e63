//! Command dispatch and output rendering.

use clap::ValueEnum;
use serde_json::{json, Map, Value as Json};

use super::model::ModelFile;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::probe::{self, ProbeConfig, Verdict};
use crate::prolong::{
    first_variation_split, lie_derivative, noether_current, ProjectableVectorField,
};
use crate::symexpr::{Expr, Value};
use crate::variational::{
    cartan_form, classes_equal, contact_homotopy, euler_lagrange, helmholtz, interior_euler,
    is_lepage, is_variationally_trivial, lepage_equivalent, reduced_helmholtz_mechanics, residual,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Euler–Lagrange form of a Lagrangian.
    El,
    /// Interior Euler operator and residual of a form of degree above n.
    InteriorEuler,
    /// Helmholtz form of a source form.
    Helmholtz,
    /// Reduced Helmholtz form of a second-order dynamical form (n = 1).
    HelmholtzReduced,
    /// Cartan form.
    Cartan,
    /// Whether the form is a Lepage form.
    LepageCheck,
    /// A Lepage equivalent.
    Lepage,
    /// Tonti Lagrangian of a variational source form.
    Tonti,
    /// Variational triviality, with a primitive when one is found.
    Trivial,
    /// Noether current of a field.
    Noether,
    /// First-variation split of a Lagrangian along a field.
    FirstVariation,
    /// Lie derivative along the prolonged field.
    Lie,
    /// Whether two forms define the same variational class.
    ClassEq,
    /// Randomized comparison of two forms (or of one form with zero).
    Probe,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

/// What a command needs beyond the model.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub forms: Vec<String>,
    pub field: Option<String>,
    pub order: Option<usize>,
    pub probe: ProbeConfig,
}

#[derive(Clone, Debug)]
pub enum Output {
    Form(Form),
    Bool(bool),
    Text(String),
}

/// Named results of one command, in a fixed order.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub forms: Vec<String>,
    pub field: Option<String>,
    pub entries: Vec<(&'static str, Output)>,
}

fn missing(msg: String) -> Error {
    Error::Usage(msg)
}

fn select_forms(model: &ModelFile, opts: &Options, count: usize) -> Result<Vec<(String, Form)>> {
    let names: Vec<String> = if opts.forms.is_empty() {
        if model.forms.is_empty() {
            return Err(missing("the model declares no forms".into()));
        }
        model.forms[model.forms.len().saturating_sub(count)..]
            .iter()
            .map(|f| f.name.clone())
            .collect()
    } else {
        opts.forms.clone()
    };
    if names.len() != count && !(count == 2 && names.len() == 1) {
        return Err(missing(format!(
            "the command takes {count} form(s), got {}",
            names.len()
        )));
    }
    let mut out = Vec::new();
    for n in names {
        let f = model
            .form(&n)
            .ok_or_else(|| missing(format!("no form named `{n}`")))?;
        let f = match opts.order {
            Some(r) => f.lift(r)?,
            None => f.clone(),
        };
        out.push((n, f));
    }
    Ok(out)
}

fn select_field<'a>(
    model: &'a ModelFile,
    opts: &Options,
) -> Result<(String, &'a ProjectableVectorField)> {
    match &opts.field {
        Some(n) => model
            .field(n)
            .map(|f| (n.clone(), f))
            .ok_or_else(|| missing(format!("no field named `{n}`"))),
        None => model
            .fields
            .last()
            .map(|f| (f.name.clone(), &f.field))
            .ok_or_else(|| {
                missing("the command needs a vector field; the model declares none".into())
            }),
    }
}

pub fn execute(command: Command, model: &ModelFile, opts: &Options) -> Result<Report> {
    let two = matches!(command, Command::ClassEq | Command::Probe);
    let forms = select_forms(model, opts, if two { 2 } else { 1 })?;
    let needs_field = matches!(
        command,
        Command::Noether | Command::FirstVariation | Command::Lie
    );
    let field = if needs_field {
        Some(select_field(model, opts)?)
    } else {
        None
    };
    let rho = &forms[0].1;
    let mut entries: Vec<(&'static str, Output)> = Vec::new();
    match command {
        Command::El => entries.push(("euler_lagrange", Output::Form(euler_lagrange(rho)?))),
        Command::InteriorEuler => {
            entries.push(("interior_euler", Output::Form(interior_euler(rho)?)));
            entries.push(("residual", Output::Form(residual(rho)?)));
        }
        Command::Helmholtz => entries.push(("helmholtz", Output::Form(helmholtz(rho)?))),
        Command::HelmholtzReduced => {
            let r = reduced_helmholtz_mechanics(rho)?;
            let holds = r.holds();
            entries.push(("reduced", Output::Form(r.reduced)));
            entries.push(("eta", Output::Form(r.eta)));
            entries.push(("identity_holds", Output::Bool(holds)));
        }
        Command::Cartan => entries.push(("cartan", Output::Form(cartan_form(rho)?))),
        Command::LepageCheck => entries.push(("lepage", Output::Bool(is_lepage(rho)?))),
        Command::Lepage => {
            entries.push(("lepage_equivalent", Output::Form(lepage_equivalent(rho)?)))
        }
        Command::Tonti => {
            if rho.degree() != rho.n() + 1 {
                return Err(Error::Precondition(
                    "a Tonti Lagrangian needs a source form of degree n + 1".into(),
                ));
            }
            if !helmholtz(rho)?.is_zero() {
                return Err(Error::Precondition(
                    "the source form is not variational: its Helmholtz form is nonzero".into(),
                ));
            }
            let lambda = contact_homotopy(&interior_euler(rho)?)?.horizontal();
            entries.push(("lagrangian", Output::Form(lambda)));
        }
        Command::Trivial => {
            let t = is_variationally_trivial(rho)?;
            entries.push(("trivial", Output::Bool(t.trivial)));
            if let Some(p) = t.primitive {
                entries.push(("primitive", Output::Form(p)));
            }
        }
        Command::Noether => {
            let (_, z) = field.as_ref().expect("field selected");
            let lepage = if rho.degree() == rho.n() && rho.horizontal() == *rho {
                cartan_form(rho)?
            } else {
                rho.clone()
            };
            let c = noether_current(&lepage, z)?;
            entries.push(("current", Output::Form(c.horizontal)));
            entries.push(("full", Output::Form(c.full)));
        }
        Command::FirstVariation => {
            let (_, z) = field.as_ref().expect("field selected");
            let fv = first_variation_split(rho, z)?;
            entries.push(("euler_term", Output::Form(fv.euler_term)));
            entries.push(("current", Output::Form(fv.current)));
            entries.push(("boundary_term", Output::Form(fv.boundary_term)));
        }
        Command::Lie => {
            let (_, z) = field.as_ref().expect("field selected");
            entries.push(("lie", Output::Form(lie_derivative(z, rho)?)));
        }
        Command::ClassEq => {
            let other = forms
                .get(1)
                .map(|f| f.1.clone())
                .unwrap_or_else(|| Form::zero(rho.space(), rho.degree()));
            entries.push(("equal", Output::Bool(classes_equal(rho, &other)?)));
        }
        Command::Probe => {
            let other = forms
                .get(1)
                .map(|f| f.1.clone())
                .unwrap_or_else(|| Form::zero(rho.space(), rho.degree()));
            match probe::forms_equal_probabilistic(rho, &other, &opts.probe)? {
                Verdict::Equal => entries.push(("verdict", Output::Text("equal".into()))),
                Verdict::Unknown => entries.push(("verdict", Output::Text("unknown".into()))),
                Verdict::Unequal(w) => {
                    entries.push(("verdict", Output::Text("unequal".into())));
                    let space = rho.space();
                    let mut parts: Vec<String> = w
                        .env
                        .coords
                        .iter()
                        .map(|(c, v)| format!("{}={v}", space.coordinate_name(c)))
                        .collect();
                    parts.extend(w.env.params.iter().map(|(p, v)| format!("{p}={v}")));
                    // Values are coefficients of the stored wedge; show them
                    // against its display order.
                    let (mut left, mut right) = (w.left.clone(), w.right.clone());
                    let at = if w.atoms.is_empty() {
                        String::new()
                    } else {
                        let mut unit = Form::zero(space, w.atoms.len());
                        unit.push(w.atoms.clone(), Expr::one());
                        let text = unit.to_text();
                        match text.strip_prefix('-') {
                            Some(rest) => {
                                left = negate(&left);
                                right = negate(&right);
                                format!(" on {rest}")
                            }
                            None => format!(" on {text}"),
                        }
                    };
                    let text = format!(
                        "seed {} trial {}{at}: {} vs {} at {}",
                        w.seed,
                        w.trial,
                        value_text(&left),
                        value_text(&right),
                        parts.join(", ")
                    );
                    entries.push(("witness", Output::Text(text)));
                }
            }
        }
    }
    Ok(Report {
        command,
        forms: forms.into_iter().map(|(n, _)| n).collect(),
        field: field.map(|(n, _)| n),
        entries,
    })
}

fn negate(v: &Value) -> Value {
    match v {
        Value::Exact(r) => Value::Exact(-r),
        Value::Float(x) => Value::Float(-x),
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Exact(r) => r.to_string(),
        Value::Float(x) => format!("{x:e}"),
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut result = Map::new();
                for (k, v) in &self.entries {
                    let j = match v {
                        Output::Form(f) => f.to_json(),
                        Output::Bool(b) => json!(b),
                        Output::Text(t) => json!(t),
                    };
                    result.insert((*k).to_string(), j);
                }
                let out = json!({
                    "command": self.command.name(),
                    "forms": self.forms,
                    "field": self.field,
                    "result": Json::Object(result),
                });
                serde_json::to_string_pretty(&out).expect("serializable") + "\n"
            }
            Format::Text | Format::Latex => {
                let show = |v: &Output| match v {
                    Output::Form(f) if format == Format::Latex => f.to_latex(),
                    Output::Form(f) => f.to_text(),
                    Output::Bool(b) => b.to_string(),
                    Output::Text(t) => t.clone(),
                };
                if self.entries.len() == 1 {
                    return show(&self.entries[0].1) + "\n";
                }
                self.entries
                    .iter()
                    .map(|(k, v)| format!("{k}: {}\n", show(v)))
                    .collect()
            }
        }
    }
}
