//! Task execution and the text / JSON reports.

use std::fmt::Write as _;

use hopfcat::catmod::{module_hom_basis, HomSpace};
use hopfcat::catmod::validate_cat_module;
use hopfcat::equivariant::{hom_h_action, invariant_hom_equals_smash_hom, smash_hom_basis, validate_equivariant};
use hopfcat::hcat::{validate_category, validate_coh_category, validate_h_category};
use hopfcat::homological::{ext_groups, Context, ExtGroups, Operand};
use hopfcat::hopf::check_hopf;
use hopfcat::hrep::invariants;
use hopfcat::relhopf::{dual_smash_category, dual_smash_hom_basis, relhopf_hom_basis, validate_relhopf};
use hopfcat::spectral::{grothendieck_ss, render_table, GrothendieckResult, SsInput, Theorem};
use hopfcat::{Error, Report};
use serde_json::{json, Value};

use crate::document::{describe_category, HomMode, InputError, Module, Structure, TaskSpec, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Mismatch,
    Invalid,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Mismatch => "mismatch",
            Status::Invalid => "invalid",
        }
    }

    /// Process exit code.
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 1,
            Status::Invalid => 2,
        }
    }
}

pub struct Outcome {
    pub kind: &'static str,
    pub inputs: Vec<(&'static str, String)>,
    pub status: Status,
    pub messages: Vec<String>,
    pub text: String,
    pub data: Value,
}

impl Outcome {
    fn new(kind: &'static str, inputs: Vec<(&'static str, String)>) -> Outcome {
        Outcome { kind, inputs, status: Status::Pass, messages: Vec::new(), text: String::new(), data: json!({}) }
    }

    fn fail(mut self, status: Status, msg: impl Into<String>) -> Outcome {
        self.status = self.status.max(status);
        self.messages.push(msg.into());
        self
    }

    fn json(&self) -> Value {
        let inputs: serde_json::Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        json!({
            "task": self.kind,
            "inputs": inputs,
            "status": self.status.tag(),
            "messages": self.messages,
            "result": self.data,
        })
    }
}

fn classify(e: &Error) -> Status {
    match e {
        Error::CrossCheck(_) | Error::Inconsistent(_) => Status::Mismatch,
        _ => Status::Invalid,
    }
}

fn violations(r: &Report) -> Vec<String> {
    r.violations.iter().map(|v| format!("{}: {}", v.law, v.detail)).collect()
}

/// Validation of the structures a task depends on.
fn structure_report(w: &Workspace) -> Report {
    let mut r = check_hopf(&w.hopf).prefixed("hopf");
    r.extend(validate_category(w.category.base()).prefixed("category"));
    match &w.category {
        Structure::Action(c) => r.extend(validate_h_category(c).prefixed("category")),
        Structure::Coaction(d) => r.extend(validate_coh_category(d).prefixed("category")),
    }
    r
}

fn module_report(m: &Module) -> Report {
    match m {
        Module::Equiv(e) => {
            let mut r = validate_cat_module(e.base());
            r.extend(validate_equivariant(e));
            r
        }
        Module::Rel(x) => {
            let mut r = validate_cat_module(x.base());
            r.extend(validate_relhopf(x));
            r
        }
    }
}

/// Resolves and validates the named modules; `Err` aborts the task.
fn operands<'a>(w: &'a Workspace, names: &[&str]) -> Result<Vec<&'a Module>, String> {
    let s = structure_report(w);
    if !s.is_empty() {
        return Err(format!("structures fail validation:\n{s}"));
    }
    names
        .iter()
        .map(|n| {
            let m = w.module(n).map_err(|InputError(e)| e)?;
            let r = module_report(m);
            if r.is_empty() {
                Ok(m)
            } else {
                Err(format!("module `{n}` fails validation:\n{r}"))
            }
        })
        .collect()
}

pub fn run_task(w: &Workspace, t: &TaskSpec) -> Outcome {
    match t {
        TaskSpec::Check {} => check(w),
        TaskSpec::Hom { source, target, mode } => hom(w, source, target, *mode),
        TaskSpec::Ext { source, target, context, degree } => ext(w, source, target, context, *degree),
        TaskSpec::Ss { theorem, source, target, degree } => ss(w, theorem, source, target, *degree),
    }
}

fn check(w: &Workspace) -> Outcome {
    let mut o = Outcome::new("check", vec![]);
    let mut items = Vec::new();
    let mut text = String::new();
    let mut record = |name: String, r: Result<Report, String>| {
        let (ok, lines) = match r {
            Ok(rep) => (rep.is_empty(), violations(&rep)),
            Err(e) => (false, vec![e]),
        };
        let _ = writeln!(text, "  {:<28} {}", name, if ok { "ok" } else { "FAIL" });
        for l in &lines {
            let _ = writeln!(text, "      {l}");
        }
        items.push(json!({"item": name, "ok": ok, "violations": lines}));
        ok
    };
    let mut all = record(format!("hopf {}", w.hopf_name), Ok(check_hopf(&w.hopf)));
    let mut cat = validate_category(w.category.base());
    match &w.category {
        Structure::Action(c) => cat.extend(validate_h_category(c)),
        Structure::Coaction(d) => cat.extend(validate_coh_category(d)),
    }
    all &= record(format!("category {}", w.category_name), Ok(cat));
    for (name, m) in &w.modules {
        let r = match m {
            Ok(m) => Ok(module_report(m)),
            Err(InputError(e)) => Err(e.clone()),
        };
        all &= record(format!("module {name}"), r);
    }
    o.text = text;
    o.data = json!({"items": items});
    if !all {
        o = o.fail(Status::Invalid, "validation failures");
    }
    o
}

fn hom_json(h: &HomSpace) -> Value {
    let basis: Vec<Vec<String>> = h.basis.columns().iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
    json!({"dim": h.dim(), "ambient_dim": h.ambient_dim(), "basis": basis})
}

fn hom(w: &Workspace, source: &str, target: &str, mode: HomMode) -> Outcome {
    let mut o = Outcome::new("hom", vec![("source", source.into()), ("target", target.into()), ("mode", mode.tag().into())]);
    let ms = match operands(w, &[source, target]) {
        Ok(v) => v,
        Err(e) => return o.fail(Status::Invalid, e),
    };
    let res: hopfcat::Result<()> = (|| {
        match (mode, ms[0], ms[1]) {
            (HomMode::Plain, a, b) => {
                let (ba, bb) = match (a, b) {
                    (Module::Equiv(a), Module::Equiv(b)) => (a.base(), b.base()),
                    (Module::Rel(a), Module::Rel(b)) => (a.base(), b.base()),
                    _ => return Err(Error::Invalid("modules over different categories".into())),
                };
                let h = module_hom_basis(ba, bb)?;
                o.text = format!("  dim Hom = {}\n", h.dim());
                o.data = json!({"hom": hom_json(&h)});
            }
            (HomMode::Equivariant, Module::Equiv(a), Module::Equiv(b)) => {
                let action = hom_h_action(a, b)?;
                let inv = invariants(&action.module).cols();
                let smash = smash_hom_basis(a, b)?;
                let agree = invariant_hom_equals_smash_hom(a, b)?;
                o.text = format!(
                    "  dim Hom_C = {}\n  dim Hom_C^H = {inv}\n  dim Hom_C#H = {}\n  invariants = smash Hom: {}\n",
                    action.hom.dim(),
                    smash.dim(),
                    if agree { "yes" } else { "NO" }
                );
                o.data = json!({"hom": hom_json(&action.hom), "invariant_dim": inv, "smash": hom_json(&smash), "agree": agree});
                if !agree {
                    return Err(Error::CrossCheck("invariant morphisms differ from smash morphisms".into()));
                }
            }
            (HomMode::Colinear, Module::Rel(a), Module::Rel(b)) => {
                let h = relhopf_hom_basis(a, b)?;
                let opcat = dual_smash_category(a.dcat());
                let dual = dual_smash_hom_basis(a, b, &opcat)?;
                o.text = format!("  dim Hom colinear = {}\n  dual smash route = {}\n", h.dim(), dual.dim());
                o.data = json!({"hom": hom_json(&h), "dual_smash_dim": dual.dim()});
            }
            (m, _, _) => {
                return Err(Error::Invalid(format!("{} Hom needs {} modules", m.tag(), match m {
                    HomMode::Colinear => "relative Hopf",
                    _ => "equivariant",
                })))
            }
        }
        Ok(())
    })();
    match res {
        Ok(()) => o,
        Err(e) => o.fail(classify(&e), e.to_string()),
    }
}

fn dims_line(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn operand(m: &Module) -> Operand<'_> {
    match m {
        Module::Equiv(e) => Operand::Equiv(e),
        Module::Rel(r) => Operand::Rel(r),
    }
}

fn ext_json(e: &ExtGroups) -> Value {
    let mut v = json!({
        "context": e.context.tag(),
        "degree": e.degree,
        "dims": e.dims,
        "injective_dims": e.injective_dims,
    });
    if let Some((a, b)) = &e.fixed_dims {
        v["fixed_dims"] = json!({"from_resolution": a, "direct": b});
    }
    v
}

fn ext(w: &Workspace, source: &str, target: &str, context: &str, degree: usize) -> Outcome {
    let mut o = Outcome::new(
        "ext",
        vec![("source", source.into()), ("target", target.into()), ("context", context.into()), ("degree", degree.to_string())],
    );
    let Some(ctx) = Context::parse(context) else {
        let tags: Vec<&str> = Context::ALL.iter().map(|c| c.tag()).collect();
        return o.fail(Status::Invalid, format!("unknown context `{context}` ({})", tags.join(", ")));
    };
    let ms = match operands(w, &[source, target]) {
        Ok(v) => v,
        Err(e) => return o.fail(Status::Invalid, e),
    };
    match ext_groups(operand(ms[0]), operand(ms[1]), ctx, degree) {
        Ok(e) => {
            let _ = writeln!(o.text, "  context {}", e.context);
            let _ = writeln!(o.text, "  dim Ext^q, q = 0..{degree}: {}", dims_line(&e.dims));
            let _ = writeln!(o.text, "  injective route:         {}", dims_line(&e.injective_dims));
            if let Some((a, b)) = &e.fixed_dims {
                let _ = writeln!(o.text, "  fixed points:            {}", dims_line(a));
                let _ = writeln!(o.text, "  fixed points (direct):   {}", dims_line(b));
            }
            o.data = ext_json(&e);
            o
        }
        Err(e) => o.fail(classify(&e), e.to_string()),
    }
}

/// `[{"p":..,"q":..,"dim":..}]`, `p` outer.
fn table_json(t: &[Vec<usize>]) -> Value {
    let mut cells = Vec::new();
    for (p, row) in t.iter().enumerate() {
        for (q, d) in row.iter().enumerate() {
            cells.push(json!({"p": p, "q": q, "dim": d}));
        }
    }
    Value::Array(cells)
}

fn ss(w: &Workspace, theorem: &str, source: &str, target: &str, degree: usize) -> Outcome {
    let mut o = Outcome::new(
        "ss",
        vec![("theorem", theorem.into()), ("source", source.into()), ("target", target.into()), ("degree", degree.to_string())],
    );
    let Some(th) = Theorem::parse(theorem) else {
        let tags: Vec<&str> = Theorem::ALL.iter().map(|t| t.tag()).collect();
        return o.fail(Status::Invalid, format!("unknown theorem `{theorem}` ({})", tags.join(", ")));
    };
    let ms = match operands(w, &[source, target]) {
        Ok(v) => v,
        Err(e) => return o.fail(Status::Invalid, e),
    };
    let input = match (ms[0], ms[1]) {
        (Module::Equiv(a), Module::Equiv(b)) => SsInput::Equivariant(a, b),
        (Module::Rel(a), Module::Rel(b)) => SsInput::Relative(a, b),
        _ => return o.fail(Status::Invalid, "modules over different categories"),
    };
    match grothendieck_ss(th, input, degree) {
        Ok(r) => {
            o.text = ss_text(&r);
            o.data = ss_json(&r);
            for m in &r.mismatches {
                o = o.fail(Status::Mismatch, m.clone());
            }
            o
        }
        Err(e) => o.fail(classify(&e), e.to_string()),
    }
}

fn ss_text(r: &GrothendieckResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "  {}: {}", r.theorem, r.theorem.statement());
    let _ = writeln!(s, "  E2 (derived functors)");
    for l in render_table(&r.e2).lines() {
        let _ = writeln!(s, "    {l}");
    }
    let _ = writeln!(s, "  E2 (Cartan-Eilenberg grid)");
    for l in render_table(&r.e2_grid).lines() {
        let _ = writeln!(s, "    {l}");
    }
    let _ = writeln!(s, "  E-infinity");
    for l in render_table(&r.e_infinity).lines() {
        let _ = writeln!(s, "    {l}");
    }
    let _ = writeln!(s, "  abutment t = 0..{}: {}", r.degree, dims_line(&r.abutment));
    let _ = writeln!(s, "  H(Tot)   t = 0..{}: {}", r.degree, dims_line(&r.total));
    let _ = writeln!(s, "  convergence for t <= {}: {}", r.window(), if r.verdict { "pass" } else { "FAIL" });
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn ss_json(r: &GrothendieckResult) -> Value {
    json!({
        "theorem": r.theorem.tag(),
        "statement": r.theorem.statement(),
        "degree": r.degree,
        "window": r.window(),
        "e2": table_json(&r.e2),
        "e2_grid": table_json(&r.e2_grid),
        "e_infinity": table_json(&r.e_infinity),
        "abutment": r.abutment,
        "total": r.total,
        "verdict": r.verdict,
        "notes": r.notes,
    })
}

/// Runs tasks in order and renders the report.
pub struct Run {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

pub fn run_all(w: &Workspace, tasks: &[TaskSpec]) -> Run {
    let outcomes: Vec<Outcome> = tasks.iter().map(|t| run_task(w, t)).collect();
    let status = outcomes.iter().map(|o| o.status).max().unwrap_or(Status::Pass);
    let cat = describe_category(w.category.base().data());
    let kind = match w.category {
        Structure::Action(_) => "action",
        Structure::Coaction(_) => "coaction",
    };
    let mut text = String::new();
    let _ = writeln!(text, "field {}; hopf {} (dim {}); category {} with {kind}", w.field, w.hopf_name, w.hopf.dim(), w.category_name);
    let _ = writeln!(text, "  {cat}");
    for (i, o) in outcomes.iter().enumerate() {
        let args: Vec<String> = o.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(text, "\n[{}] {} {}", i + 1, o.kind, args.join(" "));
        text.push_str(&o.text);
        for m in &o.messages {
            for l in m.lines() {
                let _ = writeln!(text, "  ! {l}");
            }
        }
        let _ = writeln!(text, "  status: {}", o.status.tag());
    }
    let _ = writeln!(text, "\noverall: {}", status.tag());
    let json = json!({
        "field": w.field.to_string(),
        "hopf": {"name": w.hopf_name, "dim": w.hopf.dim(), "labels": w.hopf.labels()},
        "category": {"name": w.category_name, "kind": kind, "description": cat},
        "modules": w.modules.iter().map(|(n, m)| json!({"name": n, "dims": m.as_ref().map(|m| m.dims().to_vec()).ok()})).collect::<Vec<_>>(),
        "tasks": outcomes.iter().map(Outcome::json).collect::<Vec<_>>(),
        "status": status.tag(),
    });
    Run { status, text, json }
}
