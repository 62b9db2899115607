//! Task documents: the JSON schema and how it is turned into library values.

use std::collections::BTreeMap;
use std::sync::Arc;

use hopfcat::fixtures;
use hopfcat::hcat::CategoryData;
use hopfcat::hopf::{build_named_hopf, GroupTable, NamedHopf};
use hopfcat::relhopf::representable_relhopf;
use hopfcat::equivariant::representable_equivariant;
use hopfcat::{CatModule, CoHCategory, EquivModule, Field, HCategory, HComodule, HModule, HopfAlgebra, LinCategory, Matrix, RelHopfModule, Scalar, Side};
use serde::Deserialize;

/// A scalar entry: an integer, or a string `"n"` / `"p/q"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

pub type Rows = Vec<Vec<Num>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    /// `"Q"` or `"F<p>"`.
    pub field: String,
    pub hopf: HopfSpec,
    pub category: CategorySpec,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HopfSpec {
    /// `F1`, `F2` or `F3`.
    Fixture(String),
    Group(GroupSpec),
    DualGroup(GroupSpec),
    Sweedler,
    Structure(HopfStructure),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// `mult[a][b]` is `e_a e_b`; `comult[i][j][k]` the coefficient of
/// `e_j ⊗ e_k` in `Δ(e_i)`; `antipode` is given by rows.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfStructure {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<Vec<Num>>>,
    pub unit: Vec<Num>,
    pub comult: Vec<Vec<Vec<Num>>>,
    pub counit: Vec<Num>,
    pub antipode: Rows,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CategorySpec {
    /// `C1`, `C2fix`, `C3`, `D1` or `Sweedler`.
    Fixture(String),
    Explicit(ExplicitCategory),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub source: String,
    pub target: String,
    pub basis: Vec<String>,
}

/// `then ∘ first = result`, with `result` in coordinates of the hom space
/// from the source of `first` to the target of `then`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeSpec {
    pub first: String,
    pub then: String,
    pub result: Vec<Num>,
}

/// Basis labels must be unique across all hom spaces. Composites not listed
/// are zero. At most one of `action` and `coaction`; keys are arrow labels
/// paired as `"X->Y"` hom spaces.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitCategory {
    pub objects: Vec<String>,
    pub homs: Vec<HomSpec>,
    pub identity: BTreeMap<String, Vec<Num>>,
    #[serde(default)]
    pub compose: Vec<ComposeSpec>,
    /// `"X->Y"` → one matrix on `hom(X,Y)` per basis element of `H`.
    #[serde(default)]
    pub action: Option<BTreeMap<String, Vec<Rows>>>,
    /// `"X->Y"` → coefficient matrices: `ρ(f) = Σ_i (ρ_i f) ⊗ e_i`.
    #[serde(default)]
    pub coaction: Option<BTreeMap<String, Vec<Rows>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    /// `T`, `R`, `signT`, `M1`, `M1_shifted`.
    Fixture(String),
    /// Representable at the named object.
    Representable(String),
    Explicit(ExplicitModule),
}

/// `maps[label]` is the map of that basis arrow: `M(X) → M(Y)` for an
/// arrow `X → Y` over a coacted category (left modules), `M(Y) → M(X)` over
/// an acted category (right modules). Missing arrows act by zero; missing
/// `hopf_action` / `coaction` entries are trivial.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitModule {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Rows>,
    #[serde(default)]
    pub hopf_action: BTreeMap<String, Vec<Rows>>,
    #[serde(default)]
    pub coaction: BTreeMap<String, Vec<Rows>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskSpec {
    Check {},
    Hom {
        source: String,
        target: String,
        #[serde(default)]
        mode: HomMode,
    },
    Ext {
        source: String,
        target: String,
        context: String,
        degree: usize,
    },
    Ss {
        theorem: String,
        source: String,
        target: String,
        degree: usize,
    },
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum HomMode {
    #[default]
    Plain,
    Equivariant,
    Colinear,
}

impl HomMode {
    pub fn tag(self) -> &'static str {
        match self {
            HomMode::Plain => "plain",
            HomMode::Equivariant => "equivariant",
            HomMode::Colinear => "colinear",
        }
    }
}

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type Res<T> = std::result::Result<T, InputError>;

fn bad<T>(msg: impl Into<String>) -> Res<T> {
    Err(InputError(msg.into()))
}

fn lib<T>(what: &str, r: hopfcat::Result<T>) -> Res<T> {
    r.map_err(|e| InputError(format!("{what}: {e}")))
}

pub fn parse_document(text: &str) -> Res<Document> {
    serde_json::from_str(text).map_err(|e| InputError(format!("parse error at line {}, column {}: {e}", e.line(), e.column())))
}

pub fn parse_field(s: &str) -> Res<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s.strip_prefix('F').and_then(|p| p.parse::<u64>().ok());
    match p {
        Some(p) => lib("field", Field::prime(p)),
        None => bad(format!("field `{s}`: expected Q or F<p>")),
    }
}

fn scalar(f: Field, n: &Num) -> Res<Scalar> {
    match n {
        Num::Int(i) => Ok(f.from_i64(*i)),
        Num::Text(t) => lib("scalar", f.parse(t)),
    }
}

fn vector(f: Field, v: &[Num]) -> Res<Vec<Scalar>> {
    v.iter().map(|n| scalar(f, n)).collect()
}

fn matrix(f: Field, rows: &Rows, shape: (usize, usize), what: &str) -> Res<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return bad(format!("{what}: expected a {}×{} matrix", shape.0, shape.1));
    }
    let data = rows.iter().flatten().map(|n| scalar(f, n)).collect::<Res<Vec<_>>>()?;
    lib(what, Matrix::from_data(f, shape.0, shape.1, data))
}

/// The category with its (co)action.
#[derive(Clone, Debug)]
pub enum Structure {
    Action(Arc<HCategory>),
    Coaction(Arc<CoHCategory>),
}

impl Structure {
    pub fn base(&self) -> &Arc<LinCategory> {
        match self {
            Structure::Action(c) => c.base(),
            Structure::Coaction(d) => d.base(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Module {
    Equiv(EquivModule),
    Rel(RelHopfModule),
}

impl Module {
    pub fn dims(&self) -> &[usize] {
        match self {
            Module::Equiv(m) => m.dims(),
            Module::Rel(m) => m.dims(),
        }
    }
}

/// Everything a document describes, built and ready for tasks. Modules
/// that failed to build keep their error so only dependent tasks abort.
#[derive(Debug)]
pub struct Workspace {
    pub field: Field,
    pub hopf: Arc<HopfAlgebra>,
    pub hopf_name: String,
    pub category: Structure,
    pub category_name: String,
    pub modules: BTreeMap<String, Res<Module>>,
}

impl Workspace {
    pub fn module(&self, name: &str) -> Res<&Module> {
        match self.modules.get(name) {
            None => bad(format!("unknown module `{name}`")),
            Some(Err(e)) => bad(format!("module `{name}`: {e}")),
            Some(Ok(m)) => Ok(m),
        }
    }
}

pub fn build(doc: &Document) -> Res<Workspace> {
    let field = parse_field(&doc.field)?;
    let (hopf, hopf_name) = build_hopf(field, &doc.hopf)?;
    if hopf.field() != field {
        return bad(format!("Hopf algebra {hopf_name} is over {}, the document over {field}", hopf.field()));
    }
    let (category, category_name) = build_category(&hopf, &doc.category)?;
    let modules = doc.modules.iter().map(|(name, spec)| (name.clone(), build_module(&category, spec))).collect();
    Ok(Workspace { field, hopf, hopf_name, category, category_name, modules })
}

fn build_hopf(field: Field, spec: &HopfSpec) -> Res<(Arc<HopfAlgebra>, String)> {
    let named = |n: NamedHopf, name: &str| -> Res<(Arc<HopfAlgebra>, String)> {
        Ok((Arc::new(lib("hopf", build_named_hopf(field, &n))?), name.to_string()))
    };
    match spec {
        HopfSpec::Fixture(name) => {
            let h = match name.as_str() {
                "F1" => fixtures::f1(),
                "F2" => fixtures::f2(),
                "F3" => fixtures::f3(),
                _ => return bad(format!("unknown Hopf fixture `{name}` (F1, F2, F3)")),
            };
            Ok((h, name.clone()))
        }
        HopfSpec::Group(g) => named(NamedHopf::GroupAlgebra(GroupTable { labels: g.labels.clone(), table: g.table.clone() }), "group algebra"),
        HopfSpec::DualGroup(g) => {
            named(NamedHopf::DualGroupAlgebra(GroupTable { labels: g.labels.clone(), table: g.table.clone() }), "dual group algebra")
        }
        HopfSpec::Sweedler => named(NamedHopf::Sweedler, "Sweedler"),
        HopfSpec::Structure(s) => {
            let n = s.labels.len();
            let mult = s.mult.iter().map(|row| row.iter().map(|v| vector(field, v)).collect::<Res<Vec<_>>>()).collect::<Res<Vec<_>>>()?;
            let comult = s.comult.iter().map(|m| m.iter().map(|v| vector(field, v)).collect::<Res<Vec<_>>>()).collect::<Res<Vec<_>>>()?;
            let h = lib(
                "hopf",
                HopfAlgebra::new(
                    field,
                    s.labels.clone(),
                    mult,
                    vector(field, &s.unit)?,
                    comult,
                    vector(field, &s.counit)?,
                    matrix(field, &s.antipode, (n, n), "antipode")?,
                ),
            )?;
            Ok((Arc::new(h), "structure constants".into()))
        }
    }
}

fn require_hopf(h: &Arc<HopfAlgebra>, expected: &Arc<HopfAlgebra>, cat: &str, fix: &str) -> Res<()> {
    if **h != **expected {
        return bad(format!("category fixture {cat} needs the Hopf algebra {fix}"));
    }
    Ok(())
}

fn build_category(h: &Arc<HopfAlgebra>, spec: &CategorySpec) -> Res<(Structure, String)> {
    match spec {
        CategorySpec::Fixture(name) => {
            let s = match name.as_str() {
                "C1" => Structure::Action(fixtures::c1_trivial(h)),
                "C2fix" => {
                    require_hopf(h, &fixtures::f1(), name, "F1")?;
                    Structure::Action(fixtures::c2fix())
                }
                "C3" => {
                    require_hopf(h, &fixtures::f1(), name, "F1")?;
                    Structure::Action(fixtures::c3())
                }
                "D1" => {
                    require_hopf(h, &fixtures::f1(), name, "F1")?;
                    Structure::Coaction(fixtures::d1_arc())
                }
                "Sweedler" => {
                    require_hopf(h, &fixtures::f3(), name, "F3")?;
                    Structure::Action(fixtures::sweedler_category())
                }
                _ => return bad(format!("unknown category fixture `{name}` (C1, C2fix, C3, D1, Sweedler)")),
            };
            Ok((s, name.clone()))
        }
        CategorySpec::Explicit(e) => Ok((explicit_category(h, e)?, "explicit".into())),
    }
}

fn hom_key(c: &LinCategory, x: usize, y: usize) -> String {
    format!("{}->{}", c.objects()[x], c.objects()[y])
}

fn explicit_category(h: &Arc<HopfAlgebra>, e: &ExplicitCategory) -> Res<Structure> {
    let f = h.field();
    let n = e.objects.len();
    let obj = |name: &str| e.objects.iter().position(|o| o == name).ok_or_else(|| InputError(format!("unknown object `{name}`")));
    let mut hom_labels = vec![Vec::new(); n * n];
    // label → (x, y, index)
    let mut arrows: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
    for hs in &e.homs {
        let (x, y) = (obj(&hs.source)?, obj(&hs.target)?);
        if !hom_labels[x * n + y].is_empty() {
            return bad(format!("hom space {}->{} listed twice", hs.source, hs.target));
        }
        for (i, l) in hs.basis.iter().enumerate() {
            if arrows.insert(l, (x, y, i)).is_some() {
                return bad(format!("arrow label `{l}` used twice"));
            }
        }
        hom_labels[x * n + y] = hs.basis.clone();
    }
    let mut identity = Vec::with_capacity(n);
    for (x, o) in e.objects.iter().enumerate() {
        let v = e.identity.get(o).ok_or_else(|| InputError(format!("no identity for `{o}`")))?;
        if v.len() != hom_labels[x * n + x].len() {
            return bad(format!("identity of `{o}` has the wrong length"));
        }
        identity.push(vector(f, v)?);
    }
    let mut table: BTreeMap<(usize, usize, usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
    for c in &e.compose {
        let arrow = |l: &str| arrows.get(l).copied().ok_or_else(|| InputError(format!("unknown arrow `{l}`")));
        let (x, y, b) = arrow(&c.first)?;
        let (y2, z, a) = arrow(&c.then)?;
        if y != y2 {
            return bad(format!("`{}` ∘ `{}` is not composable", c.then, c.first));
        }
        if c.result.len() != hom_labels[x * n + z].len() {
            return bad(format!("`{}` ∘ `{}`: result has the wrong length", c.then, c.first));
        }
        table.insert((x, y, z, a, b), vector(f, &c.result)?);
    }
    let base = lib(
        "category",
        LinCategory::build(f, e.objects.clone(), hom_labels.clone(), identity, |x, y, z, a, b| {
            table.get(&(x, y, z, a, b)).cloned().unwrap_or_else(|| vec![f.zero(); hom_labels[x * n + z].len()])
        }),
    )?;
    let base = Arc::new(base);
    match (&e.action, &e.coaction) {
        (Some(_), Some(_)) => bad("a category takes an action or a coaction, not both"),
        (None, None) => Ok(Structure::Action(Arc::new(HCategory::trivial(base, h.clone())))),
        (Some(act), None) => {
            let mut action = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let d = base.hom_dim(x, y);
                    let key = hom_key(&base, x, y);
                    action.push(match act.get(&key) {
                        Some(list) => matrices(f, list, h.dim(), d, d, &format!("action on {key}"))?,
                        None => (0..h.dim()).map(|i| Matrix::scalar(f, d, &h.counit()[i])).collect(),
                    });
                }
            }
            unknown_keys(act.keys(), &base)?;
            Ok(Structure::Action(Arc::new(lib("category action", HCategory::new(base, h.clone(), action))?)))
        }
        (None, Some(co)) => {
            let mut maps = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let d = base.hom_dim(x, y);
                    let key = hom_key(&base, x, y);
                    maps.push(match co.get(&key) {
                        Some(list) => matrices(f, list, h.dim(), d, d, &format!("coaction on {key}"))?,
                        None => (0..h.dim()).map(|i| Matrix::scalar(f, d, &h.unit()[i])).collect(),
                    });
                }
            }
            unknown_keys(co.keys(), &base)?;
            Ok(Structure::Coaction(Arc::new(lib("category coaction", CoHCategory::from_coefficient_maps(base, h.clone(), &maps))?)))
        }
    }
}

fn unknown_keys<'a>(keys: impl Iterator<Item = &'a String>, c: &LinCategory) -> Res<()> {
    let n = c.num_objects();
    for k in keys {
        if !(0..n * n).any(|i| hom_key(c, i / n, i % n) == *k) {
            return bad(format!("unknown hom space `{k}`"));
        }
    }
    Ok(())
}

fn matrices(f: Field, list: &[Rows], count: usize, rows: usize, cols: usize, what: &str) -> Res<Vec<Matrix>> {
    if list.len() != count {
        return bad(format!("{what}: expected {count} matrices"));
    }
    list.iter().map(|m| matrix(f, m, (rows, cols), what)).collect()
}

fn build_module(s: &Structure, spec: &ModuleSpec) -> Res<Module> {
    match (s, spec) {
        (Structure::Action(c), ModuleSpec::Fixture(name)) => {
            if **c != *fixtures::c2fix() {
                return bad(format!("module fixture `{name}` lives over C2fix"));
            }
            Ok(Module::Equiv(match name.as_str() {
                "T" => fixtures::module_t(c),
                "R" => fixtures::module_r(c),
                "signT" => fixtures::module_sign_t(c),
                _ => return bad(format!("unknown module fixture `{name}` over C2fix (T, R, signT)")),
            }))
        }
        (Structure::Coaction(d), ModuleSpec::Fixture(name)) => {
            if **d != *fixtures::d1_arc() {
                return bad(format!("module fixture `{name}` lives over D1"));
            }
            Ok(Module::Rel(match name.as_str() {
                "M1" => fixtures::module_m1(d),
                "M1_shifted" => fixtures::module_m1_shifted(d),
                _ => return bad(format!("unknown module fixture `{name}` over D1 (M1, M1_shifted)")),
            }))
        }
        (_, ModuleSpec::Representable(o)) => {
            let x = s.base().object_index(o).ok_or_else(|| InputError(format!("unknown object `{o}`")))?;
            Ok(match s {
                Structure::Action(c) => Module::Equiv(representable_equivariant(c, x)),
                Structure::Coaction(d) => Module::Rel(representable_relhopf(d, x)),
            })
        }
        (_, ModuleSpec::Explicit(e)) => explicit_module(s, e),
    }
}

fn explicit_module(s: &Structure, e: &ExplicitModule) -> Res<Module> {
    let c = s.base();
    let f = c.field();
    let n = c.num_objects();
    let mut dims = Vec::with_capacity(n);
    for o in c.objects() {
        dims.push(*e.dims.get(o).ok_or_else(|| InputError(format!("no dimension for object `{o}`")))?);
    }
    for k in e.dims.keys().chain(e.hopf_action.keys()).chain(e.coaction.keys()) {
        if c.object_index(k).is_none() {
            return bad(format!("unknown object `{k}`"));
        }
    }
    let side = match s {
        Structure::Action(_) => Side::Right,
        Structure::Coaction(_) => Side::Left,
    };
    let mut used = 0;
    let mut action = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let shape = match side {
                Side::Left => (dims[y], dims[x]),
                Side::Right => (dims[x], dims[y]),
            };
            let list = c
                .hom_labels(x, y)
                .iter()
                .map(|l| match e.maps.get(l) {
                    Some(rows) => {
                        used += 1;
                        matrix(f, rows, shape, &format!("map of `{l}`"))
                    }
                    None => Ok(Matrix::zeros(f, shape.0, shape.1)),
                })
                .collect::<Res<Vec<_>>>()?;
            action.push(list);
        }
    }
    if used != e.maps.len() {
        return bad("maps given for unknown arrows");
    }
    let (cats, h) = match s {
        Structure::Action(hc) => (hc.cats().clone(), hc.hopf().clone()),
        Structure::Coaction(d) => (d.cats().clone(), d.hopf().clone()),
    };
    let base = lib("module", CatModule::new(cats, side, dims.clone(), action))?;
    match s {
        Structure::Action(hc) => {
            if !e.coaction.is_empty() {
                return bad("coaction given over a category with an action");
            }
            let mut hmods = Vec::with_capacity(n);
            for (x, o) in c.objects().iter().enumerate() {
                let d = dims[x];
                let acts = match e.hopf_action.get(o) {
                    Some(list) => matrices(f, list, h.dim(), d, d, &format!("H-action on `{o}`"))?,
                    None => (0..h.dim()).map(|i| Matrix::scalar(f, d, &h.counit()[i])).collect(),
                };
                hmods.push(lib("H-action", HModule::new(h.clone(), d, acts))?);
            }
            Ok(Module::Equiv(lib("module", EquivModule::new(hc.clone(), base, hmods))?))
        }
        Structure::Coaction(d) => {
            if !e.hopf_action.is_empty() {
                return bad("H-action given over a category with a coaction");
            }
            let mut comods = Vec::with_capacity(n);
            for (x, o) in c.objects().iter().enumerate() {
                let k = dims[x];
                comods.push(match e.coaction.get(o) {
                    Some(list) => {
                        let maps = matrices(f, list, h.dim(), k, k, &format!("coaction on `{o}`"))?;
                        lib("coaction", HComodule::from_coefficient_maps(h.clone(), k, &maps))?
                    }
                    None => HComodule::trivial(&h, k),
                });
            }
            Ok(Module::Rel(lib("module", RelHopfModule::new(d.clone(), base, comods))?))
        }
    }
}

/// Echo of the category data, for reports.
pub fn describe_category(c: &CategoryData) -> String {
    let n = c.objects.len();
    let homs: Vec<String> = (0..n * n)
        .filter(|i| !c.hom_labels[*i].is_empty())
        .map(|i| format!("{}->{}: {}", c.objects[i / n], c.objects[i % n], c.hom_labels[i].join(" ")))
        .collect();
    format!("objects {}; {}", c.objects.join(" "), homs.join("; "))
}
