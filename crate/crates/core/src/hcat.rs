//! Finite linear categories, with a Hopf algebra acting or coacting on the
//! hom spaces.

use std::sync::{Arc, OnceLock};

use crate::catmod::CategoryPair;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, kernel_basis, solve, span_equal, unit_vector, zero_vector, Field, Matrix, Scalar, Vector};
use crate::hopf::{co_opposite, dual_hopf, HopfAlgebra};
use crate::hrep::{validate_comodule, validate_module, HComodule, HModule};
use crate::report::Report;

/// Raw category data. Hom spaces are indexed `x·n + y` for `hom(x, y)`;
/// composition tables `(x·n + y)·n + z`, where entry `a·dim hom(x,y) + b`
/// is `f_a ∘ g_b` for `f_a ∈ hom(y,z)`, `g_b ∈ hom(x,y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryData {
    pub field: Field,
    pub objects: Vec<String>,
    pub hom_labels: Vec<Vec<String>>,
    pub compose: Vec<Vec<Vector>>,
    pub identity: Vec<Vector>,
}

/// A K-linear category with finitely many objects and finite-dimensional
/// hom spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinCategory {
    data: CategoryData,
}

impl LinCategory {
    pub fn from_data(data: CategoryData) -> Result<LinCategory> {
        let n = data.objects.len();
        let bad = |s: String| Err(Error::Dimension(s));
        if data.hom_labels.len() != n * n {
            return bad(format!("{} hom spaces for {n} objects", data.hom_labels.len()));
        }
        if data.compose.len() != n * n * n || data.identity.len() != n {
            return bad("composition or identity table".into());
        }
        let dim = |x: usize, y: usize| data.hom_labels[x * n + y].len();
        for x in 0..n {
            if data.identity[x].len() != dim(x, x) {
                return bad(format!("identity of {}", data.objects[x]));
            }
            for y in 0..n {
                for z in 0..n {
                    let t = &data.compose[(x * n + y) * n + z];
                    if t.len() != dim(y, z) * dim(x, y) || t.iter().any(|v| v.len() != dim(x, z)) {
                        return bad(format!(
                            "composition {} -> {} -> {}",
                            data.objects[x], data.objects[y], data.objects[z]
                        ));
                    }
                }
            }
        }
        let scalars_ok = data
            .compose
            .iter()
            .flatten()
            .flatten()
            .chain(data.identity.iter().flatten())
            .all(|s| s.field() == data.field);
        if !scalars_ok {
            return Err(Error::FieldMismatch(format!("category entries not all over {}", data.field)));
        }
        Ok(LinCategory { data })
    }

    /// Builds from a composition rule on basis elements.
    pub fn build(
        field: Field,
        objects: Vec<String>,
        hom_labels: Vec<Vec<String>>,
        identity: Vec<Vector>,
        mut compose: impl FnMut(usize, usize, usize, usize, usize) -> Vector,
    ) -> Result<LinCategory> {
        let n = objects.len();
        let mut table = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let dxy = hom_labels.get(x * n + y).map_or(0, Vec::len);
                    let dyz = hom_labels.get(y * n + z).map_or(0, Vec::len);
                    let mut entries = Vec::with_capacity(dxy * dyz);
                    for a in 0..dyz {
                        for b in 0..dxy {
                            entries.push(compose(x, y, z, a, b));
                        }
                    }
                    table.push(entries);
                }
            }
        }
        LinCategory::from_data(CategoryData { field, objects, hom_labels, compose: table, identity })
    }

    /// One object `*` whose endomorphism algebra has the given basis,
    /// products `mult[a][b] = e_a e_b` and unit.
    pub fn one_object(field: Field, labels: Vec<String>, mult: &[Vec<Vector>], unit: Vector) -> Result<LinCategory> {
        LinCategory::build(field, vec!["*".into()], vec![labels], vec![unit], |_, _, _, a, b| mult[a][b].clone())
    }

    /// The one-object category whose endomorphism algebra is `H`; left
    /// modules over it are left `H`-modules.
    pub fn algebra_category(h: &HopfAlgebra) -> LinCategory {
        let n = h.dim();
        let mult: Vec<Vec<Vector>> = (0..n).map(|a| (0..n).map(|b| h.mul_basis(a, b).clone()).collect()).collect();
        LinCategory::one_object(h.field(), h.labels().to_vec(), &mult, h.unit().clone())
            .expect("algebra tables are well-formed")
    }

    pub fn data(&self) -> &CategoryData {
        &self.data
    }
    pub fn into_data(self) -> CategoryData {
        self.data
    }
    pub fn field(&self) -> Field {
        self.data.field
    }
    pub fn num_objects(&self) -> usize {
        self.data.objects.len()
    }
    pub fn objects(&self) -> &[String] {
        &self.data.objects
    }
    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.data.objects.iter().position(|o| o == name)
    }
    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.data.hom_labels[x * self.num_objects() + y].len()
    }
    pub fn hom_labels(&self, x: usize, y: usize) -> &[String] {
        &self.data.hom_labels[x * self.num_objects() + y]
    }
    pub fn identity(&self, x: usize) -> &Vector {
        &self.data.identity[x]
    }

    /// `f_a ∘ g_b` for `f_a ∈ hom(y,z)`, `g_b ∈ hom(x,y)`.
    pub fn compose_basis(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> &Vector {
        let n = self.num_objects();
        &self.data.compose[(x * n + y) * n + z][a * self.hom_dim(x, y) + b]
    }

    pub fn compose(&self, x: usize, y: usize, z: usize, f: &[Scalar], g: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field(), self.hom_dim(x, z));
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.iter().enumerate() {
                if !gb.is_zero() {
                    axpy(&mut out, &(fa * gb), self.compose_basis(x, y, z, a, b));
                }
            }
        }
        out
    }

    /// Matrix of `g ↦ f ∘ g` from `hom(x,y)` to `hom(x,z)`, for `f ∈ hom(y,z)`.
    pub fn left_composition(&self, x: usize, y: usize, z: usize, f: &[Scalar]) -> Matrix {
        let f0 = self.field();
        let cols: Vec<Vector> = (0..self.hom_dim(x, y))
            .map(|b| self.compose(x, y, z, f, &unit_vector(f0, self.hom_dim(x, y), b)))
            .collect();
        Matrix::from_columns(f0, self.hom_dim(x, z), &cols)
    }

    /// Matrix of `f ↦ f ∘ g` from `hom(y,z)` to `hom(x,z)`, for `g ∈ hom(x,y)`.
    pub fn right_composition(&self, x: usize, y: usize, z: usize, g: &[Scalar]) -> Matrix {
        let f0 = self.field();
        let cols: Vec<Vector> = (0..self.hom_dim(y, z))
            .map(|a| self.compose(x, y, z, &unit_vector(f0, self.hom_dim(y, z), a), g))
            .collect();
        Matrix::from_columns(f0, self.hom_dim(x, z), &cols)
    }

    /// `C^op`: `hom_op(x,y) = hom(y,x)` and `f ∘_op g = g ∘ f`.
    pub fn opposite(&self) -> LinCategory {
        let n = self.num_objects();
        let hom_labels = (0..n * n).map(|i| self.data.hom_labels[(i % n) * n + i / n].clone()).collect();
        LinCategory::build(self.field(), self.data.objects.clone(), hom_labels, self.data.identity.clone(), |x, y, z, a, b| {
            // f_a ∈ hom_op(y,z) = hom(z,y), g_b ∈ hom_op(x,y) = hom(y,x); g ∘ f ∈ hom(z,x)
            self.compose_basis(z, y, x, b, a).clone()
        })
        .expect("opposite of a well-formed category")
    }

    /// Total dimension of all hom spaces.
    pub fn total_dim(&self) -> usize {
        self.data.hom_labels.iter().map(Vec::len).sum()
    }
}

/// Associativity and identity laws on all basis triples.
pub fn validate_category(c: &LinCategory) -> Report {
    let mut r = Report::new();
    let n = c.num_objects();
    let f = c.field();
    let obj = |x: usize| c.objects()[x].as_str();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for a in 0..c.hom_dim(z, w) {
                        for b in 0..c.hom_dim(y, z) {
                            let fg = c.compose_basis(y, z, w, a, b);
                            for k in 0..c.hom_dim(x, y) {
                                let left = c.compose(x, y, w, fg, &unit_vector(f, c.hom_dim(x, y), k));
                                let gk = c.compose_basis(x, y, z, b, k);
                                let right = c.compose(x, z, w, &unit_vector(f, c.hom_dim(z, w), a), gk);
                                r.check(left == right, "associativity", || {
                                    format!(
                                        "({}∘{})∘{} on {}→{}→{}→{}",
                                        c.hom_labels(z, w)[a],
                                        c.hom_labels(y, z)[b],
                                        c.hom_labels(x, y)[k],
                                        obj(x),
                                        obj(y),
                                        obj(z),
                                        obj(w)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for g in 0..c.hom_dim(x, y) {
                let gv = unit_vector(f, c.hom_dim(x, y), g);
                let left = c.compose(x, y, y, c.identity(y), &gv);
                let right = c.compose(x, x, y, &gv, c.identity(x));
                r.check(left == gv && right == gv, "identity", || {
                    format!("identity law fails for {} : {} → {}", c.hom_labels(x, y)[g], obj(x), obj(y))
                });
            }
        }
    }
    r
}

/// A linear category whose hom spaces are left `H`-modules with
/// equivariant composition.
#[derive(Clone, Debug)]
pub struct HCategory {
    base: Arc<LinCategory>,
    hopf: Arc<HopfAlgebra>,
    /// `action[x·n + y][i]`: matrix of `e_i` on `hom(x, y)`.
    action: Vec<Vec<Matrix>>,
    cats: OnceLock<Arc<CategoryPair>>,
    smash_cats: OnceLock<Arc<CategoryPair>>,
}

impl PartialEq for HCategory {
    fn eq(&self, other: &HCategory) -> bool {
        self.base == other.base && self.hopf == other.hopf && self.action == other.action
    }
}

impl HCategory {
    pub fn new(base: Arc<LinCategory>, hopf: Arc<HopfAlgebra>, action: Vec<Vec<Matrix>>) -> Result<HCategory> {
        let n = base.num_objects();
        if base.field() != hopf.field() {
            return Err(Error::FieldMismatch("category and Hopf algebra over different fields".into()));
        }
        if action.len() != n * n {
            return Err(Error::Dimension("one action list per hom space".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let d = base.hom_dim(x, y);
                let list = &action[x * n + y];
                if list.len() != hopf.dim() || list.iter().any(|m| m.shape() != (d, d)) {
                    return Err(Error::Dimension(format!(
                        "action on hom({}, {})",
                        base.objects()[x],
                        base.objects()[y]
                    )));
                }
            }
        }
        Ok(HCategory { base, hopf, action, cats: OnceLock::new(), smash_cats: OnceLock::new() })
    }

    /// Every `h` acts on every hom space by `ε(h)`.
    pub fn trivial(base: Arc<LinCategory>, hopf: Arc<HopfAlgebra>) -> HCategory {
        let n = base.num_objects();
        let f = base.field();
        let action = (0..n * n)
            .map(|i| {
                let d = base.hom_dim(i / n, i % n);
                hopf.counit().iter().map(|c| Matrix::scalar(f, d, c)).collect()
            })
            .collect();
        HCategory::new(base, hopf, action).expect("shapes agree")
    }

    pub fn base(&self) -> &Arc<LinCategory> {
        &self.base
    }
    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }
    pub fn action(&self, x: usize, y: usize, i: usize) -> &Matrix {
        &self.action[x * self.base.num_objects() + y][i]
    }
    pub fn actions(&self) -> &[Vec<Matrix>] {
        &self.action
    }

    /// Matrix of an arbitrary `h ∈ H` on `hom(x, y)`.
    pub fn act(&self, x: usize, y: usize, h: &[Scalar]) -> Matrix {
        let d = self.base.hom_dim(x, y);
        let mut m = Matrix::zeros(self.base.field(), d, d);
        for (c, a) in h.iter().zip(&self.action[x * self.base.num_objects() + y]) {
            m.add_scaled(c, a);
        }
        m
    }

    pub fn hom_module(&self, x: usize, y: usize) -> HModule {
        let n = self.base.num_objects();
        HModule::new(self.hopf.clone(), self.base.hom_dim(x, y), self.action[x * n + y].clone())
            .expect("validated at construction")
    }

    /// The base category with its opposite, computed once.
    pub fn cats(&self) -> &Arc<CategoryPair> {
        self.cats.get_or_init(|| CategoryPair::new((*self.base).clone()))
    }

    /// `C # H` with its opposite, computed once.
    pub fn smash_cats(&self) -> &Arc<CategoryPair> {
        self.smash_cats.get_or_init(|| CategoryPair::new(smash_product(self)))
    }

    pub fn smash(&self) -> &LinCategory {
        self.smash_cats().base()
    }

    /// `C^op` with the co-opposite Hopf algebra acting by the same matrices.
    pub fn opposite_cop(&self) -> HCategory {
        let n = self.base.num_objects();
        let action = (0..n * n).map(|i| self.action[(i % n) * n + i / n].clone()).collect();
        HCategory::new(Arc::new(self.base.opposite()), Arc::new(co_opposite(&self.hopf)), action)
            .expect("shapes agree")
    }
}

/// A linear category whose hom spaces are right `H`-comodules with
/// coequivariant composition.
#[derive(Clone, Debug)]
pub struct CoHCategory {
    base: Arc<LinCategory>,
    hopf: Arc<HopfAlgebra>,
    /// `coaction[x·n + y]`: the `(d·dim H) × d` coaction on `hom(x, y)`.
    coaction: Vec<Matrix>,
    cats: OnceLock<Arc<CategoryPair>>,
}

impl PartialEq for CoHCategory {
    fn eq(&self, other: &CoHCategory) -> bool {
        self.base == other.base && self.hopf == other.hopf && self.coaction == other.coaction
    }
}

impl CoHCategory {
    pub fn new(base: Arc<LinCategory>, hopf: Arc<HopfAlgebra>, coaction: Vec<Matrix>) -> Result<CoHCategory> {
        let n = base.num_objects();
        if base.field() != hopf.field() {
            return Err(Error::FieldMismatch("category and Hopf algebra over different fields".into()));
        }
        if coaction.len() != n * n {
            return Err(Error::Dimension("one coaction per hom space".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let d = base.hom_dim(x, y);
                if coaction[x * n + y].shape() != (d * hopf.dim(), d) {
                    return Err(Error::Dimension(format!(
                        "coaction on hom({}, {})",
                        base.objects()[x],
                        base.objects()[y]
                    )));
                }
            }
        }
        Ok(CoHCategory { base, hopf, coaction, cats: OnceLock::new() })
    }

    /// Builds from coefficient maps: `maps[x·n + y][i]` is `ρ_i` on `hom(x, y)`.
    pub fn from_coefficient_maps(base: Arc<LinCategory>, hopf: Arc<HopfAlgebra>, maps: &[Vec<Matrix>]) -> Result<CoHCategory> {
        let n = base.num_objects();
        let coaction = (0..n * n)
            .map(|i| {
                HComodule::from_coefficient_maps(hopf.clone(), base.hom_dim(i / n, i % n), &maps[i])
                    .map(|c| c.coaction().clone())
            })
            .collect::<Result<Vec<_>>>()?;
        CoHCategory::new(base, hopf, coaction)
    }

    pub fn base(&self) -> &Arc<LinCategory> {
        &self.base
    }
    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    /// The base category with its opposite, computed once.
    pub fn cats(&self) -> &Arc<CategoryPair> {
        self.cats.get_or_init(|| CategoryPair::new((*self.base).clone()))
    }

    pub fn hom_comodule(&self, x: usize, y: usize) -> HComodule {
        let n = self.base.num_objects();
        HComodule::new(self.hopf.clone(), self.base.hom_dim(x, y), self.coaction[x * n + y].clone())
            .expect("validated at construction")
    }

    /// `ρ_i` on `hom(x, y)`.
    pub fn coefficient_map(&self, x: usize, y: usize, i: usize) -> Matrix {
        self.hom_comodule(x, y).coefficient_map(i)
    }
}

/// The three defining axioms of an H-category on all basis triples.
pub fn validate_h_category(c: &HCategory) -> Report {
    let mut r = Report::new();
    let base = &c.base;
    let h = &c.hopf;
    let n = base.num_objects();
    let f = base.field();
    let obj = |x: usize| base.objects()[x].as_str();
    for x in 0..n {
        for y in 0..n {
            r.extend(validate_module(&c.hom_module(x, y)).prefixed(&format!("hom({}, {})", obj(x), obj(y))));
        }
    }
    for x in 0..n {
        for i in 0..h.dim() {
            let lhs = c.action(x, x, i).apply(base.identity(x));
            let rhs: Vector = base.identity(x).iter().map(|v| v * &h.counit()[i]).collect();
            r.check(lhs == rhs, "identity fixed", || format!("{}(id_{}) != ε·id", h.labels()[i], obj(x)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..h.dim() {
                    for a in 0..base.hom_dim(y, z) {
                        for b in 0..base.hom_dim(x, y) {
                            let fg = base.compose_basis(x, y, z, a, b);
                            let lhs = c.action(x, z, i).apply(fg);
                            let mut rhs = zero_vector(f, base.hom_dim(x, z));
                            for (j, k, coef) in h.comult(i) {
                                let hf = c.action(y, z, *j).col(a);
                                let hg = c.action(x, y, *k).col(b);
                                axpy(&mut rhs, coef, &base.compose(x, y, z, &hf, &hg));
                            }
                            r.check(lhs == rhs, "equivariant composition", || {
                                format!(
                                    "{}({}∘{}) != Σ h1(f)h2(g)",
                                    h.labels()[i],
                                    base.hom_labels(y, z)[a],
                                    base.hom_labels(x, y)[b]
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    r
}

/// The three defining axioms of a co-H-category on all basis pairs.
pub fn validate_coh_category(d: &CoHCategory) -> Report {
    let mut r = Report::new();
    let base = &d.base;
    let h = &d.hopf;
    let n = base.num_objects();
    let f = base.field();
    let obj = |x: usize| base.objects()[x].as_str();
    for x in 0..n {
        for y in 0..n {
            r.extend(validate_comodule(&d.hom_comodule(x, y)).prefixed(&format!("hom({}, {})", obj(x), obj(y))));
        }
    }
    for x in 0..n {
        for i in 0..h.dim() {
            let lhs = d.coefficient_map(x, x, i).apply(base.identity(x));
            let rhs: Vector = base.identity(x).iter().map(|v| v * &h.unit()[i]).collect();
            r.check(lhs == rhs, "identity coinvariant", || format!("ρ(id_{}) != id⊗1", obj(x)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let rf = d.hom_comodule(y, z).coefficient_maps();
                let rg = d.hom_comodule(x, y).coefficient_maps();
                let rfg = d.hom_comodule(x, z).coefficient_maps();
                for a in 0..base.hom_dim(y, z) {
                    for b in 0..base.hom_dim(x, y) {
                        let fg = base.compose_basis(x, y, z, a, b);
                        for k in 0..h.dim() {
                            let lhs = rfg[k].apply(fg);
                            let mut rhs = zero_vector(f, base.hom_dim(x, z));
                            for i in 0..h.dim() {
                                let fi = rf[i].col(a);
                                if fi.iter().all(Scalar::is_zero) {
                                    continue;
                                }
                                for j in 0..h.dim() {
                                    let c = &h.mul_basis(i, j)[k];
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let gj = rg[j].col(b);
                                    axpy(&mut rhs, c, &base.compose(x, y, z, &fi, &gj));
                                }
                            }
                            r.check(lhs == rhs, "coequivariant composition", || {
                                format!(
                                    "ρ({}∘{}) != ρ(f)ρ(g) in component {}",
                                    base.hom_labels(y, z)[a],
                                    base.hom_labels(x, y)[b],
                                    h.labels()[k]
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    r
}

/// Kind tag for [`validate_h_structure`].
pub enum HStructure<'a> {
    Action(&'a HCategory),
    Coaction(&'a CoHCategory),
}

pub fn validate_h_structure(c: HStructure<'_>) -> Report {
    match c {
        HStructure::Action(c) => validate_h_category(c),
        HStructure::Coaction(d) => validate_coh_category(d),
    }
}

/// A subcategory on the same objects, with the inclusion of each hom space
/// (`inclusions[x·n + y]`, columns in the ambient hom basis).
#[derive(Clone, Debug)]
pub struct FixedSubcategory {
    pub category: LinCategory,
    pub inclusions: Vec<Matrix>,
}

impl FixedSubcategory {
    /// Hom-space-by-hom-space subspace equality.
    pub fn same_subspaces(&self, other: &FixedSubcategory) -> bool {
        self.inclusions.len() == other.inclusions.len()
            && self.inclusions.iter().zip(&other.inclusions).all(|(a, b)| span_equal(a, b))
    }
}

fn restrict_category(base: &LinCategory, inclusions: Vec<Matrix>, tag: &str) -> Result<FixedSubcategory> {
    let n = base.num_objects();
    let f = base.field();
    let hom_labels: Vec<Vec<String>> = (0..n * n)
        .map(|i| (0..inclusions[i].cols()).map(|k| format!("{tag}{k}")).collect())
        .collect();
    let mut identity = Vec::with_capacity(n);
    for x in 0..n {
        let c = solve(&inclusions[x * n + x], base.identity(x))?
            .ok_or_else(|| Error::Invalid(format!("identity of {} is not fixed", base.objects()[x])))?;
        identity.push(c);
    }
    let mut failure = None;
    let cat = LinCategory::build(f, base.objects().to_vec(), hom_labels, identity, |x, y, z, a, b| {
        let fa = inclusions[y * n + z].col(a);
        let gb = inclusions[x * n + y].col(b);
        let fg = base.compose(x, y, z, &fa, &gb);
        match solve(&inclusions[x * n + z], &fg).expect("ambient dimension") {
            Some(c) => c,
            None => {
                failure = Some(format!("{} → {} → {}", base.objects()[x], base.objects()[y], base.objects()[z]));
                zero_vector(f, inclusions[x * n + z].cols())
            }
        }
    })?;
    if let Some(where_) = failure {
        return Err(Error::Invalid(format!("fixed morphisms not closed under composition at {where_}")));
    }
    Ok(FixedSubcategory { category: cat, inclusions })
}

/// `C^H`: hom spaces replaced by invariants; closure is verified.
pub fn fixed_subcategory(c: &HCategory) -> Result<FixedSubcategory> {
    let n = c.base.num_objects();
    let inclusions = (0..n * n)
        .map(|i| crate::hrep::invariants(&c.hom_module(i / n, i % n)))
        .collect();
    restrict_category(&c.base, inclusions, "inv")
}

/// `D^{coH}`: hom spaces replaced by coinvariants; closure is verified.
pub fn fixed_subcategory_co(d: &CoHCategory) -> Result<FixedSubcategory> {
    let n = d.base.num_objects();
    let inclusions = (0..n * n)
        .map(|i| crate::hrep::coinvariants(&d.hom_comodule(i / n, i % n)))
        .collect();
    restrict_category(&d.base, inclusions, "coinv")
}

/// The left `H*`-category with `h*(f) = Σ f₀ h*(f₁)`: `e_i*` acts by `ρ_i`.
pub fn dualize_coh_category(d: &CoHCategory) -> HCategory {
    dualize_coh_category_over(d, Arc::new(dual_hopf(&d.hopf)))
}

/// As [`dualize_coh_category`], with the dual algebra supplied.
pub fn dualize_coh_category_over(d: &CoHCategory, dual: Arc<HopfAlgebra>) -> HCategory {
    let n = d.base.num_objects();
    let action = (0..n * n).map(|i| d.hom_comodule(i / n, i % n).coefficient_maps()).collect();
    HCategory::new(d.base.clone(), dual, action).expect("shapes agree")
}

/// Inverse of [`dualize_coh_category`]: given an action of `K = H*`, the
/// coaction of `K* = H` is `ρ(f) = Σ e_i*(f) ⊗ e_i`.
pub fn codualize_h_category(c: &HCategory) -> CoHCategory {
    let dual = Arc::new(dual_hopf(&c.hopf));
    CoHCategory::from_coefficient_maps(c.base.clone(), dual, &c.action).expect("shapes agree")
}

/// `C # H`: `hom(x,y) ⊗ H` with basis `f_a # e_i` at index `a·dim H + i` and
/// `(f#h)(g#h') = Σ f(h₁g) # h₂h'`.
pub fn smash_product(c: &HCategory) -> LinCategory {
    let base = &c.base;
    let h = &c.hopf;
    let n = base.num_objects();
    let nh = h.dim();
    let f = base.field();
    let hom_labels = (0..n * n)
        .map(|i| {
            let mut l = Vec::new();
            for a in base.hom_labels(i / n, i % n) {
                for e in h.labels() {
                    l.push(format!("{a}#{e}"));
                }
            }
            l
        })
        .collect();
    let identity = (0..n)
        .map(|x| {
            let mut v = zero_vector(f, base.hom_dim(x, x) * nh);
            for (a, ca) in base.identity(x).iter().enumerate() {
                for (i, ci) in h.unit().iter().enumerate() {
                    v[a * nh + i] = ca * ci;
                }
            }
            v
        })
        .collect();
    LinCategory::build(f, base.objects().to_vec(), hom_labels, identity, |x, y, z, fa, gb| {
        let (a, i) = (fa / nh, fa % nh);
        let (b, j) = (gb / nh, gb % nh);
        let mut out = zero_vector(f, base.hom_dim(x, z) * nh);
        for (p, q, coef) in h.comult(i) {
            let hg = c.action(x, y, *p).col(b);
            let fhg = base.compose(x, y, z, &unit_vector(f, base.hom_dim(y, z), a), &hg);
            let hh = h.mul_basis(*q, j);
            for (u, cu) in fhg.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                for (k, ck) in hh.iter().enumerate() {
                    if !ck.is_zero() {
                        out[u * nh + k] += &(coef * &(cu * ck));
                    }
                }
            }
        }
        out
    })
    .expect("smash tables are well-formed")
}

/// A coaction on `C # H` by `f#h ↦ Σ (f#h₁) ⊗ h₂`. This is a chosen
/// structure making the smash product a co-H-category; it is validated,
/// not derived.
pub fn smash_coaction(c: &HCategory) -> CoHCategory {
    let base = &c.base;
    let h = &c.hopf;
    let n = base.num_objects();
    let nh = h.dim();
    let f = base.field();
    let smash = Arc::new(c.smash().clone());
    let maps: Vec<Vec<Matrix>> = (0..n * n)
        .map(|xy| {
            let d = base.hom_dim(xy / n, xy % n);
            (0..nh)
                .map(|k| {
                    let mut m = Matrix::zeros(f, d * nh, d * nh);
                    for a in 0..d {
                        for i in 0..nh {
                            for (j, kk, coef) in h.comult(i) {
                                if *kk == k {
                                    m[(a * nh + j, a * nh + i)] += coef;
                                }
                            }
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    CoHCategory::from_coefficient_maps(smash, h.clone(), &maps).expect("shapes agree")
}

/// Matrix whose columns span the kernel of the stacked maps; re-exported
/// for callers assembling linear systems.
pub fn joint_kernel(field: Field, cols: usize, blocks: &[Matrix]) -> Matrix {
    let refs: Vec<&Matrix> = blocks.iter().collect();
    kernel_basis(&Matrix::vstack(field, cols, &refs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_categories_validate() {
        assert!(validate_category(&fixtures::c1(Field::Rationals)).is_empty());
        let c2 = fixtures::c2fix();
        assert!(validate_category(c2.base()).is_empty());
        assert!(validate_h_category(&c2).is_empty(), "{}", validate_h_category(&c2));
        let c3 = fixtures::c3();
        assert!(validate_category(c3.base()).is_empty());
        assert!(validate_h_category(&c3).is_empty());
        let d1 = fixtures::d1();
        assert!(validate_coh_category(&d1).is_empty(), "{}", validate_coh_category(&d1));
    }

    #[test]
    fn broken_identity_reported() {
        let c3 = fixtures::c3();
        let mut data = c3.base().data().clone();
        // compose(α, id_A) lives at x=A, y=A, z=B
        data.compose[1][0] = vec![Field::Rationals.from_i64(2)];
        let broken = LinCategory::from_data(data).unwrap();
        assert!(validate_category(&broken).mentions("identity"));
    }

    #[test]
    fn scaled_action_violates_module_law() {
        let c3 = fixtures::c3();
        let q = Field::Rationals;
        let mut action = c3.actions().to_vec();
        action[1][1] = Matrix::from_ints(q, 1, 1, &[2]);
        let bad = HCategory::new(c3.base().clone(), c3.hopf().clone(), action).unwrap();
        assert!(validate_h_category(&bad).mentions("representation law"));
    }

    #[test]
    fn fixed_subcategories() {
        let c2 = fixtures::c2fix();
        let fixed = fixed_subcategory(&c2).unwrap();
        assert_eq!(fixed.category.hom_dim(0, 0), 1);
        assert!(validate_category(&fixed.category).is_empty());
        let d1 = fixtures::d1();
        let co = fixed_subcategory_co(&d1).unwrap();
        assert_eq!(co.category.hom_dim(0, 1), 0);
        assert_eq!(co.category.hom_dim(0, 0), 1);
        assert_eq!(co.category.hom_dim(1, 1), 1);
        let triv = HCategory::trivial(c2.base().clone(), c2.hopf().clone());
        let all = fixed_subcategory(&triv).unwrap();
        assert_eq!(all.category.total_dim(), c2.base().total_dim());
    }

    #[test]
    fn dualization_matches_coinvariants() {
        let d1 = fixtures::d1();
        let dual = dualize_coh_category(&d1);
        assert!(validate_h_category(&dual).is_empty(), "{}", validate_h_category(&dual));
        // e_g* acts on α by h*(g) = 1
        assert_eq!(dual.action(0, 1, 1), &Matrix::from_ints(Field::Rationals, 1, 1, &[1]));
        assert_eq!(dual.action(0, 1, 0), &Matrix::from_ints(Field::Rationals, 1, 1, &[0]));
        let a = fixed_subcategory(&dual).unwrap();
        let b = fixed_subcategory_co(&d1).unwrap();
        assert!(a.same_subspaces(&b));
        let back = codualize_h_category(&dual);
        assert_eq!(back.coaction, d1.coaction);
        assert_eq!(back.hopf.to_data().mult, d1.hopf.to_data().mult);
    }

    #[test]
    fn smash_examples() {
        let q = Field::Rationals;
        let c1 = HCategory::trivial(Arc::new(fixtures::c1(q)), fixtures::f1());
        let s = smash_product(&c1);
        assert_eq!(s.hom_dim(0, 0), 2);
        assert!(validate_category(&s).is_empty());
        let c2 = fixtures::c2fix();
        let s2 = c2.smash();
        assert!(validate_category(s2).is_empty(), "{}", validate_category(s2));
        // basis of End: 1#e, 1#g, x#e, x#g
        let xg = unit_vector(q, 4, 3);
        let x1 = unit_vector(q, 4, 2);
        assert!(s2.compose(0, 0, 0, &xg, &x1).iter().all(Scalar::is_zero));
        // (1#g)(x#e) = (g·x)#g = -x#g
        let g = unit_vector(q, 4, 1);
        let mut expected = zero_vector(q, 4);
        expected[3] = q.from_i64(-1);
        assert_eq!(s2.compose(0, 0, 0, &g, &x1), expected);
        let c3 = fixtures::c3();
        assert!(validate_category(c3.smash()).is_empty());
    }

    #[test]
    fn smash_with_unit_is_composition() {
        let c2 = fixtures::c2fix();
        let s = c2.smash();
        let q = Field::Rationals;
        for a in 0..2 {
            for b in 0..2 {
                let fa = unit_vector(q, 4, a * 2);
                let gb = unit_vector(q, 4, b * 2);
                let base = c2.base().compose_basis(0, 0, 0, a, b);
                let mut expected = zero_vector(q, 4);
                for (u, c) in base.iter().enumerate() {
                    expected[u * 2] = c.clone();
                }
                assert_eq!(s.compose(0, 0, 0, &fa, &gb), expected);
            }
        }
    }

    #[test]
    fn smash_coaction_is_coequivariant() {
        for c in [fixtures::c2fix(), fixtures::c3()] {
            let d = smash_coaction(&c);
            assert!(validate_coh_category(&d).is_empty(), "{}", validate_coh_category(&d));
        }
        let s = fixtures::sweedler_category();
        assert!(validate_coh_category(&smash_coaction(&s)).is_empty());
    }

    #[test]
    fn opposite_cop_is_h_category() {
        let dual = dualize_coh_category(&fixtures::d1());
        let op = dual.opposite_cop();
        assert!(validate_category(op.base()).is_empty());
        assert!(validate_h_category(&op).is_empty(), "{}", validate_h_category(&op));
        let s = fixtures::sweedler_category().opposite_cop();
        assert!(validate_h_category(&s).is_empty(), "{}", validate_h_category(&s));
    }
}
