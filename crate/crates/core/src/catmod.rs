//! Modules over a finite linear category: functors into finite-dimensional
//! vector spaces, their morphisms, and the Hom solver.
//!
//! Right modules over `C` are contravariant. Internally every module is
//! stored covariantly over `C` (left) or `C^op` (right), so each algorithm
//! is written once.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_basis, solve, solve_matrix, span_contains, unit_vector, zero_vector, Field, Matrix, Scalar, Vector,
};
use crate::hcat::LinCategory;
use crate::hrep::{flatten_map, unflatten_map};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

/// A category together with its opposite.
#[derive(Debug)]
pub struct CategoryPair {
    base: LinCategory,
    op: LinCategory,
}

impl CategoryPair {
    pub fn new(base: LinCategory) -> Arc<CategoryPair> {
        let op = base.opposite();
        Arc::new(CategoryPair { base, op })
    }

    pub fn base(&self) -> &LinCategory {
        &self.base
    }
    pub fn op(&self) -> &LinCategory {
        &self.op
    }

    /// `C` for left modules, `C^op` for right modules.
    pub fn covariant(&self, side: Side) -> &LinCategory {
        match side {
            Side::Left => &self.base,
            Side::Right => &self.op,
        }
    }
}

impl PartialEq for CategoryPair {
    fn eq(&self, other: &CategoryPair) -> bool {
        std::ptr::eq(self, other) || self.base == other.base
    }
}

/// A module over a linear category.
#[derive(Clone, Debug)]
pub struct CatModule {
    cats: Arc<CategoryPair>,
    side: Side,
    dims: Vec<usize>,
    /// `cov[x·n + y][a]`: the map `M(x) → M(y)` of the covariant basis arrow `a`.
    cov: Vec<Vec<Matrix>>,
}

impl PartialEq for CatModule {
    fn eq(&self, other: &CatModule) -> bool {
        self.side == other.side && self.dims == other.dims && self.cov == other.cov && self.cats == other.cats
    }
}

impl CatModule {
    /// `action[x·n + y][a]` is `M(f_a)` for `f_a ∈ hom(x, y)`: a map
    /// `M(x) → M(y)` for left modules and `M(y) → M(x)` for right modules.
    pub fn new(cats: Arc<CategoryPair>, side: Side, dims: Vec<usize>, action: Vec<Vec<Matrix>>) -> Result<CatModule> {
        let n = cats.base.num_objects();
        if action.len() != n * n {
            return Err(Error::Dimension("one action list per hom space".into()));
        }
        let cov = match side {
            Side::Left => action,
            Side::Right => {
                let mut action: Vec<Option<Vec<Matrix>>> = action.into_iter().map(Some).collect();
                (0..n * n).map(|i| action[(i % n) * n + i / n].take().unwrap()).collect()
            }
        };
        CatModule::from_covariant(cats, side, dims, cov)
    }

    /// Builds from covariant action data; see the type documentation.
    pub fn from_covariant(cats: Arc<CategoryPair>, side: Side, dims: Vec<usize>, cov: Vec<Vec<Matrix>>) -> Result<CatModule> {
        let c = cats.covariant(side);
        let n = c.num_objects();
        if dims.len() != n || cov.len() != n * n {
            return Err(Error::Dimension(format!("module data for {n} objects")));
        }
        for x in 0..n {
            for y in 0..n {
                let list = &cov[x * n + y];
                if list.len() != c.hom_dim(x, y) || list.iter().any(|m| m.shape() != (dims[y], dims[x])) {
                    return Err(Error::Dimension(format!(
                        "action of hom between {} and {}",
                        c.objects()[x],
                        c.objects()[y]
                    )));
                }
                if list.iter().any(|m| m.field() != c.field()) {
                    return Err(Error::FieldMismatch("module action over another field".into()));
                }
            }
        }
        Ok(CatModule { cats, side, dims, cov })
    }

    pub fn zero(cats: Arc<CategoryPair>, side: Side) -> CatModule {
        let c = cats.covariant(side);
        let n = c.num_objects();
        let f = c.field();
        let cov = (0..n * n).map(|i| vec![Matrix::zeros(f, 0, 0); c.hom_dim(i / n, i % n)]).collect();
        CatModule { cats, side, dims: vec![0; n], cov }
    }

    pub fn cats(&self) -> &Arc<CategoryPair> {
        &self.cats
    }
    pub fn category(&self) -> &LinCategory {
        &self.cats.base
    }
    /// The category this module is covariant over.
    pub fn covariant(&self) -> &LinCategory {
        self.cats.covariant(self.side)
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn field(&self) -> Field {
        self.cats.base.field()
    }
    pub fn num_objects(&self) -> usize {
        self.dims.len()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `M(a): M(x) → M(y)` for the covariant basis arrow `a`.
    pub fn cov_map(&self, x: usize, y: usize, a: usize) -> &Matrix {
        &self.cov[x * self.num_objects() + y][a]
    }
    pub fn cov_maps(&self) -> &[Vec<Matrix>] {
        &self.cov
    }

    /// `M(f_a)` for `f_a ∈ hom(x, y)` of the underlying category.
    pub fn map(&self, x: usize, y: usize, a: usize) -> &Matrix {
        match self.side {
            Side::Left => self.cov_map(x, y, a),
            Side::Right => self.cov_map(y, x, a),
        }
    }

    /// Action data in the layout accepted by [`CatModule::new`].
    pub fn action_data(&self) -> Vec<Vec<Matrix>> {
        let n = self.num_objects();
        match self.side {
            Side::Left => self.cov.clone(),
            Side::Right => (0..n * n).map(|i| self.cov[(i % n) * n + i / n].clone()).collect(),
        }
    }

    /// `M(u)` for an arbitrary covariant arrow `u ∈ hom(x, y)`.
    pub fn cov_apply(&self, x: usize, y: usize, u: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dims[y], self.dims[x]);
        for (c, a) in u.iter().zip(&self.cov[x * self.num_objects() + y]) {
            if !c.is_zero() {
                m.add_scaled(c, a);
            }
        }
        m
    }

    /// `M(u)` for an arbitrary arrow `u ∈ hom(x, y)` of the underlying
    /// category.
    pub fn apply(&self, x: usize, y: usize, u: &[Scalar]) -> Matrix {
        match self.side {
            Side::Left => self.cov_apply(x, y, u),
            Side::Right => self.cov_apply(y, x, u),
        }
    }

    /// Same carriers and transposed maps, on the other side.
    pub fn dual(&self) -> CatModule {
        let n = self.num_objects();
        let cov = (0..n * n)
            .map(|i| self.cov[(i % n) * n + i / n].iter().map(Matrix::transpose).collect())
            .collect();
        CatModule { cats: self.cats.clone(), side: self.side.flip(), dims: self.dims.clone(), cov }
    }

    pub(crate) fn compatible(&self, other: &CatModule) -> Result<()> {
        if self.side != other.side || self.cats != other.cats {
            return Err(Error::Invalid("modules over different categories or sides".into()));
        }
        Ok(())
    }
}

/// Identity and composition laws, checked against the composition tensor.
pub fn validate_cat_module(m: &CatModule) -> Report {
    let mut r = Report::new();
    let c = m.covariant();
    let n = c.num_objects();
    for x in 0..n {
        r.check(m.cov_apply(x, x, c.identity(x)).is_identity(), "identity", || {
            format!("M(id_{}) is not the identity", c.objects()[x])
        });
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for a in 0..c.hom_dim(y, z) {
                    for b in 0..c.hom_dim(x, y) {
                        let ab = m.cov_apply(x, z, c.compose_basis(x, y, z, a, b));
                        let prod = m.cov_map(y, z, a).mul(m.cov_map(x, y, b));
                        r.check(ab == prod, "functoriality", || {
                            let (fa, gb) = (&c.hom_labels(y, z)[a], &c.hom_labels(x, y)[b]);
                            match m.side {
                                Side::Left => format!("M({fa}∘{gb}) != M({fa})M({gb})"),
                                Side::Right => format!("M({gb}∘{fa}) != M({fa})M({gb})"),
                            }
                        });
                    }
                }
            }
        }
    }
    r
}

/// `h_X = Hom(−, X)` for right modules, `_Xh = Hom(X, −)` for left ones.
pub fn representable(cats: &Arc<CategoryPair>, x: usize, side: Side) -> CatModule {
    let c = cats.covariant(side);
    let n = c.num_objects();
    let f = c.field();
    let dims = (0..n).map(|y| c.hom_dim(x, y)).collect();
    let cov = (0..n * n)
        .map(|i| {
            let (y, z) = (i / n, i % n);
            (0..c.hom_dim(y, z)).map(|a| c.left_composition(x, y, z, &unit_vector(f, c.hom_dim(y, z), a))).collect()
        })
        .collect();
    CatModule { cats: cats.clone(), side, dims, cov }
}

/// A direct sum with the block offsets of each summand per object.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: CatModule,
    /// `offsets[i][x]`: first coordinate of summand `i` in the sum at `x`.
    pub offsets: Vec<Vec<usize>>,
}

pub fn direct_sum(cats: &Arc<CategoryPair>, side: Side, summands: &[&CatModule]) -> Result<DirectSum> {
    let zero = CatModule::zero(cats.clone(), side);
    for s in summands {
        zero.compatible(s)?;
    }
    let n = zero.num_objects();
    let f = zero.field();
    let mut offsets = Vec::with_capacity(summands.len());
    let mut dims = vec![0; n];
    for s in summands {
        offsets.push(dims.clone());
        for x in 0..n {
            dims[x] += s.dims[x];
        }
    }
    let cov = (0..n * n)
        .map(|i| {
            (0..zero.cov[i].len())
                .map(|a| {
                    let blocks: Vec<&Matrix> = summands.iter().map(|s| &s.cov[i][a]).collect();
                    Matrix::block_diag(f, &blocks)
                })
                .collect()
        })
        .collect();
    Ok(DirectSum { module: CatModule { cats: cats.clone(), side, dims, cov }, offsets })
}

impl DirectSum {
    pub fn inclusion(&self, i: usize, summand: &CatModule) -> ModuleMorphism {
        let f = self.module.field();
        let comps = (0..self.module.num_objects())
            .map(|x| {
                let mut m = Matrix::zeros(f, self.module.dims[x], summand.dims[x]);
                m.set_block(self.offsets[i][x], 0, &Matrix::identity(f, summand.dims[x]));
                m
            })
            .collect();
        ModuleMorphism::new_unchecked(summand.clone(), self.module.clone(), comps)
    }

    pub fn projection(&self, i: usize, summand: &CatModule) -> ModuleMorphism {
        let f = self.module.field();
        let comps = (0..self.module.num_objects())
            .map(|x| {
                let mut m = Matrix::zeros(f, summand.dims[x], self.module.dims[x]);
                m.set_block(0, self.offsets[i][x], &Matrix::identity(f, summand.dims[x]));
                m
            })
            .collect();
        ModuleMorphism::new_unchecked(self.module.clone(), summand.clone(), comps)
    }
}

/// A natural transformation between modules on the same side.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMorphism {
    source: CatModule,
    target: CatModule,
    components: Vec<Matrix>,
}

impl ModuleMorphism {
    /// Checks shapes and naturality.
    pub fn new(source: CatModule, target: CatModule, components: Vec<Matrix>) -> Result<ModuleMorphism> {
        source.compatible(&target)?;
        if components.len() != source.num_objects()
            || components.iter().enumerate().any(|(x, c)| c.shape() != (target.dims[x], source.dims[x]))
        {
            return Err(Error::Dimension("morphism component shapes".into()));
        }
        let eta = ModuleMorphism { source, target, components };
        let r = validate_morphism(&eta);
        if !r.is_empty() {
            return Err(Error::Invalid(format!("not a module morphism: {r}")));
        }
        Ok(eta)
    }

    pub(crate) fn new_unchecked(source: CatModule, target: CatModule, components: Vec<Matrix>) -> ModuleMorphism {
        debug_assert_eq!(components.len(), source.num_objects());
        ModuleMorphism { source, target, components }
    }

    pub fn zero(source: &CatModule, target: &CatModule) -> ModuleMorphism {
        let f = source.field();
        let comps = (0..source.num_objects()).map(|x| Matrix::zeros(f, target.dims[x], source.dims[x])).collect();
        ModuleMorphism { source: source.clone(), target: target.clone(), components: comps }
    }

    pub fn identity(m: &CatModule) -> ModuleMorphism {
        let f = m.field();
        let comps = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        ModuleMorphism { source: m.clone(), target: m.clone(), components: comps }
    }

    pub fn source(&self) -> &CatModule {
        &self.source
    }
    pub fn target(&self) -> &CatModule {
        &self.target
    }
    pub fn components(&self) -> &[Matrix] {
        &self.components
    }
    pub fn component(&self, x: usize) -> &Matrix {
        &self.components[x]
    }
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleMorphism) -> ModuleMorphism {
        let comps = self.components.iter().zip(&first.components).map(|(a, b)| a.mul(b)).collect();
        ModuleMorphism { source: first.source.clone(), target: self.target.clone(), components: comps }
    }

    pub fn add(&self, other: &ModuleMorphism) -> ModuleMorphism {
        let comps = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), components: comps }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMorphism {
        let comps = self.components.iter().map(|a| a.scale(c)).collect();
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), components: comps }
    }

    /// Components flattened row-major and concatenated in object order.
    pub fn flatten(&self) -> Vector {
        self.components.iter().flat_map(flatten_map).collect()
    }

    /// Transposed components, between the dual modules.
    pub fn dual(&self) -> ModuleMorphism {
        let comps = self.components.iter().map(Matrix::transpose).collect();
        ModuleMorphism { source: self.target.dual(), target: self.source.dual(), components: comps }
    }

    pub fn with_components(&self, components: Vec<Matrix>) -> ModuleMorphism {
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), components }
    }
}

/// Naturality squares on every basis arrow.
pub fn validate_morphism(eta: &ModuleMorphism) -> Report {
    let mut r = Report::new();
    let (m, n) = (&eta.source, &eta.target);
    let c = m.covariant();
    let k = c.num_objects();
    for x in 0..k {
        for y in 0..k {
            for a in 0..c.hom_dim(x, y) {
                let lhs = n.cov_map(x, y, a).mul(&eta.components[x]);
                let rhs = eta.components[y].mul(m.cov_map(x, y, a));
                r.check(lhs == rhs, "naturality", || {
                    format!("square for {} does not commute", c.hom_labels(x, y)[a])
                });
            }
        }
    }
    r
}

/// A basis of a Hom space, as flattened morphisms in the columns.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: CatModule,
    pub target: CatModule,
    pub basis: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Length of a flattened morphism.
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn unflatten(&self, v: &[Scalar]) -> ModuleMorphism {
        unflatten_morphism(&self.source, &self.target, v)
    }

    pub fn morphism(&self, k: usize) -> ModuleMorphism {
        self.unflatten(&self.basis.col(k))
    }

    pub fn morphisms(&self) -> Vec<ModuleMorphism> {
        (0..self.dim()).map(|k| self.morphism(k)).collect()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ModuleMorphism {
        self.unflatten(&self.basis.apply(coeffs))
    }

    /// Coordinates of a morphism in this basis; `None` if it is not in the span.
    pub fn coordinates(&self, eta: &ModuleMorphism) -> Option<Vector> {
        solve(&self.basis, &eta.flatten()).expect("flattened length")
    }
}

pub fn unflatten_morphism(source: &CatModule, target: &CatModule, v: &[Scalar]) -> ModuleMorphism {
    let f = source.field();
    let mut at = 0;
    let comps = (0..source.num_objects())
        .map(|x| {
            let len = source.dims[x] * target.dims[x];
            let m = unflatten_map(f, target.dims[x], source.dims[x], &v[at..at + len]);
            at += len;
            m
        })
        .collect();
    ModuleMorphism { source: source.clone(), target: target.clone(), components: comps }
}

fn flat_len(m: &CatModule, n: &CatModule) -> usize {
    m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum()
}

/// `Hom(M, N)` from a presentation of `M`: a morphism is fixed by the images
/// `n_i` of the generators, subject to killing the relations.
pub fn module_hom_basis(m: &CatModule, n: &CatModule) -> Result<HomSpace> {
    m.compatible(n)?;
    let c = m.covariant();
    let k = c.num_objects();
    let f = m.field();
    let gens = generators(m);
    let objs: Vec<usize> = gens.elements.iter().map(|(x, _)| *x).collect();
    let mut unk_off = Vec::with_capacity(objs.len());
    let mut unknowns = 0;
    for &x in &objs {
        unk_off.push(unknowns);
        unknowns += n.dims[x];
    }
    // P(y) = ⊕_i hom(x_i, y); block i starts at p_off[y][i]
    let p_off: Vec<Vec<usize>> = (0..k)
        .map(|y| {
            let mut acc = 0;
            objs.iter()
                .map(|&x| {
                    let o = acc;
                    acc += c.hom_dim(x, y);
                    o
                })
                .collect()
        })
        .collect();
    let mut constraint_blocks = Vec::new();
    for y in 0..k {
        let relations = kernel_basis(gens.epi.component(y));
        for r in 0..relations.cols() {
            let rel = relations.col(r);
            let mut block = Matrix::zeros(f, n.dims[y], unknowns);
            for (i, &x) in objs.iter().enumerate() {
                let u = &rel[p_off[y][i]..p_off[y][i] + c.hom_dim(x, y)];
                if u.iter().all(Scalar::is_zero) {
                    continue;
                }
                block.set_block(0, unk_off[i], &n.cov_apply(x, y, u));
            }
            constraint_blocks.push(block);
        }
    }
    let refs: Vec<&Matrix> = constraint_blocks.iter().collect();
    let solutions = kernel_basis(&Matrix::vstack(f, unknowns, &refs));
    let sections: Vec<Matrix> = (0..k)
        .map(|y| {
            solve_matrix(gens.epi.component(y), &Matrix::identity(f, m.dims[y]))
                .expect("shapes")
                .expect("generators span every carrier")
        })
        .collect();
    let mut cols = Vec::with_capacity(solutions.cols());
    for s in 0..solutions.cols() {
        let sol = solutions.col(s);
        let mut flat = Vec::with_capacity(flat_len(m, n));
        for y in 0..k {
            let pdim = gens.epi.component(y).cols();
            let mut u_y = Matrix::zeros(f, n.dims[y], pdim);
            for (i, &x) in objs.iter().enumerate() {
                let ni = &sol[unk_off[i]..unk_off[i] + n.dims[x]];
                for a in 0..c.hom_dim(x, y) {
                    let col = n.cov_map(x, y, a).apply(ni);
                    for (row, v) in col.into_iter().enumerate() {
                        u_y[(row, p_off[y][i] + a)] = v;
                    }
                }
            }
            flat.extend(flatten_map(&u_y.mul(&sections[y])));
        }
        cols.push(flat);
    }
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis: Matrix::from_columns(f, flat_len(m, n), &cols) })
}

/// `Hom(M, N)` by solving every naturality square at once.
pub fn module_hom_basis_naive(m: &CatModule, n: &CatModule) -> Result<HomSpace> {
    m.compatible(n)?;
    let c = m.covariant();
    let k = c.num_objects();
    let f = m.field();
    let total = flat_len(m, n);
    let mut off = Vec::with_capacity(k);
    let mut acc = 0;
    for x in 0..k {
        off.push(acc);
        acc += m.dims[x] * n.dims[x];
    }
    // unknown (x, r, s) is entry (r, s) of η(x) at off[x] + r·dim M(x) + s
    let mut blocks = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for a in 0..c.hom_dim(x, y) {
                let na = n.cov_map(x, y, a);
                let ma = m.cov_map(x, y, a);
                // N(a) η(x) − η(y) M(a) = 0, entry (r, s) with r < dim N(y), s < dim M(x)
                let mut block = Matrix::zeros(f, n.dims[y] * m.dims[x], total);
                for r in 0..n.dims[y] {
                    for s in 0..m.dims[x] {
                        let row = r * m.dims[x] + s;
                        for t in 0..n.dims[x] {
                            let v = &na[(r, t)];
                            if !v.is_zero() {
                                block[(row, off[x] + t * m.dims[x] + s)] += v;
                            }
                        }
                        for t in 0..m.dims[y] {
                            let v = &ma[(t, s)];
                            if !v.is_zero() {
                                block[(row, off[y] + r * m.dims[y] + t)] -= v;
                            }
                        }
                    }
                }
                blocks.push(block);
            }
        }
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis: kernel_basis(&Matrix::vstack(f, total, &refs)) })
}

/// A submodule given by its inclusion.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: CatModule,
    pub inclusion: ModuleMorphism,
}

/// A quotient with its projection and a linear (not natural) section.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: CatModule,
    pub projection: ModuleMorphism,
    pub sections: Vec<Matrix>,
}

/// The submodule with carriers spanned by the given independent columns;
/// closure under the action is checked.
pub fn submodule(m: &CatModule, bases: Vec<Matrix>) -> Result<Kernel> {
    let c = m.covariant();
    let k = c.num_objects();
    let mut cov = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            let mut list = Vec::with_capacity(c.hom_dim(x, y));
            for a in 0..c.hom_dim(x, y) {
                let image = m.cov_map(x, y, a).mul(&bases[x]);
                let coords = solve_matrix(&bases[y], &image)?
                    .ok_or_else(|| Error::Invalid(format!("subspace not closed under {}", c.hom_labels(x, y)[a])))?;
                list.push(coords);
            }
            cov.push(list);
        }
    }
    let dims = bases.iter().map(Matrix::cols).collect();
    let sub = CatModule { cats: m.cats.clone(), side: m.side, dims, cov };
    let inclusion = ModuleMorphism { source: sub.clone(), target: m.clone(), components: bases };
    Ok(Kernel { module: sub, inclusion })
}

pub fn kernel(eta: &ModuleMorphism) -> Kernel {
    let bases = eta.components.iter().map(kernel_basis).collect();
    submodule(&eta.source, bases).expect("kernels of natural maps are submodules")
}

/// Quotient of `N` by the submodule spanned pointwise by the columns of
/// `spans[x]` (not necessarily independent).
pub fn quotient(n: &CatModule, spans: &[Matrix]) -> Result<Cokernel> {
    let c = n.covariant();
    let k = c.num_objects();
    let f = n.field();
    let mut proj = Vec::with_capacity(k);
    let mut sections = Vec::with_capacity(k);
    for y in 0..k {
        let im = spans[y].column_basis();
        let d = n.dims[y];
        let all = Matrix::hstack(f, d, &[&im, &Matrix::identity(f, d)]);
        let pivots = all.pivot_columns();
        let comp: Vec<usize> = pivots.iter().filter(|&&p| p >= im.cols()).map(|&p| p - im.cols()).collect();
        let section = Matrix::identity(f, d).select_columns(&comp);
        let full = Matrix::hstack(f, d, &[&im, &section]);
        let inv = full.inverse().expect("completed basis");
        let rows: Vec<usize> = (im.cols()..d).collect();
        proj.push(inv.select_rows(&rows));
        sections.push(section);
    }
    let mut cov = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            let mut list = Vec::with_capacity(c.hom_dim(x, y));
            for a in 0..c.hom_dim(x, y) {
                let na = n.cov_map(x, y, a);
                let moved = na.mul(&spans[x]);
                if !span_contains(&spans[y], &moved) {
                    return Err(Error::Invalid(format!("subspace not closed under {}", c.hom_labels(x, y)[a])));
                }
                list.push(proj[y].mul(na).mul(&sections[x]));
            }
            cov.push(list);
        }
    }
    let dims = sections.iter().map(Matrix::cols).collect();
    let q = CatModule { cats: n.cats.clone(), side: n.side, dims, cov };
    let projection = ModuleMorphism { source: n.clone(), target: q.clone(), components: proj };
    Ok(Cokernel { module: q, projection, sections })
}

pub fn cokernel(eta: &ModuleMorphism) -> Cokernel {
    quotient(&eta.target, &eta.components).expect("images of natural maps are submodules")
}

/// `η = inclusion ∘ corestriction` through the image.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: CatModule,
    pub corestriction: ModuleMorphism,
    pub inclusion: ModuleMorphism,
}

pub fn image(eta: &ModuleMorphism) -> Image {
    let bases: Vec<Matrix> = eta.components.iter().map(Matrix::column_basis).collect();
    let sub = submodule(&eta.target, bases.clone()).expect("images of natural maps are submodules");
    let cores = eta
        .components
        .iter()
        .zip(&bases)
        .map(|(c, b)| solve_matrix(b, c).expect("shapes").expect("image contains columns"))
        .collect();
    let corestriction = ModuleMorphism { source: eta.source.clone(), target: sub.module.clone(), components: cores };
    Image { module: sub.module, corestriction, inclusion: sub.inclusion }
}

/// Pointwise spans of the submodule generated by elements `(x, v)`.
pub fn generated_spans(m: &CatModule, elements: &[(usize, Vector)]) -> Vec<Matrix> {
    let c = m.covariant();
    let f = m.field();
    (0..c.num_objects())
        .map(|y| {
            let mut cols = Vec::new();
            for (x, v) in elements {
                for a in 0..c.hom_dim(*x, y) {
                    cols.push(m.cov_map(*x, y, a).apply(v));
                }
            }
            Matrix::from_columns(f, m.dims[y], &cols).column_basis()
        })
        .collect()
}

/// `⊕ h_{x_i}` (right) or `⊕ _{x_i}h` (left).
pub fn free_module(cats: &Arc<CategoryPair>, side: Side, objects: &[usize]) -> DirectSum {
    let reps: Vec<CatModule> = objects.iter().map(|&x| representable(cats, x, side)).collect();
    let refs: Vec<&CatModule> = reps.iter().collect();
    direct_sum(cats, side, &refs).expect("same category")
}

/// The map `⊕ h_{x_i} → M` sending the identity of summand `i` to `m_i`.
pub fn map_from_free(free: &DirectSum, objects: &[usize], target: &CatModule, elements: &[Vector]) -> ModuleMorphism {
    let c = target.covariant();
    let f = target.field();
    let comps = (0..c.num_objects())
        .map(|y| {
            let mut cols = Vec::new();
            for (i, &x) in objects.iter().enumerate() {
                for a in 0..c.hom_dim(x, y) {
                    cols.push(target.cov_map(x, y, a).apply(&elements[i]));
                }
            }
            Matrix::from_columns(f, target.dims[y], &cols)
        })
        .collect();
    ModuleMorphism { source: free.module.clone(), target: target.clone(), components: comps }
}

/// Generators with the certifying epimorphism from a free module.
#[derive(Clone, Debug)]
pub struct Generators {
    pub elements: Vec<(usize, Vector)>,
    pub free: DirectSum,
    pub epi: ModuleMorphism,
}

/// Greedy generators in basis order, then a pass dropping any generator
/// already in the submodule generated by the remaining ones.
pub fn generators(m: &CatModule) -> Generators {
    let f = m.field();
    let k = m.num_objects();
    let mut elements: Vec<(usize, Vector)> = Vec::new();
    let mut spans: Vec<Matrix> = (0..k).map(|x| Matrix::zeros(f, m.dims[x], 0)).collect();
    for x in 0..k {
        for i in 0..m.dims[x] {
            let e = unit_vector(f, m.dims[x], i);
            if solve(&spans[x], &e).expect("shape").is_some() {
                continue;
            }
            elements.push((x, e));
            spans = generated_spans(m, &elements);
        }
    }
    let mut i = 0;
    while i < elements.len() {
        let others: Vec<(usize, Vector)> =
            elements.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let (x, v) = &elements[i];
        let spans = generated_spans(m, &others);
        if solve(&spans[*x], v).expect("shape").is_some() {
            elements.remove(i);
        } else {
            i += 1;
        }
    }
    let objects: Vec<usize> = elements.iter().map(|(x, _)| *x).collect();
    let values: Vec<Vector> = elements.iter().map(|(_, v)| v.clone()).collect();
    let free = free_module(&m.cats, m.side, &objects);
    let epi = map_from_free(&free, &objects, m, &values);
    Generators { elements, free, epi }
}

/// Some `θ` with `ε ∘ θ = η`, for `η: A → C` and `ε: B → C`.
pub fn factor_through(eta: &ModuleMorphism, eps: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let hom = module_hom_basis(&eta.source, &eps.source)?;
    let f = eta.source.field();
    let cols: Vec<Vector> = hom.morphisms().iter().map(|t| eps.after(t).flatten()).collect();
    let a = Matrix::from_columns(f, flat_len(&eta.source, &eta.target), &cols);
    Ok(solve(&a, &eta.flatten())?.map(|c| hom.combine(&c)))
}

/// Some `θ` with `θ ∘ ι = η`, for `η: A → I` and `ι: A → B`.
pub fn extend_along(eta: &ModuleMorphism, iota: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let hom = module_hom_basis(&iota.target, &eta.target)?;
    let f = eta.source.field();
    let cols: Vec<Vector> = hom.morphisms().iter().map(|t| t.after(iota).flatten()).collect();
    let a = Matrix::from_columns(f, flat_len(&eta.source, &eta.target), &cols);
    Ok(solve(&a, &eta.flatten())?.map(|c| hom.combine(&c)))
}

/// `im f = ker g` at every object.
pub fn is_exact_at(f: &ModuleMorphism, g: &ModuleMorphism) -> bool {
    f.components.iter().zip(&g.components).all(|(a, b)| {
        b.mul(a).is_zero() && a.rank() + b.rank() == a.rows()
    })
}

/// Flattened zero vector of a Hom space.
pub fn zero_flat(m: &CatModule, n: &CatModule) -> Vector {
    zero_vector(m.field(), flat_len(m, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn dual_numbers() -> Arc<CategoryPair> {
        CategoryPair::new(fixtures::dual_numbers())
    }

    fn trivial_t(cats: &Arc<CategoryPair>) -> CatModule {
        let q = Field::Rationals;
        CatModule::new(cats.clone(), Side::Right, vec![1], vec![vec![Matrix::identity(q, 1), Matrix::zeros(q, 1, 1)]])
            .unwrap()
    }

    #[test]
    fn representables_and_yoneda() {
        let cats = dual_numbers();
        let r = representable(&cats, 0, Side::Right);
        assert!(validate_cat_module(&r).is_empty());
        assert_eq!(r.dims(), &[2]);
        let t = trivial_t(&cats);
        assert!(validate_cat_module(&t).is_empty());
        assert_eq!(module_hom_basis(&r, &t).unwrap().dim(), 1);
        assert_eq!(module_hom_basis(&t, &t).unwrap().dim(), 1);
        assert_eq!(module_hom_basis(&r, &r).unwrap().dim(), 2);
        assert_eq!(module_hom_basis(&t, &r).unwrap().dim(), 1);

        let c3 = CategoryPair::new(fixtures::arrow_category(Field::Rationals));
        let ah = representable(&c3, 0, Side::Left);
        assert_eq!(ah.dims(), &[1, 1]);
        let hb = representable(&c3, 1, Side::Right);
        assert_eq!(hb.dims(), &[1, 1]);
        let ha = representable(&c3, 0, Side::Right);
        assert_eq!(ha.dims(), &[1, 0]);
        for m in [&ah, &hb, &ha] {
            assert!(validate_cat_module(m).is_empty());
            for x in 0..2 {
                let y = representable(&c3, x, m.side());
                assert_eq!(module_hom_basis(&y, m).unwrap().dim(), m.dim(x));
            }
        }
    }

    #[test]
    fn presentation_matches_naive() {
        let cats = dual_numbers();
        let r = representable(&cats, 0, Side::Right);
        let t = trivial_t(&cats);
        let ds = direct_sum(&cats, Side::Right, &[&r, &t]).unwrap().module;
        for a in [&r, &t, &ds] {
            for b in [&r, &t, &ds] {
                let p = module_hom_basis(a, b).unwrap();
                let n = module_hom_basis_naive(a, b).unwrap();
                assert!(crate::exactlin::span_equal(&p.basis, &n.basis));
                assert_eq!(p.dim(), n.dim());
                for eta in p.morphisms() {
                    assert!(validate_morphism(&eta).is_empty());
                }
            }
        }
    }

    #[test]
    fn kernels_and_cokernels() {
        let cats = dual_numbers();
        let r = representable(&cats, 0, Side::Right);
        let t = trivial_t(&cats);
        let quot = module_hom_basis(&r, &t).unwrap().morphism(0);
        let k = kernel(&quot);
        assert_eq!(k.module.dims(), &[1]);
        assert!(validate_cat_module(&k.module).is_empty());
        let q = Field::Rationals;
        assert!(span_contains(&Matrix::from_ints(q, 2, 1, &[0, 1]), k.inclusion.component(0)));
        let c = cokernel(&quot);
        assert_eq!(c.module.dims(), &[0]);
        assert!(is_exact_at(&k.inclusion, &quot));

        let z = ModuleMorphism::zero(&r, &t);
        assert_eq!(kernel(&z).module.dims(), r.dims());
        assert_eq!(cokernel(&z).module.dims(), t.dims());
        let id = ModuleMorphism::identity(&r);
        assert!(kernel(&id).module.is_zero());
        assert!(cokernel(&id).module.is_zero());
    }

    #[test]
    fn generator_examples() {
        let cats = dual_numbers();
        let r = representable(&cats, 0, Side::Right);
        let g = generators(&r);
        assert_eq!(g.elements.len(), 1);
        assert_eq!(g.elements[0].1, unit_vector(Field::Rationals, 2, 0));
        assert_eq!(generators(&trivial_t(&cats)).elements.len(), 1);
        assert!(generators(&CatModule::zero(cats.clone(), Side::Right)).elements.is_empty());
        // e₂ first would be found greedily only after e₁; a sum needs pruning
        let ds = direct_sum(&cats, Side::Right, &[&r, &r]).unwrap().module;
        assert_eq!(generators(&ds).elements.len(), 2);
    }

    #[test]
    fn dual_is_involutive_and_valid() {
        let c3 = CategoryPair::new(fixtures::arrow_category(Field::Rationals));
        let m = representable(&c3, 1, Side::Right);
        let d = m.dual();
        assert_eq!(d.side(), Side::Left);
        assert!(validate_cat_module(&d).is_empty());
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn factor_and_extend() {
        let cats = dual_numbers();
        let r = representable(&cats, 0, Side::Right);
        let t = trivial_t(&cats);
        let quot = module_hom_basis(&r, &t).unwrap().morphism(0);
        let id_t = ModuleMorphism::identity(&t);
        // T is not projective: the quotient R → T has no section
        assert!(factor_through(&id_t, &quot).unwrap().is_none());
        let lift = factor_through(&quot, &quot).unwrap().unwrap();
        assert_eq!(quot.after(&lift), quot);
        let inc = module_hom_basis(&t, &r).unwrap().morphism(0);
        // the socle inclusion does not extend to a map R → T sending x to 1
        assert!(extend_along(&id_t, &inc).unwrap().is_none());
        let ext = extend_along(&inc, &ModuleMorphism::identity(&t)).unwrap().unwrap();
        assert_eq!(ext, inc);
    }
}
