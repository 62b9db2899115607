//! Equivariant right modules over an H-category, their translation to
//! modules over the smash product, and the H-action on Hom spaces.

use std::sync::Arc;

use crate::catmod::{
    module_hom_basis, representable, submodule, validate_cat_module, validate_morphism, CatModule, HomSpace,
    ModuleMorphism, Side,
};
use crate::error::{Error, Result};
use crate::exactlin::{solve, solve_matrix, span_contains, span_equal, Field, Matrix, Scalar, Vector};
use crate::hcat::HCategory;
use crate::hopf::HopfAlgebra;
use crate::hrep::{h_linear_maps, invariants, tensor_modules, validate_module, HModule};
use crate::report::Report;

/// A right module over `C` with an `H`-module structure on every carrier,
/// subject to `h(M(f)(m)) = Σ M(h₂f)(h₁m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivModule {
    hcat: Arc<HCategory>,
    base: CatModule,
    hmod: Vec<HModule>,
}

impl EquivModule {
    /// Checks shapes only; see [`validate_equivariant`].
    pub fn new(hcat: Arc<HCategory>, base: CatModule, hmod: Vec<HModule>) -> Result<EquivModule> {
        if base.side() != Side::Right || base.category() != &**hcat.base() {
            return Err(Error::Invalid("equivariant modules are right modules over the H-category".into()));
        }
        if hmod.len() != base.num_objects()
            || hmod.iter().zip(base.dims()).any(|(h, &d)| h.dim() != d || **h.hopf() != **hcat.hopf())
        {
            return Err(Error::Dimension("one H-module per object, on the same carrier".into()));
        }
        // share the category pair so Hom solvers see identical categories
        let base = CatModule::from_covariant(hcat.cats().clone(), Side::Right, base.dims().to_vec(), base.cov_maps().to_vec())?;
        Ok(EquivModule { hcat, base, hmod })
    }

    pub fn hcat(&self) -> &Arc<HCategory> {
        &self.hcat
    }
    pub fn base(&self) -> &CatModule {
        &self.base
    }
    pub fn hmod(&self, x: usize) -> &HModule {
        &self.hmod[x]
    }
    pub fn hmods(&self) -> &[HModule] {
        &self.hmod
    }
    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.hcat.hopf()
    }
    pub fn field(&self) -> Field {
        self.base.field()
    }
    pub fn dims(&self) -> &[usize] {
        self.base.dims()
    }
    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    pub fn zero(hcat: &Arc<HCategory>) -> EquivModule {
        let base = CatModule::zero(hcat.cats().clone(), Side::Right);
        let hmod = base.dims().iter().map(|_| HModule::new(hcat.hopf().clone(), 0, zero_actions(hcat, 0)).unwrap()).collect();
        EquivModule { hcat: hcat.clone(), base, hmod }
    }
}

fn zero_actions(hcat: &HCategory, d: usize) -> Vec<Matrix> {
    vec![Matrix::zeros(hcat.base().field(), d, d); hcat.hopf().dim()]
}

/// Module laws of the parts plus the compatibility on every basis triple.
pub fn validate_equivariant(m: &EquivModule) -> Report {
    let mut r = validate_cat_module(&m.base);
    for (x, h) in m.hmod.iter().enumerate() {
        r.extend(validate_module(h).prefixed(&format!("object {}", m.base.category().objects()[x])));
    }
    if !r.is_empty() {
        return r;
    }
    let c = m.hcat.base();
    let h = m.hopf();
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            for a in 0..c.hom_dim(x, y) {
                for i in 0..h.dim() {
                    let lhs = m.hmod[x].action(i).mul(m.base.map(x, y, a));
                    let mut rhs = Matrix::zeros(m.field(), m.dims()[x], m.dims()[y]);
                    for (j, k, coef) in h.comult(i) {
                        let hf = m.hcat.action(x, y, *k).col(a);
                        rhs.add_scaled(coef, &m.base.apply(x, y, &hf).mul(m.hmod[y].action(*j)));
                    }
                    r.check(lhs == rhs, "equivariance", || {
                        format!("{}(M({})(m)) != Σ M(h₂f)(h₁m)", h.labels()[i], c.hom_labels(x, y)[a])
                    });
                }
            }
        }
    }
    r
}

/// Naturality plus `H`-linearity of every component.
pub fn validate_equivariant_morphism(eta: &ModuleMorphism, m: &EquivModule, n: &EquivModule) -> Report {
    let mut r = validate_morphism(eta);
    for x in 0..m.dims().len() {
        for i in 0..m.hopf().dim() {
            let ok = n.hmod[x].action(i).mul(eta.component(x)) == eta.component(x).mul(m.hmod[x].action(i));
            r.check(ok, "H-linearity", || format!("component at {} is not H-linear", m.base.category().objects()[x]));
        }
    }
    r
}

/// `h_X` with `H` acting on each `hom(Y, X)`.
pub fn representable_equivariant(hcat: &Arc<HCategory>, x: usize) -> EquivModule {
    let base = representable(hcat.cats(), x, Side::Right);
    let hmod = (0..base.num_objects()).map(|y| hcat.hom_module(y, x)).collect();
    EquivModule { hcat: hcat.clone(), base, hmod }
}

/// `V ⊗ N` with `N(f)` on the second factor and the diagonal `H`-action;
/// carrier index `a·dim N(x) + b`.
pub fn tensor_hmod(v: &HModule, n: &EquivModule) -> Result<EquivModule> {
    let f = n.field();
    let k = n.dims().len();
    let id = Matrix::identity(f, v.dim());
    let cov = n.base.cov_maps().iter().map(|list| list.iter().map(|m| id.kron(m)).collect()).collect();
    let dims = n.dims().iter().map(|d| d * v.dim()).collect();
    let base = CatModule::from_covariant(n.base.cats().clone(), Side::Right, dims, cov)?;
    let hmod = (0..k).map(|x| tensor_modules(v, &n.hmod[x])).collect::<Result<Vec<_>>>()?;
    Ok(EquivModule { hcat: n.hcat.clone(), base, hmod })
}

/// `f ⊗ h` in the smash basis (hom outer, `H` inner).
pub fn smash_arrow(hopf_dim: usize, f: &[Scalar], h: &[Scalar]) -> Vector {
    let mut v = Vec::with_capacity(f.len() * hopf_dim);
    for a in f {
        for b in h {
            v.push(a * b);
        }
    }
    v
}

/// The right `C#H`-module `M'(f#h) = S⁻¹(h)·M(f)`.
pub fn to_smash(m: &EquivModule) -> CatModule {
    let c = m.hcat.base();
    let h = m.hopf();
    let n = c.num_objects();
    let nh = h.dim();
    let sinv: Vec<Vec<Matrix>> = (0..n)
        .map(|x| (0..nh).map(|i| m.hmod[x].act(&h.antipode_inv().col(i))).collect())
        .collect();
    let action = (0..n * n)
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            let mut list = Vec::with_capacity(c.hom_dim(x, y) * nh);
            for a in 0..c.hom_dim(x, y) {
                for s in &sinv[x] {
                    list.push(s.mul(m.base.map(x, y, a)));
                }
            }
            list
        })
        .collect();
    CatModule::new(m.hcat.smash_cats().clone(), Side::Right, m.dims().to_vec(), action).expect("smash module shapes")
}

/// Inverse of [`to_smash`]: `M(f) = M'(f#1)` and `hm = M'(id#S(h))m`.
pub fn from_smash(hcat: &Arc<HCategory>, m: &CatModule) -> Result<EquivModule> {
    if m.side() != Side::Right || m.category() != hcat.smash() {
        return Err(Error::Invalid("expected a right module over the smash product".into()));
    }
    let c = hcat.base();
    let h = hcat.hopf();
    let n = c.num_objects();
    let f = c.field();
    let action = (0..n * n)
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            (0..c.hom_dim(x, y))
                .map(|a| {
                    let fa = crate::exactlin::unit_vector(f, c.hom_dim(x, y), a);
                    m.apply(x, y, &smash_arrow(h.dim(), &fa, h.unit()))
                })
                .collect()
        })
        .collect();
    let base = CatModule::new(hcat.cats().clone(), Side::Right, m.dims().to_vec(), action)?;
    let hmod = (0..n)
        .map(|x| {
            let acts = (0..h.dim())
                .map(|i| m.apply(x, x, &smash_arrow(h.dim(), c.identity(x), &h.antipode().col(i))))
                .collect();
            HModule::new(h.clone(), m.dim(x), acts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivModule { hcat: hcat.clone(), base, hmod })
}

/// Equivariant morphisms `M → N`, i.e. `Hom` over the smash product.
pub fn smash_hom_basis(m: &EquivModule, n: &EquivModule) -> Result<HomSpace> {
    let hom = module_hom_basis(&to_smash(m), &to_smash(n))?;
    Ok(HomSpace { source: m.base.clone(), target: n.base.clone(), basis: hom.basis })
}

/// `Hom_C(M, N)` as an `H`-module under `(h·η)(X)(m) = Σ h₁ η(X)(S(h₂)m)`.
#[derive(Clone, Debug)]
pub struct HomAction {
    pub hom: HomSpace,
    pub module: HModule,
}

impl HomAction {
    /// Flattened morphisms spanning the invariants.
    pub fn invariant_morphisms(&self) -> Matrix {
        self.hom.basis.mul(&invariants(&self.module))
    }
}

/// `h·η` for a single morphism.
pub fn act_on_morphism(h: &[Scalar], eta: &ModuleMorphism, m: &EquivModule, n: &EquivModule) -> ModuleMorphism {
    let hopf = m.hopf();
    let f = m.field();
    let mut comps: Vec<Matrix> = (0..m.dims().len()).map(|x| Matrix::zeros(f, n.dims()[x], m.dims()[x])).collect();
    for (i, hi) in h.iter().enumerate() {
        if hi.is_zero() {
            continue;
        }
        for (j, k, c) in hopf.comult(i) {
            let s = hopf.antipode().col(*k);
            let coef = hi * c;
            for (x, comp) in comps.iter_mut().enumerate() {
                let t = n.hmod[x].action(*j).mul(eta.component(x)).mul(&m.hmod[x].act(&s));
                comp.add_scaled(&coef, &t);
            }
        }
    }
    eta.with_components(comps)
}

pub fn hom_h_action(m: &EquivModule, n: &EquivModule) -> Result<HomAction> {
    let hom = module_hom_basis(&m.base, &n.base)?;
    let hopf = m.hopf();
    let f = m.field();
    let morphisms = hom.morphisms();
    let mut action = Vec::with_capacity(hopf.dim());
    for i in 0..hopf.dim() {
        let e = hopf.basis(i);
        let cols: Vec<Vector> = morphisms.iter().map(|eta| act_on_morphism(&e, eta, m, n).flatten()).collect();
        let moved = Matrix::from_columns(f, hom.ambient_dim(), &cols);
        let coords = solve_matrix(&hom.basis, &moved)?
            .ok_or_else(|| Error::Invalid("H-action leaves the Hom space".into()))?;
        action.push(coords);
    }
    let module = HModule::new(hopf.clone(), hom.dim(), action)?;
    Ok(HomAction { hom, module })
}

/// Whether the invariants of `Hom_C(M, N)` are exactly the equivariant
/// morphisms, as subspaces of the flattened maps.
pub fn invariant_hom_equals_smash_hom(m: &EquivModule, n: &EquivModule) -> Result<bool> {
    let ha = hom_h_action(m, n)?;
    let smash = smash_hom_basis(m, n)?;
    Ok(span_equal(&ha.invariant_morphisms(), &smash.basis))
}

/// Direct sum with block-diagonal actions, in summand order.
pub fn equivariant_direct_sum(hcat: &Arc<HCategory>, summands: &[&EquivModule]) -> Result<EquivModule> {
    let bases: Vec<&CatModule> = summands.iter().map(|s| &s.base).collect();
    let sum = crate::catmod::direct_sum(hcat.cats(), Side::Right, &bases)?;
    let h = hcat.hopf();
    let f = h.field();
    let hmod = (0..sum.module.num_objects())
        .map(|x| {
            let acts = (0..h.dim())
                .map(|i| {
                    let blocks: Vec<&Matrix> = summands.iter().map(|s| s.hmod[x].action(i)).collect();
                    Matrix::block_diag(f, &blocks)
                })
                .collect();
            HModule::new(h.clone(), sum.module.dim(x), acts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivModule { hcat: hcat.clone(), base: sum.module, hmod })
}

/// Submodule on the given carrier bases; closure is checked for both
/// structures.
pub fn equivariant_submodule(m: &EquivModule, bases: Vec<Matrix>) -> Result<(EquivModule, ModuleMorphism)> {
    let hmod = m.hmod.iter().zip(&bases).map(|(h, b)| h.restrict(b)).collect::<Result<Vec<_>>>()?;
    let k = submodule(&m.base, bases)?;
    Ok((EquivModule { hcat: m.hcat.clone(), base: k.module, hmod }, k.inclusion))
}

pub fn equivariant_kernel(eta: &ModuleMorphism, m: &EquivModule) -> Result<(EquivModule, ModuleMorphism)> {
    let bases = eta.components().iter().map(crate::exactlin::kernel_basis).collect();
    equivariant_submodule(m, bases)
}

/// `M ⊗ H` over `C#H` with `(M⊗H)(f#h')(m⊗h) = Σ M(h₁·f)(m) ⊗ h₂h'`;
/// carrier index `m·dim H + i`.
pub fn extend_scalars(hcat: &Arc<HCategory>, m: &CatModule) -> Result<CatModule> {
    if m.side() != Side::Right || m.category() != &**hcat.base() {
        return Err(Error::Invalid("expected a right module over the H-category".into()));
    }
    let c = hcat.base();
    let h = hcat.hopf();
    let n = c.num_objects();
    let nh = h.dim();
    let f = c.field();
    let action = (0..n * n)
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            let mut list = Vec::with_capacity(c.hom_dim(x, y) * nh);
            for a in 0..c.hom_dim(x, y) {
                for i2 in 0..nh {
                    let mut mat = Matrix::zeros(f, m.dim(x) * nh, m.dim(y) * nh);
                    for i in 0..nh {
                        for (j, k, coef) in h.comult(i) {
                            let hf = hcat.action(x, y, *j).col(a);
                            let mf = m.apply(x, y, &hf);
                            let prod = h.mul_basis(*k, i2);
                            for s in 0..m.dim(y) {
                                for t in 0..m.dim(x) {
                                    let v = &mf[(t, s)];
                                    if v.is_zero() {
                                        continue;
                                    }
                                    for (l, pl) in prod.iter().enumerate() {
                                        if !pl.is_zero() {
                                            mat[(t * nh + l, s * nh + i)] += &(coef * &(v * pl));
                                        }
                                    }
                                }
                            }
                        }
                    }
                    list.push(mat);
                }
            }
            list
        })
        .collect();
    let dims = m.dims().iter().map(|d| d * nh).collect();
    CatModule::new(hcat.smash_cats().clone(), Side::Right, dims, action)
}

/// Outcome of checking a claimed bijection between two Hom spaces on full
/// bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub left_dim: usize,
    pub right_dim: usize,
    /// Every image of a basis element is a valid element of the other side.
    pub images_valid: bool,
    pub left_roundtrip: bool,
    pub right_roundtrip: bool,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.left_dim == self.right_dim && self.images_valid && self.left_roundtrip && self.right_roundtrip
    }
}

/// `Hom_{C#H}(M⊗H, N) ≅ Hom_C(M, N)` with `φ(η)(X)(m) = η(X)(m⊗1)` and
/// inverse `ψ(ξ)(X)(m⊗h) = S⁻¹(h)ξ(X)(m)`.
pub fn extend_scalars_adjunction(m: &CatModule, n: &EquivModule) -> Result<AdjunctionCheck> {
    let hcat = n.hcat();
    let h = hcat.hopf();
    let nh = h.dim();
    let f = n.field();
    let ext = extend_scalars(hcat, m)?;
    let n_smash = to_smash(n);
    let left = module_hom_basis(&ext, &n_smash)?;
    let right = module_hom_basis(m, &n.base)?;
    let unit_col = Matrix::from_columns(f, nh, &[h.unit().clone()]);
    let phi = |eta: &ModuleMorphism| -> ModuleMorphism {
        let comps = (0..m.num_objects())
            .map(|x| eta.component(x).mul(&Matrix::identity(f, m.dim(x)).kron(&unit_col)))
            .collect();
        crate::catmod::unflatten_morphism(m, &n.base, &flatten_all(comps))
    };
    let psi = |xi: &ModuleMorphism| -> ModuleMorphism {
        let comps = (0..m.num_objects())
            .map(|x| {
                let mut out = Matrix::zeros(f, n.dims()[x], m.dim(x) * nh);
                for i in 0..nh {
                    let s = n.hmod[x].act(&h.antipode_inv().col(i)).mul(xi.component(x));
                    for col in 0..m.dim(x) {
                        for row in 0..n.dims()[x] {
                            out[(row, col * nh + i)] = s[(row, col)].clone();
                        }
                    }
                }
                out
            })
            .collect();
        crate::catmod::unflatten_morphism(&ext, &n_smash, &flatten_all(comps))
    };
    let mut images_valid = true;
    let mut left_roundtrip = true;
    let mut right_roundtrip = true;
    for eta in left.morphisms() {
        let p = phi(&eta);
        images_valid &= validate_morphism(&p).is_empty() && right.coordinates(&p).is_some();
        left_roundtrip &= psi(&p) == eta;
    }
    for xi in right.morphisms() {
        let p = psi(&xi);
        images_valid &= validate_morphism(&p).is_empty() && left.coordinates(&p).is_some();
        right_roundtrip &= phi(&p) == xi;
    }
    Ok(AdjunctionCheck { left_dim: left.dim(), right_dim: right.dim(), images_valid, left_roundtrip, right_roundtrip })
}

fn flatten_all(comps: Vec<Matrix>) -> Vector {
    comps.iter().flat_map(crate::hrep::flatten_map).collect()
}

/// `Hom_{C#H}(V⊗N, P) ≅ Hom_H(V, Hom_C(N, P))` with
/// `φ(η)(v)(X)(n) = η(X)(v⊗n)` and inverse `ν(F)(X)(v⊗n) = F(v)(X)(n)`.
pub fn tensor_hom_adjunction(v: &HModule, n: &EquivModule, p: &EquivModule) -> Result<AdjunctionCheck> {
    let f = n.field();
    let vn = tensor_hmod(v, n)?;
    let left = smash_hom_basis(&vn, p)?;
    let hom = hom_h_action(n, p)?;
    let right = h_linear_maps(v, &hom.module)?;
    let k = n.dims().len();
    let dv = v.dim();
    let dw = hom.hom.dim();
    // φ: a morphism to the flattened dim W × dim V matrix of coordinates
    let phi = |eta: &ModuleMorphism| -> Option<Vector> {
        let mut cols = Vec::with_capacity(dv);
        for b in 0..dv {
            let comps: Vec<Matrix> = (0..k)
                .map(|x| eta.component(x).block(0, b * n.dims()[x], p.dims()[x], n.dims()[x]))
                .collect();
            cols.push(hom.hom.coordinates(&eta_like(n, p, comps))?);
        }
        Some(crate::hrep::flatten_map(&Matrix::from_columns(f, dw, &cols)))
    };
    let nu = |flat: &[Scalar]| -> ModuleMorphism {
        let fmat = crate::hrep::unflatten_map(f, dw, dv, flat);
        let comps = (0..k)
            .map(|x| {
                let blocks: Vec<Matrix> = (0..dv).map(|b| hom.hom.combine(&fmat.col(b)).component(x).clone()).collect();
                let refs: Vec<&Matrix> = blocks.iter().collect();
                Matrix::hstack(f, p.dims()[x], &refs)
            })
            .collect();
        crate::catmod::unflatten_morphism(&vn.base, &p.base, &flatten_all(comps))
    };
    let mut images_valid = true;
    let mut left_roundtrip = true;
    let mut right_roundtrip = true;
    for eta in left.morphisms() {
        match phi(&eta) {
            Some(fl) => {
                images_valid &= span_contains(&right, &Matrix::from_columns(f, dw * dv, std::slice::from_ref(&fl)));
                left_roundtrip &= nu(&fl) == eta;
            }
            None => images_valid = false,
        }
    }
    for col in 0..right.cols() {
        let fl = right.col(col);
        let eta = nu(&fl);
        images_valid &= validate_equivariant_morphism(&eta, &vn, p).is_empty();
        right_roundtrip &= phi(&eta).as_deref() == Some(&fl[..]);
    }
    Ok(AdjunctionCheck { left_dim: left.dim(), right_dim: right.cols(), images_valid, left_roundtrip, right_roundtrip })
}

fn eta_like(n: &EquivModule, p: &EquivModule, comps: Vec<Matrix>) -> ModuleMorphism {
    crate::catmod::unflatten_morphism(&n.base, &p.base, &flatten_all(comps))
}

/// A finite-dimensional `V ⊆ Hom_C(M, N)` containing `η`, with
/// `η̂: V⊗M → N`, `η̂(X)(w⊗m) = w(X)(m)`.
#[derive(Clone, Debug)]
pub struct FiniteWitness {
    pub v_module: HModule,
    /// Basis of `V` in coordinates of the Hom basis.
    pub v_basis: Matrix,
    /// `η` in the basis of `V`.
    pub v: Vector,
    pub tensor: EquivModule,
    pub hat: ModuleMorphism,
}

pub fn finite_witness(m: &EquivModule, n: &EquivModule, eta: &ModuleMorphism) -> Result<FiniteWitness> {
    let ha = hom_h_action(m, n)?;
    let f = m.field();
    let coords = ha.hom.coordinates(eta).ok_or_else(|| Error::Invalid("not a module morphism M → N".into()))?;
    let v_basis = ha.module.generated_submodule(&Matrix::from_columns(f, ha.hom.dim(), std::slice::from_ref(&coords)));
    let v_module = ha.module.restrict(&v_basis)?;
    let v = solve(&v_basis, &coords)?.expect("η lies in Hη");
    let tensor = tensor_hmod(&v_module, m)?;
    let k = m.dims().len();
    let members: Vec<ModuleMorphism> = (0..v_basis.cols()).map(|b| ha.hom.combine(&v_basis.col(b))).collect();
    let comps = (0..k)
        .map(|x| {
            let blocks: Vec<&Matrix> = members.iter().map(|w| w.component(x)).collect();
            Matrix::hstack(f, n.dims()[x], &blocks)
        })
        .collect();
    let hat = crate::catmod::unflatten_morphism(&tensor.base, &n.base, &flatten_all(comps));
    Ok(FiniteWitness { v_module, v_basis, v, tensor, hat })
}

/// The reverse direction: from `(V, v, η̂)` recover `η(X)(m) = η̂(X)(v⊗m)`
/// and the family `ξ_i(X)(m) = η̂(X)(e_i⊗m)` (flattened columns).
#[derive(Clone, Debug)]
pub struct Extraction {
    pub eta: ModuleMorphism,
    pub family: Matrix,
}

pub fn extract_from_witness(v_dim: usize, v: &[Scalar], hat: &ModuleMorphism, m: &EquivModule, n: &EquivModule) -> Extraction {
    let f = m.field();
    let k = m.dims().len();
    let apply = |w: &[Scalar]| -> ModuleMorphism {
        let wcol = Matrix::from_columns(f, v_dim, &[w.to_vec()]);
        let comps = (0..k).map(|x| hat.component(x).mul(&wcol.kron(&Matrix::identity(f, m.dims()[x])))).collect();
        crate::catmod::unflatten_morphism(&m.base, &n.base, &flatten_all(comps))
    };
    let eta = apply(v);
    let cols: Vec<Vector> = (0..v_dim).map(|i| apply(&crate::exactlin::unit_vector(f, v_dim, i)).flatten()).collect();
    let len = eta.flatten().len();
    Extraction { eta, family: Matrix::from_columns(f, len, &cols) }
}

/// Flattened spanning set of `H·η`.
pub fn orbit_span(eta: &ModuleMorphism, m: &EquivModule, n: &EquivModule) -> Matrix {
    let f = m.field();
    let h = m.hopf();
    let cols: Vec<Vector> = (0..h.dim()).map(|i| act_on_morphism(&h.basis(i), eta, m, n).flatten()).collect();
    Matrix::from_columns(f, eta.flatten().len(), &cols).column_basis()
}

/// Checks both directions of the finite witness for one morphism.
pub fn check_finite_witness(m: &EquivModule, n: &EquivModule, eta: &ModuleMorphism) -> Result<bool> {
    let w = finite_witness(m, n, eta)?;
    let valid = validate_equivariant_morphism(&w.hat, &w.tensor, n).is_empty();
    let back = extract_from_witness(w.v_module.dim(), &w.v, &w.hat, m, n);
    Ok(valid && back.eta == *eta && span_equal(&back.family, &orbit_span(eta, m, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hrep::locally_finite_part;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn fixture_modules_validate() {
        let c = fixtures::c2fix();
        for m in [fixtures::module_t(&c), fixtures::module_r(&c), fixtures::module_sign_t(&c)] {
            assert!(validate_equivariant(&m).is_empty(), "{}", validate_equivariant(&m));
        }
        let r = fixtures::module_r(&c);
        let bad = EquivModule::new(
            c.clone(),
            r.base().clone(),
            vec![HModule::new(c.hopf().clone(), 2, vec![Matrix::identity(q(), 2), Matrix::identity(q(), 2)]).unwrap()],
        )
        .unwrap();
        assert!(validate_equivariant(&bad).mentions("equivariance"));
    }

    #[test]
    fn smash_roundtrip() {
        let c = fixtures::c2fix();
        for m in fixtures::c2fix_modules(&c) {
            let s = to_smash(&m);
            assert!(validate_cat_module(&s).is_empty());
            let back = from_smash(&c, &s).unwrap();
            assert_eq!(back, m);
            assert_eq!(to_smash(&back), s);
        }
        // (x#g) on 1 ∈ R: S⁻¹(g)·(1·x) = g·x = −x
        let r = to_smash(&fixtures::module_r(&c));
        let xg = smash_arrow(2, &crate::exactlin::unit_vector(q(), 2, 1), &crate::exactlin::unit_vector(q(), 2, 1));
        let got = r.apply(0, 0, &xg).apply(&crate::exactlin::unit_vector(q(), 2, 0));
        assert_eq!(got, vec![q().zero(), q().from_i64(-1)]);
    }

    #[test]
    fn hom_actions_on_examples() {
        let c = fixtures::c2fix();
        let t = fixtures::module_t(&c);
        let r = fixtures::module_r(&c);
        let tt = hom_h_action(&t, &t).unwrap();
        assert_eq!(tt.module.dim(), 1);
        assert_eq!(tt.module.action(1), &Matrix::identity(q(), 1));
        let rt = hom_h_action(&r, &t).unwrap();
        assert_eq!(rt.module.dim(), 1);
        assert_eq!(rt.module.action(1), &Matrix::from_ints(q(), 1, 1, &[1]));
        let tr = hom_h_action(&t, &r).unwrap();
        assert_eq!(tr.module.dim(), 1);
        assert_eq!(tr.module.action(1), &Matrix::from_ints(q(), 1, 1, &[-1]));
        assert_eq!(invariants(&tr.module).cols(), 0);
    }

    #[test]
    fn invariants_are_smash_morphisms() {
        let c = fixtures::c2fix();
        let mods = fixtures::c2fix_modules(&c);
        for a in &mods {
            for b in &mods {
                assert!(invariant_hom_equals_smash_hom(a, b).unwrap());
                let ha = hom_h_action(a, b).unwrap();
                assert!(validate_module(&ha.module).is_empty());
                assert_eq!(locally_finite_part(&ha.module).module.dim(), ha.hom.dim());
            }
        }
        let c3 = fixtures::c3();
        let reps: Vec<EquivModule> = (0..2).map(|x| representable_equivariant(&c3, x)).collect();
        for a in &reps {
            for b in &reps {
                assert!(invariant_hom_equals_smash_hom(a, b).unwrap());
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let c = fixtures::c2fix();
        let t = fixtures::module_t(&c);
        let triv = HModule::trivial(c.hopf());
        let tt = tensor_hmod(&triv, &t).unwrap();
        assert_eq!(tt, t);
        let s = fixtures::module_sign_t(&c);
        assert_eq!(s.hmod(0).action(1), &Matrix::from_ints(q(), 1, 1, &[-1]));
        let reg = HModule::regular(c.hopf());
        for m in fixtures::c2fix_modules(&c) {
            for v in [&triv, &reg] {
                assert!(validate_equivariant(&tensor_hmod(v, &m).unwrap()).is_empty());
            }
        }
    }

    #[test]
    fn extension_of_scalars() {
        let c = fixtures::c2fix();
        let mods = fixtures::c2fix_modules(&c);
        for m in &mods {
            let ext = extend_scalars(&c, m.base()).unwrap();
            assert!(validate_cat_module(&ext).is_empty(), "{}", validate_cat_module(&ext));
            assert_eq!(ext.dims(), &[m.dims()[0] * 2]);
            for n in &mods {
                let chk = extend_scalars_adjunction(m.base(), n).unwrap();
                assert!(chk.holds(), "{chk:?}");
            }
        }
        let r = fixtures::module_r(&c);
        let t = fixtures::module_t(&c);
        assert_eq!(extend_scalars_adjunction(r.base(), &t).unwrap().left_dim, 1);
    }

    #[test]
    fn tensor_hom_examples() {
        let c = fixtures::c2fix();
        let h = c.hopf();
        let t = fixtures::module_t(&c);
        let sign = HModule::character(h, &[q().one(), q().from_i64(-1)]).unwrap();
        let chk = tensor_hom_adjunction(&sign, &t, &t).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.left_dim, 0);
        let chk = tensor_hom_adjunction(&HModule::regular(h), &t, &t).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.left_dim, 1);
        let triv = HModule::trivial(h);
        for n in fixtures::c2fix_modules(&c) {
            for p in fixtures::c2fix_modules(&c) {
                let chk = tensor_hom_adjunction(&triv, &n, &p).unwrap();
                assert!(chk.holds());
                assert_eq!(chk.left_dim, smash_hom_basis(&n, &p).unwrap().dim());
            }
        }
    }

    #[test]
    fn witnesses() {
        let c = fixtures::c2fix();
        let t = fixtures::module_t(&c);
        let r = fixtures::module_r(&c);
        let id = ModuleMorphism::identity(t.base());
        let w = finite_witness(&t, &t, &id).unwrap();
        assert_eq!(w.v_module.dim(), 1);
        assert!(check_finite_witness(&t, &t, &id).unwrap());
        let soc = hom_h_action(&t, &r).unwrap().hom.morphism(0);
        let w = finite_witness(&t, &r, &soc).unwrap();
        assert_eq!(w.v_module.dim(), 1);
        assert_eq!(w.v_module.action(1), &Matrix::from_ints(q(), 1, 1, &[-1]));
        assert!(check_finite_witness(&t, &r, &soc).unwrap());
        let z = ModuleMorphism::zero(r.base(), t.base());
        let w = finite_witness(&r, &t, &z).unwrap();
        assert_eq!(w.v_module.dim(), 0);
        assert!(check_finite_witness(&r, &t, &z).unwrap());
    }

    #[test]
    fn postcomposition_is_h_linear() {
        let c = fixtures::c2fix();
        let mods = fixtures::c2fix_modules(&c);
        for m in &mods {
            for n in &mods {
                for n2 in &mods {
                    let nus = smash_hom_basis(n, n2).unwrap();
                    let src = hom_h_action(m, n).unwrap();
                    let dst = hom_h_action(m, n2).unwrap();
                    for nu in nus.morphisms() {
                        let cols: Vec<Vector> = src
                            .hom
                            .morphisms()
                            .iter()
                            .map(|eta| dst.hom.coordinates(&nu.after(eta)).unwrap())
                            .collect();
                        let post = Matrix::from_columns(q(), dst.hom.dim(), &cols);
                        for i in 0..2 {
                            assert_eq!(dst.module.action(i).mul(&post), post.mul(src.module.action(i)));
                        }
                    }
                }
            }
        }
    }
}
