//! Relative Hopf modules over a co-H-category: left modules with a
//! comodule structure on every carrier.

use std::sync::Arc;

use crate::catmod::{
    direct_sum, generators, module_hom_basis, representable, submodule, validate_cat_module, validate_morphism,
    CatModule, HomSpace, ModuleMorphism, Side,
};
use crate::equivariant::{smash_hom_basis, EquivModule};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, solve, span_contains, span_equal, unit_vector, Field, Matrix, Scalar, Vector};
use crate::hcat::{dualize_coh_category, CoHCategory, HCategory};
use crate::hopf::{dual_hopf, HopfAlgebra};
use crate::hrep::{
    coinvariants, comodule_to_dual_module, dual_module_to_comodule, flatten_map, h_linear_maps, tensor_comodules,
    unflatten_map, validate_comodule, validate_module, HComodule, HModule,
};
use crate::report::Report;

/// A left `D`-module with comodules on the carriers, subject to
/// `ρ(M(f)(m)) = Σ M(f₀)(m₀) ⊗ f₁m₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelHopfModule {
    dcat: Arc<CoHCategory>,
    base: CatModule,
    hcomod: Vec<HComodule>,
}

impl RelHopfModule {
    /// Checks shapes only; see [`validate_relhopf`].
    pub fn new(dcat: Arc<CoHCategory>, base: CatModule, hcomod: Vec<HComodule>) -> Result<RelHopfModule> {
        if base.side() != Side::Left || base.category() != &**dcat.base() {
            return Err(Error::Invalid("relative Hopf modules are left modules over the co-H-category".into()));
        }
        if hcomod.len() != base.num_objects()
            || hcomod.iter().zip(base.dims()).any(|(h, &d)| h.dim() != d || **h.hopf() != **dcat.hopf())
        {
            return Err(Error::Dimension("one comodule per object, on the same carrier".into()));
        }
        let base = CatModule::from_covariant(dcat.cats().clone(), Side::Left, base.dims().to_vec(), base.cov_maps().to_vec())?;
        Ok(RelHopfModule { dcat, base, hcomod })
    }

    pub fn dcat(&self) -> &Arc<CoHCategory> {
        &self.dcat
    }
    pub fn base(&self) -> &CatModule {
        &self.base
    }
    pub fn hcomod(&self, x: usize) -> &HComodule {
        &self.hcomod[x]
    }
    pub fn hcomods(&self) -> &[HComodule] {
        &self.hcomod
    }
    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.dcat.hopf()
    }
    pub fn field(&self) -> Field {
        self.base.field()
    }
    pub fn dims(&self) -> &[usize] {
        self.base.dims()
    }
}

/// Module and comodule laws of the parts plus the relative Hopf condition.
pub fn validate_relhopf(m: &RelHopfModule) -> Report {
    let mut r = validate_cat_module(&m.base);
    for (x, c) in m.hcomod.iter().enumerate() {
        r.extend(validate_comodule(c).prefixed(&format!("object {}", m.base.category().objects()[x])));
    }
    if !r.is_empty() {
        return r;
    }
    let d = &m.dcat;
    let c = d.base();
    let h = m.hopf();
    let n = c.num_objects();
    let rho: Vec<Vec<Matrix>> = m.hcomod.iter().map(HComodule::coefficient_maps).collect();
    for x in 0..n {
        for y in 0..n {
            let rf = d.hom_comodule(x, y).coefficient_maps();
            for a in 0..c.hom_dim(x, y) {
                let ma = m.base.map(x, y, a);
                for k in 0..h.dim() {
                    let lhs = rho[y][k].mul(ma);
                    let mut rhs = Matrix::zeros(m.field(), m.dims()[y], m.dims()[x]);
                    for i in 0..h.dim() {
                        let fi = rf[i].col(a);
                        if fi.iter().all(Scalar::is_zero) {
                            continue;
                        }
                        let mfi = m.base.apply(x, y, &fi);
                        for j in 0..h.dim() {
                            let coef = &h.mul_basis(i, j)[k];
                            if !coef.is_zero() {
                                rhs.add_scaled(coef, &mfi.mul(&rho[x][j]));
                            }
                        }
                    }
                    r.check(lhs == rhs, "relative Hopf condition", || {
                        format!("ρ(M({})(m)) != Σ M(f₀)(m₀)⊗f₁m₁ in component {}", c.hom_labels(x, y)[a], h.labels()[k])
                    });
                }
            }
        }
    }
    r
}

/// Naturality plus colinearity of every component.
pub fn validate_relhopf_morphism(eta: &ModuleMorphism, m: &RelHopfModule, n: &RelHopfModule) -> Report {
    let mut r = validate_morphism(eta);
    for x in 0..m.dims().len() {
        let ok = n.hcomod[x].coaction().mul(eta.component(x))
            == eta.component(x).kron(&Matrix::identity(m.field(), m.hopf().dim())).mul(m.hcomod[x].coaction());
        r.check(ok, "colinearity", || format!("component at {} is not colinear", m.base.category().objects()[x]));
    }
    r
}

/// `_Xh = Hom(X, −)` with the comodules of the hom spaces.
pub fn representable_relhopf(dcat: &Arc<CoHCategory>, x: usize) -> RelHopfModule {
    let base = representable(dcat.cats(), x, Side::Left);
    let hcomod = (0..base.num_objects()).map(|y| dcat.hom_comodule(x, y)).collect();
    RelHopfModule { dcat: dcat.clone(), base, hcomod }
}

/// `N ⊗ W` with `N(f)` on the first factor; carrier index `a·dim W + b`.
pub fn tensor_comod(n: &RelHopfModule, w: &HComodule) -> Result<RelHopfModule> {
    let f = n.field();
    let id = Matrix::identity(f, w.dim());
    let cov = n.base.cov_maps().iter().map(|list| list.iter().map(|m| m.kron(&id)).collect()).collect();
    let dims = n.dims().iter().map(|d| d * w.dim()).collect();
    let base = CatModule::from_covariant(n.base.cats().clone(), Side::Left, dims, cov)?;
    let hcomod = n.hcomod.iter().map(|c| tensor_comodules(c, w)).collect::<Result<Vec<_>>>()?;
    Ok(RelHopfModule { dcat: n.dcat.clone(), base, hcomod })
}

pub fn relhopf_direct_sum(dcat: &Arc<CoHCategory>, summands: &[&RelHopfModule]) -> Result<RelHopfModule> {
    let bases: Vec<&CatModule> = summands.iter().map(|s| &s.base).collect();
    let sum = direct_sum(dcat.cats(), Side::Left, &bases)?;
    let h = dcat.hopf();
    let f = dcat.base().field();
    let hcomod = (0..sum.module.num_objects())
        .map(|x| {
            let maps: Vec<Matrix> = (0..h.dim())
                .map(|i| {
                    let blocks: Vec<Matrix> = summands.iter().map(|s| s.hcomod[x].coefficient_map(i)).collect();
                    let refs: Vec<&Matrix> = blocks.iter().collect();
                    Matrix::block_diag(f, &refs)
                })
                .collect();
            HComodule::from_coefficient_maps(h.clone(), sum.module.dim(x), &maps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelHopfModule { dcat: dcat.clone(), base: sum.module, hcomod })
}

/// Colinearity residual of a flattened morphism, for the joint system.
fn colinearity_residual(m: &RelHopfModule, n: &RelHopfModule, eta: &ModuleMorphism) -> Vector {
    let f = m.field();
    let nh = m.hopf().dim();
    let mut out = Vec::new();
    for x in 0..m.dims().len() {
        let lhs = n.hcomod[x].coaction().mul(eta.component(x));
        let rhs = eta.component(x).kron(&Matrix::identity(f, nh)).mul(m.hcomod[x].coaction());
        out.extend(flatten_map(&lhs.sub(&rhs)));
    }
    out
}

/// `Hom` in relative Hopf modules: `D`-linear maps that are colinear.
pub fn relhopf_hom_basis(m: &RelHopfModule, n: &RelHopfModule) -> Result<HomSpace> {
    let hom = module_hom_basis(&m.base, &n.base)?;
    let f = m.field();
    let len: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b * m.hopf().dim()).sum();
    let cols: Vec<Vector> = hom.morphisms().iter().map(|eta| colinearity_residual(m, n, eta)).collect();
    let coords = kernel_basis(&Matrix::from_columns(f, len, &cols));
    Ok(HomSpace { source: m.base.clone(), target: n.base.clone(), basis: hom.basis.mul(&coords) })
}

/// Coefficient maps `η ↦ η_k`, with
/// `η_k(X) = Σ_{i,j} [S⁻¹(e_i)e_j]_k ρ^N_j η(X) ρ^M_i`.
fn hom_coefficient(m: &RelHopfModule, n: &RelHopfModule, eta: &ModuleMorphism, weights: &dyn Fn(usize, usize) -> Scalar) -> ModuleMorphism {
    let h = m.hopf();
    let f = m.field();
    let comps = (0..m.dims().len())
        .map(|x| {
            let mut out = Matrix::zeros(f, n.dims()[x], m.dims()[x]);
            let rm = m.hcomod[x].coefficient_maps();
            let rn = n.hcomod[x].coefficient_maps();
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    let w = weights(i, j);
                    if !w.is_zero() {
                        out.add_scaled(&w, &rn[j].mul(eta.component(x)).mul(&rm[i]));
                    }
                }
            }
            out
        })
        .collect();
    eta.with_components(comps)
}

/// `Hom_{D-Mod}(M, N)` with its coaction and the induced `H*`-action.
#[derive(Clone, Debug)]
pub struct RationalHom {
    pub hom: HomSpace,
    pub comodule: HComodule,
    /// The action of `H*` computed directly from the pairing formula.
    pub dual_action: HModule,
    /// Certifying epimorphism `⊕ (_{X_i}h ⊗ W_i) → M`.
    pub generators: RelGenerators,
}

pub fn rational_hom(m: &RelHopfModule, n: &RelHopfModule) -> Result<RationalHom> {
    let hom = module_hom_basis(&m.base, &n.base)?;
    let h = m.hopf();
    let f = m.field();
    let sinv_prod = |i: usize, j: usize| h.mul(&h.antipode_inv().col(i), &h.basis(j));
    let morphisms = hom.morphisms();
    let mut maps = Vec::with_capacity(h.dim());
    for k in 0..h.dim() {
        let w = |i: usize, j: usize| sinv_prod(i, j)[k].clone();
        let cols: Vec<Vector> = morphisms.iter().map(|eta| hom_coefficient(m, n, eta, &w).flatten()).collect();
        let moved = Matrix::from_columns(f, hom.ambient_dim(), &cols);
        maps.push(
            crate::exactlin::solve_matrix(&hom.basis, &moved)?
                .ok_or_else(|| Error::Invalid("coaction leaves the Hom space".into()))?,
        );
    }
    let comodule = HComodule::from_coefficient_maps(h.clone(), hom.dim(), &maps)?;
    let dual = Arc::new(dual_hopf(h));
    let mut acts = Vec::with_capacity(h.dim());
    for k in 0..dual.dim() {
        // h* = e_k*, evaluated on S⁻¹(m₁)(η(m₀))₁
        let functional = unit_vector(f, h.dim(), k);
        let w = |i: usize, j: usize| {
            sinv_prod(i, j).iter().zip(&functional).fold(f.zero(), |acc, (a, b)| acc + a * b)
        };
        let cols: Vec<Vector> = morphisms.iter().map(|eta| hom_coefficient(m, n, eta, &w).flatten()).collect();
        let moved = Matrix::from_columns(f, hom.ambient_dim(), &cols);
        acts.push(
            crate::exactlin::solve_matrix(&hom.basis, &moved)?
                .ok_or_else(|| Error::Invalid("H*-action leaves the Hom space".into()))?,
        );
    }
    let dual_action = HModule::new(dual, hom.dim(), acts)?;
    let generators = relhopf_generators(m)?;
    Ok(RationalHom { hom, comodule, dual_action, generators })
}

/// Everything asserted about a rational Hom.
#[derive(Clone, Debug)]
pub struct RationalHomCheck {
    pub comodule_laws: Report,
    pub dual_action_laws: Report,
    /// The `H*`-action equals the one induced by the coaction.
    pub action_matches: bool,
    /// Coinvariants equal the relative Hopf morphisms as subspaces.
    pub coinvariants_match: bool,
    /// The generator map is a pointwise epimorphism of comodules.
    pub epi_certified: bool,
    /// Adjunction bijections against the trivial comodule and each grouplike line.
    pub adjunctions: Vec<crate::equivariant::AdjunctionCheck>,
}

impl RationalHomCheck {
    pub fn holds(&self) -> bool {
        self.comodule_laws.is_empty()
            && self.dual_action_laws.is_empty()
            && self.action_matches
            && self.coinvariants_match
            && self.epi_certified
            && self.adjunctions.iter().all(|a| a.holds())
    }
}

pub fn check_rational_hom(m: &RelHopfModule, n: &RelHopfModule) -> Result<RationalHomCheck> {
    let rh = rational_hom(m, n)?;
    let induced = comodule_to_dual_module(&rh.comodule, rh.dual_action.hopf())?;
    let coinv = rh.hom.basis.mul(&coinvariants(&rh.comodule));
    let direct = relhopf_hom_basis(m, n)?;
    let g = &rh.generators;
    let epi_certified = validate_relhopf_morphism(&g.epi, &g.module, m).is_empty()
        && g.epi.components().iter().zip(m.dims()).all(|(c, &d)| c.rank() == d);
    let h = m.hopf();
    let mut testers = vec![HComodule::trivial(h, 1)];
    for i in 0..h.dim() {
        if h.is_grouplike(i) && Some(i) != h.unit_index() {
            testers.push(HComodule::grouplike_line(h, i));
        }
    }
    let adjunctions = testers.iter().map(|w| hom_adjunction(m, w, n)).collect::<Result<Vec<_>>>()?;
    Ok(RationalHomCheck {
        comodule_laws: validate_comodule(&rh.comodule),
        dual_action_laws: validate_module(&rh.dual_action),
        action_matches: induced.actions() == rh.dual_action.actions(),
        coinvariants_match: span_equal(&coinv, &direct.basis),
        epi_certified,
        adjunctions,
    })
}

/// `Hom(N⊗W, P) ≅ Hom_{Comod-H}(W, HOM(N, P))` with `φ(η)(w)(X)(n) = η(X)(n⊗w)`.
pub fn hom_adjunction(n: &RelHopfModule, w: &HComodule, p: &RelHopfModule) -> Result<crate::equivariant::AdjunctionCheck> {
    let f = n.field();
    let nw = tensor_comod(n, w)?;
    let left = relhopf_hom_basis(&nw, p)?;
    let rh = rational_hom(n, p)?;
    let dual = rh.dual_action.hopf().clone();
    let right = h_linear_maps(&comodule_to_dual_module(w, &dual)?, &comodule_to_dual_module(&rh.comodule, &dual)?)?;
    let k = n.dims().len();
    let dw = w.dim();
    let dh = rh.hom.dim();
    let phi = |eta: &ModuleMorphism| -> Option<Vector> {
        let mut cols = Vec::with_capacity(dw);
        for b in 0..dw {
            let comps: Vec<Matrix> = (0..k)
                .map(|x| {
                    let sel: Vec<usize> = (0..n.dims()[x]).map(|a| a * dw + b).collect();
                    eta.component(x).select_columns(&sel)
                })
                .collect();
            let flat: Vector = comps.iter().flat_map(flatten_map).collect();
            cols.push(solve(&rh.hom.basis, &flat).expect("length")?);
        }
        Some(flatten_map(&Matrix::from_columns(f, dh, &cols)))
    };
    let nu = |flat: &[Scalar]| -> ModuleMorphism {
        let fmat = unflatten_map(f, dh, dw, flat);
        let members: Vec<ModuleMorphism> = (0..dw).map(|b| rh.hom.combine(&fmat.col(b))).collect();
        let comps: Vec<Matrix> = (0..k)
            .map(|x| {
                let mut out = Matrix::zeros(f, p.dims()[x], n.dims()[x] * dw);
                for (b, mem) in members.iter().enumerate() {
                    for a in 0..n.dims()[x] {
                        for r in 0..p.dims()[x] {
                            out[(r, a * dw + b)] = mem.component(x)[(r, a)].clone();
                        }
                    }
                }
                out
            })
            .collect();
        let flat: Vector = comps.iter().flat_map(flatten_map).collect();
        crate::catmod::unflatten_morphism(&nw.base, &p.base, &flat)
    };
    let mut images_valid = true;
    let mut left_roundtrip = true;
    let mut right_roundtrip = true;
    for eta in left.morphisms() {
        match phi(&eta) {
            Some(fl) => {
                images_valid &= span_contains(&right, &Matrix::from_columns(f, dh * dw, std::slice::from_ref(&fl)));
                left_roundtrip &= nu(&fl) == eta;
            }
            None => images_valid = false,
        }
    }
    for col in 0..right.cols() {
        let fl = right.col(col);
        let eta = nu(&fl);
        images_valid &= validate_relhopf_morphism(&eta, &nw, p).is_empty();
        right_roundtrip &= phi(&eta).as_deref() == Some(&fl[..]);
    }
    Ok(crate::equivariant::AdjunctionCheck {
        left_dim: left.dim(),
        right_dim: right.cols(),
        images_valid,
        left_roundtrip,
        right_roundtrip,
    })
}

/// `W_m` (the smallest subcomodule containing `m`) and
/// `η_m: _Xh ⊗ W_m → M`, `η_m(Y)(f⊗w) = M(f)(w)`.
#[derive(Clone, Debug)]
pub struct GeneratorWitness {
    pub w: HComodule,
    /// Basis of `W_m` inside `M(X)`.
    pub w_basis: Matrix,
    pub tensor: RelHopfModule,
    pub eta: ModuleMorphism,
}

pub fn generator_witness(m: &RelHopfModule, x: usize, elem: &[Scalar]) -> Result<GeneratorWitness> {
    let f = m.field();
    let w_basis = m.hcomod[x].closed_span(&Matrix::from_columns(f, m.dims()[x], &[elem.to_vec()]));
    let w = m.hcomod[x].restrict(&w_basis)?;
    let rep = representable_relhopf(&m.dcat, x);
    let tensor = tensor_comod(&rep, &w)?;
    let c = m.base.covariant();
    let comps: Vec<Matrix> = (0..m.dims().len())
        .map(|y| {
            let mut cols = Vec::new();
            for a in 0..c.hom_dim(x, y) {
                let ma = m.base.cov_map(x, y, a);
                for b in 0..w_basis.cols() {
                    cols.push(ma.apply(&w_basis.col(b)));
                }
            }
            Matrix::from_columns(f, m.dims()[y], &cols)
        })
        .collect();
    let flat: Vector = comps.iter().flat_map(flatten_map).collect();
    let eta = crate::catmod::unflatten_morphism(&tensor.base, &m.base, &flat);
    Ok(GeneratorWitness { w, w_basis, tensor, eta })
}

/// `⊕_i (_{X_i}h ⊗ W_i) → M` over the base generators of `M`.
#[derive(Clone, Debug)]
pub struct RelGenerators {
    pub pieces: Vec<(usize, Matrix)>,
    pub module: RelHopfModule,
    pub epi: ModuleMorphism,
}

pub fn relhopf_generators(m: &RelHopfModule) -> Result<RelGenerators> {
    let gens = generators(&m.base);
    let witnesses = gens
        .elements
        .iter()
        .map(|(x, v)| generator_witness(m, *x, v))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&RelHopfModule> = witnesses.iter().map(|w| &w.tensor).collect();
    let module = relhopf_direct_sum(&m.dcat, &refs)?;
    let f = m.field();
    let comps = (0..m.dims().len())
        .map(|y| {
            let blocks: Vec<&Matrix> = witnesses.iter().map(|w| w.eta.component(y)).collect();
            Matrix::hstack(f, m.dims()[y], &blocks)
        })
        .collect();
    let epi = ModuleMorphism::new(module.base.clone(), m.base.clone(), comps)?;
    let pieces = gens.elements.iter().zip(&witnesses).map(|((x, _), w)| (*x, w.w_basis.clone())).collect();
    Ok(RelGenerators { pieces, module, epi })
}

pub fn relhopf_submodule(m: &RelHopfModule, bases: Vec<Matrix>) -> Result<(RelHopfModule, ModuleMorphism)> {
    let hcomod = m.hcomod.iter().zip(&bases).map(|(c, b)| c.restrict(b)).collect::<Result<Vec<_>>>()?;
    let k = submodule(&m.base, bases)?;
    Ok((RelHopfModule { dcat: m.dcat.clone(), base: k.module, hcomod }, k.inclusion))
}

pub fn relhopf_kernel(eta: &ModuleMorphism, m: &RelHopfModule) -> Result<(RelHopfModule, ModuleMorphism)> {
    relhopf_submodule(m, eta.components().iter().map(kernel_basis).collect())
}

/// `D^op` as an `(H*)^cop`-category, `e_i*` acting on `hom(Y, X)` by `ρ_i`.
pub fn dual_smash_category(d: &CoHCategory) -> Arc<HCategory> {
    Arc::new(dualize_coh_category(d).opposite_cop())
}

/// A relative Hopf module as an equivariant right module over `D^op`, with
/// `e_i*` acting by `ρ_i`.
pub fn to_dual_smash(m: &RelHopfModule, opcat: &Arc<HCategory>) -> Result<EquivModule> {
    let base = CatModule::from_covariant(opcat.cats().clone(), Side::Right, m.dims().to_vec(), m.base.cov_maps().to_vec())?;
    let hmod = m
        .hcomod
        .iter()
        .map(|c| HModule::new(opcat.hopf().clone(), c.dim(), c.coefficient_maps()))
        .collect::<Result<Vec<_>>>()?;
    EquivModule::new(opcat.clone(), base, hmod)
}

/// Inverse of [`to_dual_smash`].
pub fn from_dual_smash(dcat: &Arc<CoHCategory>, e: &EquivModule) -> Result<RelHopfModule> {
    let base = CatModule::from_covariant(dcat.cats().clone(), Side::Left, e.dims().to_vec(), e.base().cov_maps().to_vec())?;
    let hcomod = e
        .hmods()
        .iter()
        .map(|h| dual_module_to_comodule(h, dcat.hopf()))
        .collect::<Result<Vec<_>>>()?;
    RelHopfModule::new(dcat.clone(), base, hcomod)
}

/// Relative Hopf morphisms through the dual-smash route, checked against
/// the direct solver as subspaces.
pub fn dual_smash_hom_basis(m: &RelHopfModule, n: &RelHopfModule, opcat: &Arc<HCategory>) -> Result<HomSpace> {
    let hom = smash_hom_basis(&to_dual_smash(m, opcat)?, &to_dual_smash(n, opcat)?)?;
    let direct = relhopf_hom_basis(m, n)?;
    if !span_equal(&hom.basis, &direct.basis) {
        return Err(Error::CrossCheck(format!(
            "dual-smash Hom has dimension {} but the colinear solver finds {}",
            hom.dim(),
            direct.dim()
        )));
    }
    Ok(direct)
}
