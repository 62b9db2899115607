//! Free and injective resolutions, Hom complexes and Ext groups, with the
//! `H`-module or `H`-comodule structure carried through when the inputs
//! have one.

use std::fmt;
use std::sync::Arc;

use crate::catmod::{
    extend_along, factor_through, generated_spans, generators, is_exact_at, kernel, module_hom_basis, representable,
    submodule, validate_cat_module, CatModule, CategoryPair, HomSpace, ModuleMorphism, Side,
};
use crate::equivariant::{
    equivariant_direct_sum, equivariant_kernel, from_smash, hom_h_action, representable_equivariant, tensor_hmod,
    to_smash, EquivModule,
};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, span_equal, subquotient, unit_vector, Field, Matrix, Subquotient, Vector};
use crate::hcat::LinCategory;
use crate::hopf::{dual_hopf, HopfAlgebra};
use crate::hrep::{coinvariants, comodule_to_dual_module, invariants, HComodule, HModule};
use crate::relhopf::{
    dual_smash_category, dual_smash_hom_basis, from_dual_smash, rational_hom, relhopf_generators, relhopf_kernel,
    to_dual_smash, RelHopfModule,
};
use crate::report::Report;

/// Where a computation takes place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    /// Right modules over an `H`-category.
    ModC,
    /// Right modules over its smash product.
    SmashModC,
    /// Left modules over a co-`H`-category.
    DMod,
    /// Relative Hopf modules.
    RelHopf,
    HMod,
    ComodH,
}

impl Context {
    pub const ALL: [Context; 6] =
        [Context::ModC, Context::SmashModC, Context::DMod, Context::RelHopf, Context::HMod, Context::ComodH];

    pub fn tag(self) -> &'static str {
        match self {
            Context::ModC => "Mod-C",
            Context::SmashModC => "Mod-C#H",
            Context::DMod => "D-Mod",
            Context::RelHopf => "DM^H",
            Context::HMod => "H-Mod",
            Context::ComodH => "Comod-H",
        }
    }

    pub fn parse(tag: &str) -> Option<Context> {
        Context::ALL.into_iter().find(|c| c.tag() == tag)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    Free,
    Injective,
}

/// A resolution truncated after `terms.len() - 1` steps.
///
/// Free: `differentials[i]: P_{i+1} → P_i` and `augmentation: P_0 → M`.
/// Injective: `differentials[i]: E^i → E^{i+1}` and `augmentation: M → E^0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub context: Context,
    pub kind: ResolutionKind,
    pub module: CatModule,
    pub terms: Vec<CatModule>,
    pub differentials: Vec<ModuleMorphism>,
    pub augmentation: ModuleMorphism,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(CatModule::is_zero)
    }

    /// Total dimension of each term.
    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(CatModule::total_dim).collect()
    }
}

/// `d∘d = 0`, exactness at every internal term and at the augmentation, all
/// by rank counts.
pub fn verify_resolution(r: &Resolution) -> Report {
    let mut rep = Report::new();
    for (i, t) in r.terms.iter().enumerate() {
        rep.extend(validate_cat_module(t).prefixed(&format!("term {i}")));
    }
    let d = &r.differentials;
    match r.kind {
        ResolutionKind::Free => {
            let onto = r.augmentation.components().iter().zip(r.module.dims()).all(|(c, &n)| c.rank() == n);
            rep.check(onto, "augmentation", || "P_0 → M is not onto".into());
            if let Some(d0) = d.first() {
                rep.check(is_exact_at(d0, &r.augmentation), "exactness", || "not exact at P_0".into());
            }
            for i in 1..d.len() {
                rep.check(d[i - 1].after(&d[i]).is_zero(), "d∘d", || format!("d∘d != 0 at P_{i}"));
                rep.check(is_exact_at(&d[i], &d[i - 1]), "exactness", || format!("not exact at P_{i}"));
            }
        }
        ResolutionKind::Injective => {
            let into = r.augmentation.components().iter().zip(r.module.dims()).all(|(c, &n)| c.rank() == n);
            rep.check(into, "augmentation", || "M → E^0 is not injective".into());
            if let Some(d0) = d.first() {
                rep.check(is_exact_at(&r.augmentation, d0), "exactness", || "not exact at E^0".into());
            }
            for i in 1..d.len() {
                rep.check(d[i].after(&d[i - 1]).is_zero(), "d∘d", || format!("d∘d != 0 at E^{i}"));
                rep.check(is_exact_at(&d[i - 1], &d[i]), "exactness", || format!("not exact at E^{i}"));
            }
        }
    }
    rep
}

/// `M` itself when it is projective, otherwise the free module on its
/// generators.
fn cover(m: &CatModule) -> Result<(CatModule, ModuleMorphism)> {
    let g = generators(m);
    let id = ModuleMorphism::identity(m);
    if factor_through(&id, &g.epi)?.is_some() {
        return Ok((m.clone(), id));
    }
    Ok((g.free.module, g.epi))
}

/// Generators and representables, iterated on kernels; a projective
/// kernel ends the resolution.
pub fn free_resolution(m: &CatModule, context: Context, len: usize) -> Result<Resolution> {
    let (p0, aug) = cover(m)?;
    let mut terms = vec![p0];
    let mut differentials = Vec::with_capacity(len);
    let mut prev = aug.clone();
    for _ in 0..len {
        let k = kernel(&prev);
        let (p, eps) = cover(&k.module)?;
        let d = k.inclusion.after(&eps);
        terms.push(p);
        differentials.push(d.clone());
        prev = d;
    }
    Ok(Resolution { context, kind: ResolutionKind::Free, module: m.clone(), terms, differentials, augmentation: aug })
}

/// The dual of a free resolution of the dual module.
pub fn injective_resolution(m: &CatModule, context: Context, len: usize) -> Result<Resolution> {
    let free = free_resolution(&m.dual(), context, len)?;
    Ok(Resolution {
        context,
        kind: ResolutionKind::Injective,
        module: m.clone(),
        terms: free.terms.iter().map(CatModule::dual).collect(),
        differentials: free.differentials.iter().map(ModuleMorphism::dual).collect(),
        augmentation: free.augmentation.dual(),
    })
}

/// Inclusions of cyclic submodules of representables, generated by basis
/// vectors and by sums and differences of two of them.
pub fn lifting_panel(cats: &Arc<CategoryPair>, side: Side) -> Vec<ModuleMorphism> {
    let c = cats.covariant(side);
    let f = c.field();
    let mut panel: Vec<ModuleMorphism> = Vec::new();
    for x in 0..c.num_objects() {
        let rep = representable(cats, x, side);
        for y in 0..c.num_objects() {
            let d = rep.dim(y);
            let mut candidates: Vec<Vector> = (0..d).map(|i| unit_vector(f, d, i)).collect();
            for i in 0..d {
                for j in i + 1..d {
                    let (a, b) = (unit_vector(f, d, i), unit_vector(f, d, j));
                    candidates.push(a.iter().zip(&b).map(|(p, q)| p + q).collect());
                    candidates.push(a.iter().zip(&b).map(|(p, q)| p - q).collect());
                }
            }
            for v in candidates {
                let spans = generated_spans(&rep, &[(y, v)]);
                if spans.iter().zip(rep.dims()).all(|(s, &n)| s.cols() == n) {
                    continue;
                }
                let seen = panel.iter().any(|p| {
                    p.target() == &rep && p.components().iter().zip(&spans).all(|(a, b)| span_equal(a, b))
                });
                if !seen {
                    panel.push(submodule(&rep, spans).expect("generated spans are closed").inclusion);
                }
            }
        }
    }
    panel
}

/// Every map from the source of a panel inclusion extends along it.
pub fn passes_lifting_test(i: &CatModule, panel: &[ModuleMorphism]) -> Result<bool> {
    for iota in panel {
        let hom = module_hom_basis(iota.source(), i)?;
        for eta in hom.morphisms() {
            if extend_along(&eta, iota)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cochain complex of vector spaces; `structure[i]` holds action matrices
/// (or coefficient maps) on term `i` commuting with the differentials, or is
/// empty.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    pub field: Field,
    pub dims: Vec<usize>,
    /// `differentials[i]: C^i → C^{i+1}`.
    pub differentials: Vec<Matrix>,
    pub structure: Vec<Vec<Matrix>>,
}

impl CochainComplex {
    fn outgoing(&self, q: usize) -> Matrix {
        match self.differentials.get(q) {
            Some(d) => d.clone(),
            None => Matrix::zeros(self.field, 0, self.dims[q]),
        }
    }

    fn incoming(&self, q: usize) -> Matrix {
        if q == 0 {
            Matrix::zeros(self.field, self.dims[0], 0)
        } else {
            self.differentials[q - 1].clone()
        }
    }

    pub fn cohomology(&self, q: usize) -> Subquotient {
        subquotient(&kernel_basis(&self.outgoing(q)), &self.incoming(q)).expect("d∘d = 0 was verified")
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|q| self.cohomology(q).dim).collect()
    }

    /// The structure maps induced on `H^q`.
    pub fn induced(&self, q: usize) -> Vec<Matrix> {
        let sq = self.cohomology(q);
        self.structure[q]
            .iter()
            .map(|a| sq.coordinates_matrix(&a.mul(&sq.reps)).expect("structure preserves cycles"))
            .collect()
    }
}

pub fn verify_complex(c: &CochainComplex) -> Report {
    let mut r = Report::new();
    for q in 1..c.differentials.len() {
        r.check(c.differentials[q].mul(&c.differentials[q - 1]).is_zero(), "d∘d", || format!("d∘d != 0 at C^{q}"));
    }
    for (q, d) in c.differentials.iter().enumerate() {
        let (a, b) = (&c.structure[q], &c.structure[q + 1]);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let ok = a.iter().zip(b).all(|(s, t)| t.mul(d) == d.mul(s));
        r.check(ok, "structure", || format!("d^{q} does not commute with the structure maps"));
    }
    r
}

fn coordinates_column(space: &HomSpace, eta: &ModuleMorphism) -> Result<Vector> {
    space.coordinates(eta).ok_or_else(|| Error::Inconsistent("composite left the Hom space".into()))
}

/// `Hom(P_•, N)` from a free resolution and the Hom spaces of its terms.
pub fn hom_complex_free(r: &Resolution, spaces: Vec<(HomSpace, Vec<Matrix>)>) -> Result<CochainComplex> {
    let f = r.module.field();
    let mut differentials = Vec::with_capacity(r.differentials.len());
    for (i, d) in r.differentials.iter().enumerate() {
        let cols = spaces[i].0.morphisms().iter().map(|eta| coordinates_column(&spaces[i + 1].0, &eta.after(d))).collect::<Result<Vec<_>>>()?;
        differentials.push(Matrix::from_columns(f, spaces[i + 1].0.dim(), &cols));
    }
    Ok(CochainComplex {
        field: f,
        dims: spaces.iter().map(|s| s.0.dim()).collect(),
        differentials,
        structure: spaces.into_iter().map(|s| s.1).collect(),
    })
}

/// `Hom(M, E^•)` from an injective resolution and the Hom spaces of its terms.
pub fn hom_complex_injective(r: &Resolution, spaces: Vec<(HomSpace, Vec<Matrix>)>) -> Result<CochainComplex> {
    let f = r.module.field();
    let mut differentials = Vec::with_capacity(r.differentials.len());
    for (i, d) in r.differentials.iter().enumerate() {
        let cols = spaces[i].0.morphisms().iter().map(|eta| coordinates_column(&spaces[i + 1].0, &d.after(eta))).collect::<Result<Vec<_>>>()?;
        differentials.push(Matrix::from_columns(f, spaces[i + 1].0.dim(), &cols));
    }
    Ok(CochainComplex {
        field: f,
        dims: spaces.iter().map(|s| s.0.dim()).collect(),
        differentials,
        structure: spaces.into_iter().map(|s| s.1).collect(),
    })
}

/// Extra structure on Ext groups.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtStructure {
    Plain,
    Modules(Vec<HModule>),
    Comodules(Vec<HComodule>),
}

/// `Ext^0..Ext^n`, computed from a free resolution of the source and an
/// injective resolution of the target.
#[derive(Clone, Debug)]
pub struct ExtGroups {
    pub context: Context,
    pub degree: usize,
    pub dims: Vec<usize>,
    pub injective_dims: Vec<usize>,
    /// From the free route.
    pub structure: ExtStructure,
    /// Dimensions of the (co)invariants of each `Ext^q`, one list per route.
    pub fixed_dims: Option<(Vec<usize>, Vec<usize>)>,
    pub free_complex: CochainComplex,
    pub injective_complex: CochainComplex,
}

fn compare_routes(context: Context, free: &CochainComplex, inj: &CochainComplex, degree: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    for (name, c) in [("free", free), ("injective", inj)] {
        let r = verify_complex(c);
        if !r.is_empty() {
            return Err(Error::Inconsistent(format!("{name} Hom complex in {context}: {r}")));
        }
    }
    let a: Vec<usize> = (0..=degree).map(|q| free.cohomology(q).dim).collect();
    let b: Vec<usize> = (0..=degree).map(|q| inj.cohomology(q).dim).collect();
    if a != b {
        return Err(Error::CrossCheck(format!("Ext in {context}: free resolution gives {a:?}, injective gives {b:?}")));
    }
    Ok((a, b))
}

fn checked(r: Resolution) -> Result<Resolution> {
    let rep = verify_resolution(&r);
    if !rep.is_empty() {
        return Err(Error::Inconsistent(format!("resolution in {}: {rep}", r.context)));
    }
    Ok(r)
}

fn plain_spaces(pairs: impl Iterator<Item = (CatModule, CatModule)>) -> Result<Vec<(HomSpace, Vec<Matrix>)>> {
    pairs.map(|(a, b)| Ok((module_hom_basis(&a, &b)?, Vec::new()))).collect()
}

/// Ext between modules over a linear category, no extra structure.
pub fn ext_plain(m: &CatModule, n: &CatModule, context: Context, degree: usize) -> Result<ExtGroups> {
    let free = checked(free_resolution(m, context, degree + 1)?)?;
    let inj = checked(injective_resolution(n, context, degree + 1)?)?;
    let fc = hom_complex_free(&free, plain_spaces(free.terms.iter().map(|p| (p.clone(), n.clone())))?)?;
    let ic = hom_complex_injective(&inj, plain_spaces(inj.terms.iter().map(|e| (m.clone(), e.clone())))?)?;
    let (dims, injective_dims) = compare_routes(context, &fc, &ic, degree)?;
    Ok(ExtGroups {
        context,
        degree,
        dims,
        injective_dims,
        structure: ExtStructure::Plain,
        fixed_dims: None,
        free_complex: fc,
        injective_complex: ic,
    })
}

/// A resolution whose terms carry equivariant structure.
#[derive(Clone, Debug)]
pub struct EquivResolution {
    pub resolution: Resolution,
    pub terms: Vec<EquivModule>,
}

/// One step: `⊕_i (H m_i ⊗ h_{X_i}) → M`, `v ⊗ f ↦ M(f)(v)`, over
/// generators `m_i` of `M` as a smash module.
pub fn equivariant_cover(m: &EquivModule) -> Result<(EquivModule, ModuleMorphism)> {
    let hcat = m.hcat();
    let f = m.field();
    let c = hcat.base();
    let k = c.num_objects();
    let gens = generators(&to_smash(m));
    let mut pieces = Vec::with_capacity(gens.elements.len());
    let mut blocks: Vec<Vec<Matrix>> = vec![Vec::new(); k];
    for (x, v) in &gens.elements {
        let basis = m.hmod(*x).generated_submodule(&Matrix::from_columns(f, m.dims()[*x], std::slice::from_ref(v)));
        let vmod = m.hmod(*x).restrict(&basis)?;
        let piece = tensor_hmod(&vmod, &representable_equivariant(hcat, *x))?;
        for (y, block) in blocks.iter_mut().enumerate() {
            let mut cols = Vec::new();
            for a in 0..basis.cols() {
                for b in 0..c.hom_dim(y, *x) {
                    cols.push(m.base().map(y, *x, b).apply(&basis.col(a)));
                }
            }
            block.push(Matrix::from_columns(f, m.dims()[y], &cols));
        }
        pieces.push(piece);
    }
    let refs: Vec<&EquivModule> = pieces.iter().collect();
    let sum = equivariant_direct_sum(hcat, &refs)?;
    let comps = blocks
        .iter()
        .enumerate()
        .map(|(y, bl)| {
            let refs: Vec<&Matrix> = bl.iter().collect();
            Matrix::hstack(f, m.dims()[y], &refs)
        })
        .collect();
    let epi = ModuleMorphism::new(sum.base().clone(), m.base().clone(), comps)?;
    Ok((sum, epi))
}

/// Free resolution in `Mod-C` by equivariant terms with `H`-linear maps.
pub fn equivariant_free_resolution(m: &EquivModule, len: usize) -> Result<EquivResolution> {
    let (p0, aug) = equivariant_cover(m)?;
    let mut terms = vec![p0];
    let mut differentials = Vec::with_capacity(len);
    let mut prev = aug.clone();
    for _ in 0..len {
        let (k, inc) = equivariant_kernel(&prev, terms.last().expect("nonempty"))?;
        let (p, eps) = equivariant_cover(&k)?;
        let d = inc.after(&eps);
        terms.push(p);
        differentials.push(d.clone());
        prev = d;
    }
    let resolution = Resolution {
        context: Context::ModC,
        kind: ResolutionKind::Free,
        module: m.base().clone(),
        terms: terms.iter().map(|t| t.base().clone()).collect(),
        differentials,
        augmentation: aug,
    };
    Ok(EquivResolution { resolution, terms })
}

fn rebase(eta: &ModuleMorphism, source: &CatModule, target: &CatModule) -> ModuleMorphism {
    ModuleMorphism::new_unchecked(source.clone(), target.clone(), eta.components().to_vec())
}

/// Injective resolution over the smash product, read back as equivariant
/// modules.
pub fn equivariant_injective_resolution(n: &EquivModule, len: usize) -> Result<EquivResolution> {
    let hcat = n.hcat();
    let smash = injective_resolution(&to_smash(n), Context::SmashModC, len)?;
    let terms = smash.terms.iter().map(|t| from_smash(hcat, t)).collect::<Result<Vec<_>>>()?;
    let bases: Vec<CatModule> = terms.iter().map(|t| t.base().clone()).collect();
    let differentials = smash.differentials.iter().enumerate().map(|(i, d)| rebase(d, &bases[i], &bases[i + 1])).collect();
    let resolution = Resolution {
        context: Context::ModC,
        kind: ResolutionKind::Injective,
        module: n.base().clone(),
        augmentation: rebase(&smash.augmentation, n.base(), &bases[0]),
        terms: bases,
        differentials,
    };
    Ok(EquivResolution { resolution, terms })
}

fn module_structure(h: &Arc<HopfAlgebra>, c: &CochainComplex, degree: usize) -> Result<Vec<HModule>> {
    (0..=degree).map(|q| HModule::new(h.clone(), c.cohomology(q).dim, c.induced(q))).collect()
}

fn comodule_structure(h: &Arc<HopfAlgebra>, c: &CochainComplex, degree: usize) -> Result<Vec<HComodule>> {
    (0..=degree).map(|q| HComodule::from_coefficient_maps(h.clone(), c.cohomology(q).dim, &c.induced(q))).collect()
}

/// `Ext_{Mod-C}(M, N)` with its `H`-action, through the `H`-action on Hom.
pub fn ext_equivariant(m: &EquivModule, n: &EquivModule, degree: usize) -> Result<ExtGroups> {
    let free = equivariant_free_resolution(m, degree + 1)?;
    checked(free.resolution.clone())?;
    let inj = equivariant_injective_resolution(n, degree + 1)?;
    checked(inj.resolution.clone())?;
    let space = |a: &EquivModule, b: &EquivModule| -> Result<(HomSpace, Vec<Matrix>)> {
        let ha = hom_h_action(a, b)?;
        Ok((ha.hom, ha.module.actions().to_vec()))
    };
    let fc = hom_complex_free(&free.resolution, free.terms.iter().map(|p| space(p, n)).collect::<Result<_>>()?)?;
    let ic = hom_complex_injective(&inj.resolution, inj.terms.iter().map(|e| space(m, e)).collect::<Result<_>>()?)?;
    let (dims, injective_dims) = compare_routes(Context::ModC, &fc, &ic, degree)?;
    let h = m.hopf();
    let mods = module_structure(h, &fc, degree)?;
    let other = module_structure(h, &ic, degree)?;
    let a: Vec<usize> = mods.iter().map(|v| invariants(v).cols()).collect();
    let b: Vec<usize> = other.iter().map(|v| invariants(v).cols()).collect();
    if a != b {
        return Err(Error::CrossCheck(format!("invariants of Ext in Mod-C: free route {a:?}, injective route {b:?}")));
    }
    Ok(ExtGroups {
        context: Context::ModC,
        degree,
        dims,
        injective_dims,
        structure: ExtStructure::Modules(mods),
        fixed_dims: Some((a, b)),
        free_complex: fc,
        injective_complex: ic,
    })
}

/// `Ext_{Mod-C#H}(M, N)`.
pub fn ext_smash(m: &EquivModule, n: &EquivModule, degree: usize) -> Result<ExtGroups> {
    ext_plain(&to_smash(m), &to_smash(n), Context::SmashModC, degree)
}

/// Free resolution in `D-Mod` by terms `⊕ (_{X_i}h ⊗ W_i)`.
#[derive(Clone, Debug)]
pub struct RelResolution {
    pub resolution: Resolution,
    pub terms: Vec<RelHopfModule>,
}

pub fn relhopf_free_resolution(m: &RelHopfModule, len: usize) -> Result<RelResolution> {
    let g = relhopf_generators(m)?;
    let mut terms = vec![g.module];
    let aug = g.epi;
    let mut differentials = Vec::with_capacity(len);
    let mut prev = aug.clone();
    for _ in 0..len {
        let (k, inc) = relhopf_kernel(&prev, terms.last().expect("nonempty"))?;
        let g = relhopf_generators(&k)?;
        let d = inc.after(&g.epi);
        terms.push(g.module);
        differentials.push(d.clone());
        prev = d;
    }
    let resolution = Resolution {
        context: Context::DMod,
        kind: ResolutionKind::Free,
        module: m.base().clone(),
        terms: terms.iter().map(|t| t.base().clone()).collect(),
        differentials,
        augmentation: aug,
    };
    Ok(RelResolution { resolution, terms })
}

/// Injective resolution in relative Hopf modules, through the dual smash
/// product.
pub fn relhopf_injective_resolution(n: &RelHopfModule, len: usize) -> Result<RelResolution> {
    let dcat = n.dcat();
    let opcat = dual_smash_category(dcat);
    let eq = equivariant_injective_resolution(&to_dual_smash(n, &opcat)?, len)?;
    let terms = eq.terms.iter().map(|t| from_dual_smash(dcat, t)).collect::<Result<Vec<_>>>()?;
    let bases: Vec<CatModule> = terms.iter().map(|t| t.base().clone()).collect();
    let r = &eq.resolution;
    let differentials = r.differentials.iter().enumerate().map(|(i, d)| rebase(d, &bases[i], &bases[i + 1])).collect();
    let resolution = Resolution {
        context: Context::RelHopf,
        kind: ResolutionKind::Injective,
        module: n.base().clone(),
        augmentation: rebase(&r.augmentation, n.base(), &bases[0]),
        terms: bases,
        differentials,
    };
    Ok(RelResolution { resolution, terms })
}

/// `Ext_{D-Mod}(M, N)` with its `H`-coaction.
pub fn ext_relhopf_underlying(m: &RelHopfModule, n: &RelHopfModule, degree: usize) -> Result<ExtGroups> {
    let free = relhopf_free_resolution(m, degree + 1)?;
    checked(free.resolution.clone())?;
    let inj = relhopf_injective_resolution(n, degree + 1)?;
    checked(inj.resolution.clone())?;
    let space = |a: &RelHopfModule, b: &RelHopfModule| -> Result<(HomSpace, Vec<Matrix>)> {
        let rh = rational_hom(a, b)?;
        Ok((rh.hom, rh.comodule.coefficient_maps()))
    };
    let fc = hom_complex_free(&free.resolution, free.terms.iter().map(|p| space(p, n)).collect::<Result<_>>()?)?;
    let ic = hom_complex_injective(&inj.resolution, inj.terms.iter().map(|e| space(m, e)).collect::<Result<_>>()?)?;
    let (dims, injective_dims) = compare_routes(Context::DMod, &fc, &ic, degree)?;
    let h = m.hopf();
    let comods = comodule_structure(h, &fc, degree)?;
    let other = comodule_structure(h, &ic, degree)?;
    let a: Vec<usize> = comods.iter().map(|v| coinvariants(v).cols()).collect();
    let b: Vec<usize> = other.iter().map(|v| coinvariants(v).cols()).collect();
    if a != b {
        return Err(Error::CrossCheck(format!("coinvariants of Ext in D-Mod: free route {a:?}, injective route {b:?}")));
    }
    Ok(ExtGroups {
        context: Context::DMod,
        degree,
        dims,
        injective_dims,
        structure: ExtStructure::Comodules(comods),
        fixed_dims: Some((a, b)),
        free_complex: fc,
        injective_complex: ic,
    })
}

/// `Ext` in relative Hopf modules, as `Ext` over the dual smash product
/// once the two Hom computations agree.
pub fn ext_relhopf(m: &RelHopfModule, n: &RelHopfModule, degree: usize) -> Result<ExtGroups> {
    let opcat = dual_smash_category(m.dcat());
    dual_smash_hom_basis(m, n, &opcat)?;
    let mut e = ext_smash(&to_dual_smash(m, &opcat)?, &to_dual_smash(n, &opcat)?, degree)?;
    e.context = Context::RelHopf;
    Ok(e)
}

/// Left modules over `H` as modules over its one-object category.
pub fn algebra_cats(h: &HopfAlgebra) -> Arc<CategoryPair> {
    CategoryPair::new(LinCategory::algebra_category(h))
}

pub fn hmodule_as_cat(v: &HModule, cats: &Arc<CategoryPair>) -> CatModule {
    CatModule::from_covariant(cats.clone(), Side::Left, vec![v.dim()], vec![v.actions().to_vec()])
        .expect("algebra category of the same Hopf algebra")
}

pub fn cat_as_hmodule(m: &CatModule, hopf: &Arc<HopfAlgebra>) -> Result<HModule> {
    if m.side() != Side::Left || m.num_objects() != 1 {
        return Err(Error::Invalid("expected a left module over a one-object category".into()));
    }
    HModule::new(hopf.clone(), m.dim(0), m.cov_maps()[0].clone())
}

/// `Ext_H(V, W)`.
pub fn ext_hmod(v: &HModule, w: &HModule, degree: usize) -> Result<ExtGroups> {
    let cats = algebra_cats(v.hopf());
    ext_plain(&hmodule_as_cat(v, &cats), &hmodule_as_cat(w, &cats), Context::HMod, degree)
}

/// `Ext` of comodules as `Ext` of modules over the dual.
pub fn ext_comod(v: &HComodule, w: &HComodule, degree: usize) -> Result<ExtGroups> {
    let dual = Arc::new(dual_hopf(v.hopf()));
    let mut e = ext_hmod(&comodule_to_dual_module(v, &dual)?, &comodule_to_dual_module(w, &dual)?, degree)?;
    e.context = Context::ComodH;
    Ok(e)
}

/// Inputs accepted by [`ext_groups`].
#[derive(Clone, Copy, Debug)]
pub enum Operand<'a> {
    Cat(&'a CatModule),
    Equiv(&'a EquivModule),
    Rel(&'a RelHopfModule),
    HMod(&'a HModule),
    Comod(&'a HComodule),
}

pub fn ext_groups(m: Operand<'_>, n: Operand<'_>, context: Context, degree: usize) -> Result<ExtGroups> {
    use Operand::*;
    match (m, n, context) {
        (Equiv(a), Equiv(b), Context::ModC) => ext_equivariant(a, b, degree),
        (Equiv(a), Equiv(b), Context::SmashModC) => ext_smash(a, b, degree),
        (Rel(a), Rel(b), Context::DMod) => ext_relhopf_underlying(a, b, degree),
        (Rel(a), Rel(b), Context::RelHopf) => ext_relhopf(a, b, degree),
        (HMod(a), HMod(b), Context::HMod) => ext_hmod(a, b, degree),
        (Comod(a), Comod(b), Context::ComodH) => ext_comod(a, b, degree),
        (Cat(a), Cat(b), c) if matches!(c, Context::ModC | Context::SmashModC | Context::DMod | Context::HMod) => {
            ext_plain(a, b, c, degree)
        }
        (_, _, c) => Err(Error::Invalid(format!("operands do not live in {c}"))),
    }
}

/// What [`derived_fixed_points`] derives.
#[derive(Clone, Copy, Debug)]
pub enum FixedPointInput<'a> {
    Invariants(&'a HModule),
    Coinvariants(&'a HComodule),
}

/// `R^p(−)^H(M) = Ext^p_H(K, M)`, or the coinvariant version through `H*`.
pub fn derived_fixed_points(input: FixedPointInput<'_>, degree: usize) -> Result<Vec<usize>> {
    let e = match input {
        FixedPointInput::Invariants(m) => ext_hmod(&HModule::trivial(m.hopf()), m, degree)?,
        FixedPointInput::Coinvariants(m) => ext_comod(&HComodule::trivial(m.hopf(), 1), m, degree)?,
    };
    let direct = match input {
        FixedPointInput::Invariants(m) => invariants(m).cols(),
        FixedPointInput::Coinvariants(m) => coinvariants(m).cols(),
    };
    if e.dims[0] != direct {
        return Err(Error::CrossCheck(format!("R^0 has dimension {} but the fixed points {direct}", e.dims[0])));
    }
    Ok(e.dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: Field = Field::Rationals;

    #[test]
    fn t_over_dual_numbers() {
        let c = fixtures::c2fix();
        let t = fixtures::module_t(&c);
        let r = free_resolution(t.base(), Context::ModC, 3).unwrap();
        assert!(verify_resolution(&r).is_empty(), "{}", verify_resolution(&r));
        assert_eq!(r.ranks(), vec![2, 2, 2, 2]);
        let e = ext_plain(t.base(), t.base(), Context::ModC, 3).unwrap();
        assert_eq!(e.dims, vec![1, 1, 1, 1]);
        let eq = equivariant_free_resolution(&t, 3).unwrap();
        assert!(verify_resolution(&eq.resolution).is_empty());
        assert_eq!(eq.resolution.ranks(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn group_cohomology_of_c2_mod_2() {
        let h = fixtures::f2();
        let k = HModule::trivial(&h);
        let cats = algebra_cats(&h);
        let r = free_resolution(&hmodule_as_cat(&k, &cats), Context::HMod, 3).unwrap();
        assert_eq!(r.ranks(), vec![2, 2, 2, 2]);
        let i = injective_resolution(&hmodule_as_cat(&k, &cats), Context::HMod, 3).unwrap();
        assert!(verify_resolution(&i).is_empty());
        assert_eq!(i.ranks(), vec![2, 2, 2, 2]);
        let panel = lifting_panel(&cats, Side::Left);
        assert!(!panel.is_empty());
        for t in &i.terms {
            assert!(passes_lifting_test(t, &panel).unwrap());
        }
        assert!(!passes_lifting_test(&hmodule_as_cat(&k, &cats), &panel).unwrap());
        assert_eq!(ext_hmod(&k, &k, 3).unwrap().dims, vec![1, 1, 1, 1]);
        assert_eq!(derived_fixed_points(FixedPointInput::Invariants(&k), 3).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn semisimple_group_algebra() {
        let h = fixtures::f1();
        let cats = algebra_cats(&h);
        let k = HModule::trivial(&h);
        let i = injective_resolution(&hmodule_as_cat(&k, &cats), Context::HMod, 3).unwrap();
        assert_eq!(i.ranks(), vec![1, 0, 0, 0]);
        let sign = fixtures::sign(&h);
        for v in [&k, &sign] {
            for w in [&k, &sign] {
                let e = ext_hmod(v, w, 3).unwrap();
                assert_eq!(&e.dims[1..], &[0, 0, 0]);
            }
        }
        assert_eq!(derived_fixed_points(FixedPointInput::Invariants(&sign), 2).unwrap(), vec![0, 0, 0]);
        let zero = HModule::new(h.clone(), 0, vec![Matrix::zeros(Q, 0, 0); 2]).unwrap();
        let z = injective_resolution(&hmodule_as_cat(&zero, &cats), Context::HMod, 2).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn equivariant_ext_on_fixture_pairs() {
        let c = fixtures::c2fix();
        let mods = fixtures::c2fix_modules(&c);
        for a in &mods {
            for b in &mods {
                let e = ext_equivariant(a, b, 3).unwrap();
                let s = ext_smash(a, b, 3).unwrap();
                // semisimple H: invariants of Ext over C are Ext over C#H
                assert_eq!(e.fixed_dims.as_ref().unwrap().0, s.dims);
            }
        }
        let t = &mods[0];
        let e = ext_equivariant(t, t, 3).unwrap();
        assert_eq!(e.dims, vec![1, 1, 1, 1]);
        // H^q ≅ x^{-q}: the sign alternates
        assert_eq!(e.fixed_dims.unwrap().0, vec![1, 0, 1, 0]);
    }

    #[test]
    fn projective_resolves_to_itself() {
        let c = fixtures::c2fix();
        let r = fixtures::module_r(&c);
        let res = free_resolution(r.base(), Context::ModC, 2).unwrap();
        assert_eq!(res.ranks(), vec![2, 0, 0]);
        for m in fixtures::c2fix_modules(&c) {
            let e = ext_equivariant(&m, &r, 3).unwrap();
            assert_eq!(&e.dims[1..], &[0, 0, 0]);
        }
    }

    #[test]
    fn relhopf_ext() {
        let d = fixtures::d1_arc();
        let mods = fixtures::d1_modules(&d);
        for a in &mods {
            for b in &mods {
                let u = ext_relhopf_underlying(a, b, 2).unwrap();
                assert_eq!(&u.dims[1..], &[0, 0]);
                let r = ext_relhopf(a, b, 2).unwrap();
                assert_eq!(r.dims[0], u.fixed_dims.as_ref().unwrap().0[0]);
            }
        }
    }

    #[test]
    fn comodule_ext_over_semisimple_dual() {
        let h = fixtures::f1();
        let line = HComodule::grouplike_line(&h, 1);
        assert_eq!(derived_fixed_points(FixedPointInput::Coinvariants(&line), 2).unwrap(), vec![0, 0, 0]);
        let triv = HComodule::trivial(&h, 1);
        assert_eq!(ext_comod(&triv, &triv, 2).unwrap().dims, vec![1, 0, 0]);
    }
}
