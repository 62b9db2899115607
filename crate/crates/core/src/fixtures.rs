//! The small worked examples used throughout tests, benches and the CLI.
//!
//! `f1 = ℚ[C₂]`, `f2 = 𝔽₂[C₂]`, `f3` the Sweedler algebra over ℚ. `c1` is
//! one object with `End = K`; `c2fix` has `End = ℚ[x]/(x²)` with `g·x = −x`;
//! `c3` has objects `A`, `B` and one arrow `α: A → B` with `g·α = −α`; `d1`
//! is `c3` coacted on by `ρ(α) = α⊗g`.

use std::sync::Arc;

use crate::catmod::{CatModule, Side};
use crate::equivariant::{representable_equivariant, tensor_hmod, EquivModule};
use crate::exactlin::{unit_vector, Field, Matrix, Vector};
use crate::hcat::{CoHCategory, HCategory, LinCategory};
use crate::hopf::{build_named_hopf, sweedler, GroupTable, HopfAlgebra, NamedHopf};
use crate::hrep::{HComodule, HModule};
use crate::relhopf::{representable_relhopf, tensor_comod, RelHopfModule};

pub fn cyclic_group_algebra(field: Field, n: usize) -> Arc<HopfAlgebra> {
    Arc::new(build_named_hopf(field, &NamedHopf::GroupAlgebra(GroupTable::cyclic(n))).expect("cyclic group"))
}

pub fn f1() -> Arc<HopfAlgebra> {
    cyclic_group_algebra(Field::Rationals, 2)
}

pub fn f2() -> Arc<HopfAlgebra> {
    cyclic_group_algebra(Field::Prime(2), 2)
}

pub fn f3() -> Arc<HopfAlgebra> {
    Arc::new(sweedler(Field::Rationals))
}

pub fn c1(field: Field) -> LinCategory {
    LinCategory::one_object(field, vec!["id".into()], &[vec![vec![field.one()]]], vec![field.one()])
        .expect("one-dimensional endomorphisms")
}

/// `c1` with every `h` acting by `ε(h)`.
pub fn c1_trivial(hopf: &Arc<HopfAlgebra>) -> Arc<HCategory> {
    Arc::new(HCategory::trivial(Arc::new(c1(hopf.field())), hopf.clone()))
}

/// The dual numbers `ℚ[x]/(x²)` on one object, basis `{1, x}`.
pub fn dual_numbers() -> LinCategory {
    let q = Field::Rationals;
    let e = |i| unit_vector(q, 2, i);
    let zero = vec![q.zero(), q.zero()];
    let mult = vec![vec![e(0), e(1)], vec![e(1), zero]];
    LinCategory::one_object(q, vec!["1".into(), "x".into()], &mult, e(0)).expect("dual numbers")
}

pub fn c2fix() -> Arc<HCategory> {
    let q = Field::Rationals;
    let g = Matrix::from_ints(q, 2, 2, &[1, 0, 0, -1]);
    Arc::new(HCategory::new(Arc::new(dual_numbers()), f1(), vec![vec![Matrix::identity(q, 2), g]]).expect("c2fix shapes"))
}

/// Objects `A`, `B`; `hom(A,B) = K·α`, `hom(B,A) = 0`.
pub fn arrow_category(field: Field) -> LinCategory {
    let hom_labels = vec![vec!["id_A".into()], vec!["α".into()], vec![], vec!["id_B".into()]];
    LinCategory::build(
        field,
        vec!["A".into(), "B".into()],
        hom_labels,
        vec![vec![field.one()], vec![field.one()]],
        |_, _, _, _, _| vec![field.one()],
    )
    .expect("arrow category")
}

pub fn c3() -> Arc<HCategory> {
    let q = Field::Rationals;
    let one = |c: i64| Matrix::from_ints(q, 1, 1, &[c]);
    let empty = Matrix::zeros(q, 0, 0);
    let action = vec![
        vec![one(1), one(1)],
        vec![one(1), one(-1)],
        vec![empty.clone(), empty],
        vec![one(1), one(1)],
    ];
    Arc::new(HCategory::new(Arc::new(arrow_category(q)), f1(), action).expect("c3 shapes"))
}

pub fn d1() -> CoHCategory {
    let q = Field::Rationals;
    let one = |c: i64| Matrix::from_ints(q, 1, 1, &[c]);
    let empty = Matrix::zeros(q, 0, 0);
    let maps = vec![
        vec![one(1), one(0)],
        vec![one(0), one(1)],
        vec![empty.clone(), empty],
        vec![one(1), one(0)],
    ];
    CoHCategory::from_coefficient_maps(Arc::new(arrow_category(q)), f1(), &maps).expect("d1 shapes")
}

/// The Sweedler algebra on one object, acted on by itself through the
/// adjoint action `h·f = Σ h₁ f S(h₂)`.
pub fn sweedler_category() -> Arc<HCategory> {
    let h = f3();
    let q = h.field();
    let n = h.dim();
    let base = LinCategory::algebra_category(&h);
    let action: Vec<Matrix> = (0..n)
        .map(|i| {
            let cols: Vec<Vector> = (0..n)
                .map(|b| {
                    let mut out = vec![q.zero(); n];
                    for (j, k, c) in h.comult(i) {
                        let t = h.mul(&h.mul(&h.basis(*j), &h.basis(b)), &h.apply_antipode(&h.basis(*k)));
                        crate::exactlin::axpy(&mut out, c, &t);
                    }
                    out
                })
                .collect();
            Matrix::from_columns(q, n, &cols)
        })
        .collect();
    Arc::new(HCategory::new(Arc::new(base), h, vec![action]).expect("adjoint action shapes"))
}

/// The trivial module over `c2fix`: carrier `ℚ`, `x ↦ 0`, `g ↦ 1`.
pub fn module_t(c: &Arc<HCategory>) -> EquivModule {
    let q = c.base().field();
    let base = CatModule::new(c.cats().clone(), Side::Right, vec![1], vec![vec![Matrix::identity(q, 1), Matrix::zeros(q, 1, 1)]])
        .expect("T shapes");
    EquivModule::new(c.clone(), base, vec![HModule::trivial(c.hopf())]).expect("T structure")
}

/// The representable `h_•` over `c2fix` with `g·(a + bx) = a − bx`.
pub fn module_r(c: &Arc<HCategory>) -> EquivModule {
    representable_equivariant(c, 0)
}

/// `T` twisted by the sign character.
pub fn module_sign_t(c: &Arc<HCategory>) -> EquivModule {
    tensor_hmod(&sign(c.hopf()), &module_t(c)).expect("same Hopf algebra")
}

/// `g ↦ −1` over a two-element group algebra.
pub fn sign(h: &Arc<HopfAlgebra>) -> HModule {
    let f = h.field();
    HModule::character(h, &[f.one(), f.from_i64(-1)]).expect("character of C2")
}

/// `[T, R, sign⊗T]`.
pub fn c2fix_modules(c: &Arc<HCategory>) -> Vec<EquivModule> {
    vec![module_t(c), module_r(c), module_sign_t(c)]
}

pub fn d1_arc() -> Arc<CoHCategory> {
    Arc::new(d1())
}

/// Over `d1`: `M₁(A) = K m₀` coinvariant, `M₁(B) = K m₁` with
/// `ρ(m₁) = m₁⊗g`, and `M₁(α)m₀ = m₁`.
pub fn module_m1(d: &Arc<CoHCategory>) -> RelHopfModule {
    let q = d.base().field();
    let one = Matrix::identity(q, 1);
    let base = CatModule::from_covariant(
        d.cats().clone(),
        Side::Left,
        vec![1, 1],
        vec![vec![one.clone()], vec![one.clone()], vec![], vec![one]],
    )
    .expect("M1 shapes");
    let h = d.hopf();
    let g = h.label_index("g").expect("group element g");
    RelHopfModule::new(d.clone(), base, vec![HComodule::trivial(h, 1), HComodule::grouplike_line(h, g)]).expect("M1 structure")
}

/// `M₁` tensored with the line of degree `g`.
pub fn module_m1_shifted(d: &Arc<CoHCategory>) -> RelHopfModule {
    let g = d.hopf().label_index("g").expect("group element g");
    tensor_comod(&module_m1(d), &HComodule::grouplike_line(d.hopf(), g)).expect("same Hopf algebra")
}

/// `[M₁, M₁ shifted, _Bh]`.
pub fn d1_modules(d: &Arc<CoHCategory>) -> Vec<RelHopfModule> {
    vec![module_m1(d), module_m1_shifted(d), representable_relhopf(d, 1)]
}
