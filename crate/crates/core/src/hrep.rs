//! Finite-dimensional modules and comodules over a Hopf algebra.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, solve_matrix, Field, Matrix, Scalar, Vector};
use crate::hopf::HopfAlgebra;
use crate::report::Report;

/// Left module: `action[i]` is the matrix of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HModule {
    hopf: Arc<HopfAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl HModule {
    pub fn new(hopf: Arc<HopfAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<HModule> {
        if action.len() != hopf.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for a Hopf algebra of dimension {}",
                action.len(),
                hopf.dim()
            )));
        }
        if let Some(m) = action.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(Error::Dimension(format!("action matrix {:?} on a carrier of dimension {dim}", m.shape())));
        }
        if action.iter().any(|m| m.field() != hopf.field()) {
            return Err(Error::FieldMismatch("action matrices over another field".into()));
        }
        Ok(HModule { hopf, dim, action })
    }

    /// `h` acts by `ε(h)`.
    pub fn trivial(hopf: &Arc<HopfAlgebra>) -> HModule {
        let f = hopf.field();
        let action = hopf.counit().iter().map(|c| Matrix::scalar(f, 1, c)).collect();
        HModule { hopf: hopf.clone(), dim: 1, action }
    }

    /// `H` acting on itself by left multiplication.
    pub fn regular(hopf: &Arc<HopfAlgebra>) -> HModule {
        let n = hopf.dim();
        let f = hopf.field();
        let action = (0..n)
            .map(|i| Matrix::from_columns(f, n, &(0..n).map(|j| hopf.mul_basis(i, j).clone()).collect::<Vec<_>>()))
            .collect();
        HModule { hopf: hopf.clone(), dim: n, action }
    }

    /// A one-dimensional module where `e_i` acts by `scalars[i]`.
    pub fn character(hopf: &Arc<HopfAlgebra>, scalars: &[Scalar]) -> Result<HModule> {
        let f = hopf.field();
        HModule::new(hopf.clone(), 1, scalars.iter().map(|c| Matrix::scalar(f, 1, c)).collect())
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.hopf.field()
    }
    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of an arbitrary element of `H`.
    pub fn act(&self, h: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, a) in h.iter().zip(&self.action) {
            m.add_scaled(c, a);
        }
        m
    }

    /// Restriction to an invariant subspace with basis the columns of `basis`.
    pub fn restrict(&self, basis: &Matrix) -> Result<HModule> {
        let action = self
            .action
            .iter()
            .map(|a| {
                solve_matrix(basis, &a.mul(basis))?
                    .ok_or_else(|| Error::Invalid("subspace is not a submodule".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        HModule::new(self.hopf.clone(), basis.cols(), action)
    }

    /// Basis of the submodule generated by the columns of `gens`.
    pub fn generated_submodule(&self, gens: &Matrix) -> Matrix {
        let mut blocks = vec![gens.clone()];
        for a in &self.action {
            blocks.push(a.mul(gens));
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        // one round suffices: H·v is already closed since H is a unital algebra
        Matrix::hstack(self.field(), self.dim, &refs).column_basis()
    }
}

/// Checks the unit law and the representation law.
pub fn validate_module(m: &HModule) -> Report {
    let mut r = Report::new();
    let h = &m.hopf;
    let id = Matrix::identity(m.field(), m.dim);
    r.check(m.act(h.unit()) == id, "unit action", || "1_H does not act as the identity".into());
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let lhs = m.action[i].mul(&m.action[j]);
            let rhs = m.act(h.mul_basis(i, j));
            r.check(lhs == rhs, "representation law", || {
                format!("{}·{} does not act as {}{}", h.labels()[i], h.labels()[j], h.labels()[i], h.labels()[j])
            });
        }
    }
    r
}

/// Right comodule stored as a `(d·n) × d` matrix: row `a·n + i` of column
/// `b` is the coefficient of `v_a ⊗ e_i` in `ρ(v_b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HComodule {
    hopf: Arc<HopfAlgebra>,
    dim: usize,
    coaction: Matrix,
}

impl HComodule {
    pub fn new(hopf: Arc<HopfAlgebra>, dim: usize, coaction: Matrix) -> Result<HComodule> {
        if coaction.shape() != (dim * hopf.dim(), dim) {
            return Err(Error::Dimension(format!(
                "coaction of shape {:?} on a carrier of dimension {dim} over a Hopf algebra of dimension {}",
                coaction.shape(),
                hopf.dim()
            )));
        }
        if coaction.field() != hopf.field() {
            return Err(Error::FieldMismatch("coaction over another field".into()));
        }
        Ok(HComodule { hopf, dim, coaction })
    }

    /// From the maps `ρ_i` with `ρ(v) = Σ_i ρ_i(v) ⊗ e_i`.
    pub fn from_coefficient_maps(hopf: Arc<HopfAlgebra>, dim: usize, maps: &[Matrix]) -> Result<HComodule> {
        let n = hopf.dim();
        if maps.len() != n || maps.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Dimension("coefficient maps".into()));
        }
        let mut c = Matrix::zeros(hopf.field(), dim * n, dim);
        for (i, m) in maps.iter().enumerate() {
            for a in 0..dim {
                for b in 0..dim {
                    c[(a * n + i, b)] = m[(a, b)].clone();
                }
            }
        }
        HComodule::new(hopf, dim, c)
    }

    /// `ρ(v) = v ⊗ 1`.
    pub fn trivial(hopf: &Arc<HopfAlgebra>, dim: usize) -> HComodule {
        let f = hopf.field();
        let maps: Vec<Matrix> = hopf.unit().iter().map(|u| Matrix::scalar(f, dim, u)).collect();
        HComodule::from_coefficient_maps(hopf.clone(), dim, &maps).expect("shapes agree")
    }

    /// The line `K v` with `ρ(v) = v ⊗ e_g`; `e_g` should be grouplike.
    pub fn grouplike_line(hopf: &Arc<HopfAlgebra>, g: usize) -> HComodule {
        let f = hopf.field();
        let maps: Vec<Matrix> = (0..hopf.dim())
            .map(|i| if i == g { Matrix::identity(f, 1) } else { Matrix::zeros(f, 1, 1) })
            .collect();
        HComodule::from_coefficient_maps(hopf.clone(), 1, &maps).expect("shapes agree")
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.hopf.field()
    }
    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// `ρ_i`, the `e_i`-component of the coaction.
    pub fn coefficient_map(&self, i: usize) -> Matrix {
        let n = self.hopf.dim();
        Matrix::from_fn(self.field(), self.dim, self.dim, |a, b| self.coaction[(a * n + i, b)].clone())
    }

    pub fn coefficient_maps(&self) -> Vec<Matrix> {
        (0..self.hopf.dim()).map(|i| self.coefficient_map(i)).collect()
    }

    pub fn restrict(&self, basis: &Matrix) -> Result<HComodule> {
        let maps = self
            .coefficient_maps()
            .iter()
            .map(|a| {
                solve_matrix(basis, &a.mul(basis))?
                    .ok_or_else(|| Error::Invalid("subspace is not a subcomodule".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        HComodule::from_coefficient_maps(self.hopf.clone(), basis.cols(), &maps)
    }

    /// Smallest subspace containing the columns of `gens` and closed under
    /// every `ρ_i`.
    pub fn closed_span(&self, gens: &Matrix) -> Matrix {
        let maps = self.coefficient_maps();
        let mut span = gens.column_basis();
        loop {
            let mut blocks = vec![span.clone()];
            for m in &maps {
                blocks.push(m.mul(&span));
            }
            let refs: Vec<&Matrix> = blocks.iter().collect();
            let next = Matrix::hstack(self.field(), self.dim, &refs).column_basis();
            if next.cols() == span.cols() {
                return span;
            }
            span = next;
        }
    }
}

/// Checks coassociativity and the counit law via the coefficient maps:
/// `ρ_j ρ_i = Σ_k Δ_k[j,i] ρ_k` and `Σ_i ε(e_i) ρ_i = id`.
pub fn validate_comodule(m: &HComodule) -> Report {
    let mut r = Report::new();
    let h = &m.hopf;
    let n = h.dim();
    let f = m.field();
    let maps = m.coefficient_maps();
    let mut expected = vec![Matrix::zeros(f, m.dim, m.dim); n * n];
    for (k, rk) in maps.iter().enumerate() {
        for (j, i, c) in h.comult(k) {
            expected[j * n + i].add_scaled(c, rk);
        }
    }
    for j in 0..n {
        for i in 0..n {
            r.check(maps[j].mul(&maps[i]) == expected[j * n + i], "coassociativity", || {
                format!("component ({}, {})", h.labels()[j], h.labels()[i])
            });
        }
    }
    let mut counit = Matrix::zeros(f, m.dim, m.dim);
    for (c, rk) in h.counit().iter().zip(&maps) {
        counit.add_scaled(c, rk);
    }
    r.check(counit == Matrix::identity(f, m.dim), "counit", || "(id⊗ε)ρ != id".into());
    r
}

/// Kind tag for [`validate_rep`].
pub enum Rep<'a> {
    Module(&'a HModule),
    Comodule(&'a HComodule),
}

pub fn validate_rep(rep: Rep<'_>) -> Report {
    match rep {
        Rep::Module(m) => validate_module(m),
        Rep::Comodule(m) => validate_comodule(m),
    }
}

fn stacked_kernel(f: Field, dim: usize, blocks: Vec<Matrix>) -> Matrix {
    let refs: Vec<&Matrix> = blocks.iter().collect();
    kernel_basis(&Matrix::vstack(f, dim, &refs))
}

/// Basis of `{m : hm = ε(h)m}`.
pub fn invariants(m: &HModule) -> Matrix {
    let f = m.field();
    let blocks = m
        .action
        .iter()
        .zip(m.hopf.counit())
        .map(|(a, e)| a.sub(&Matrix::scalar(f, m.dim, e)))
        .collect();
    stacked_kernel(f, m.dim, blocks)
}

/// Basis of `{m : ρ(m) = m ⊗ 1}`.
pub fn coinvariants(m: &HComodule) -> Matrix {
    let f = m.field();
    let blocks = m
        .coefficient_maps()
        .into_iter()
        .zip(m.hopf.unit())
        .map(|(a, u)| a.sub(&Matrix::scalar(f, m.dim, u)))
        .collect();
    stacked_kernel(f, m.dim, blocks)
}

fn same_hopf(a: &Arc<HopfAlgebra>, b: &Arc<HopfAlgebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::Invalid("objects over different Hopf algebras".into()))
    }
}

/// `V ⊗ W` with the diagonal action; basis `v_a ⊗ w_b` at index `a·dim W + b`.
pub fn tensor_modules(v: &HModule, w: &HModule) -> Result<HModule> {
    same_hopf(&v.hopf, &w.hopf)?;
    let h = &v.hopf;
    let f = v.field();
    let action = (0..h.dim())
        .map(|i| {
            let mut m = Matrix::zeros(f, v.dim * w.dim, v.dim * w.dim);
            for (j, k, c) in h.comult(i) {
                m.add_scaled(c, &v.action[*j].kron(&w.action[*k]));
            }
            m
        })
        .collect();
    HModule::new(h.clone(), v.dim * w.dim, action)
}

/// `M ⊗ N` with `ρ(m⊗n) = Σ m₀⊗n₀⊗m₁n₁`.
pub fn tensor_comodules(m: &HComodule, n: &HComodule) -> Result<HComodule> {
    same_hopf(&m.hopf, &n.hopf)?;
    let h = &m.hopf;
    let f = m.field();
    let d = m.dim * n.dim;
    let mm = m.coefficient_maps();
    let nm = n.coefficient_maps();
    let mut maps = vec![Matrix::zeros(f, d, d); h.dim()];
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let prod = h.mul_basis(i, j);
            if prod.iter().all(Scalar::is_zero) {
                continue;
            }
            let kr = mm[i].kron(&nm[j]);
            for (k, c) in prod.iter().enumerate() {
                maps[k].add_scaled(c, &kr);
            }
        }
    }
    HComodule::from_coefficient_maps(h.clone(), d, &maps)
}

/// Kind tag for [`tensor_rep`].
pub enum RepPair<'a> {
    Modules(&'a HModule, &'a HModule),
    Comodules(&'a HComodule, &'a HComodule),
}

pub enum RepValue {
    Module(HModule),
    Comodule(HComodule),
}

pub fn tensor_rep(pair: RepPair<'_>) -> Result<RepValue> {
    match pair {
        RepPair::Modules(a, b) => tensor_modules(a, b).map(RepValue::Module),
        RepPair::Comodules(a, b) => tensor_comodules(a, b).map(RepValue::Comodule),
    }
}

/// `Hom_K(V, W)` with `(hf)(v) = Σ h₁ f(S(h₂) v)`. A map `F` (a `dim W × dim V`
/// matrix) has coordinates `F[a][b]` at index `a·dim V + b`.
pub fn hom_hmodule(v: &HModule, w: &HModule) -> Result<HModule> {
    same_hopf(&v.hopf, &w.hopf)?;
    let h = &v.hopf;
    let f = v.field();
    let d = v.dim * w.dim;
    let action = (0..h.dim())
        .map(|i| {
            let mut m = Matrix::zeros(f, d, d);
            for (j, k, c) in h.comult(i) {
                let s = v.act(&h.apply_antipode(&h.basis(*k)));
                m.add_scaled(c, &w.action[*j].kron(&s.transpose()));
            }
            m
        })
        .collect();
    HModule::new(h.clone(), d, action)
}

/// Flattens a `dim W × dim V` matrix into `Hom_K(V, W)` coordinates.
pub fn flatten_map(m: &Matrix) -> Vector {
    m.data().to_vec()
}

pub fn unflatten_map(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_data(field, rows, cols, v.to_vec()).expect("coordinate count")
}

/// Basis (flattened) of the H-linear maps `V → W`, from the linear system
/// `A_W(e_i) F = F A_V(e_i)`.
pub fn h_linear_maps(v: &HModule, w: &HModule) -> Result<Matrix> {
    same_hopf(&v.hopf, &w.hopf)?;
    let f = v.field();
    let blocks: Vec<Matrix> = (0..v.hopf.dim())
        .map(|i| {
            // vec(A F) - vec(F B) = (A ⊗ I - I ⊗ Bᵀ) vec F
            w.action[i]
                .kron(&Matrix::identity(f, v.dim))
                .sub(&Matrix::identity(f, w.dim).kron(&v.action[i].transpose()))
        })
        .collect();
    Ok(stacked_kernel(f, v.dim * w.dim, blocks))
}

/// Comodule over `H` to module over `dual` (which must be `dual_hopf(H)` in
/// the fixed dual basis): `e_i*` acts by `ρ_i`.
pub fn comodule_to_dual_module(m: &HComodule, dual: &Arc<HopfAlgebra>) -> Result<HModule> {
    if dual.dim() != m.hopf.dim() {
        return Err(Error::Dimension("dual Hopf algebra of another dimension".into()));
    }
    HModule::new(dual.clone(), m.dim, m.coefficient_maps())
}

/// Inverse of [`comodule_to_dual_module`]: `ρ_i` is the action of `e_i*`.
pub fn dual_module_to_comodule(m: &HModule, hopf: &Arc<HopfAlgebra>) -> Result<HComodule> {
    if m.hopf.dim() != hopf.dim() {
        return Err(Error::Dimension("dual Hopf algebra of another dimension".into()));
    }
    HComodule::from_coefficient_maps(hopf.clone(), m.dim, &m.action)
}

/// The locally finite part together with `dim Hm` for each basis vector `m`.
#[derive(Clone, Debug)]
pub struct LocallyFinitePart {
    pub module: HModule,
    pub cyclic_dims: Vec<usize>,
}

/// On a finite-dimensional carrier every cyclic submodule is finite, so the
/// locally finite part is everything; the cyclic dimensions are still
/// computed.
pub fn locally_finite_part(m: &HModule) -> LocallyFinitePart {
    let f = m.field();
    let cyclic_dims = (0..m.dim)
        .map(|i| {
            let mut e = Matrix::zeros(f, m.dim, 1);
            e[(i, 0)] = f.one();
            cyclic_dim(m, &e.col(0))
        })
        .collect();
    LocallyFinitePart { module: m.clone(), cyclic_dims }
}

/// `dim Hm`.
pub fn cyclic_dim(m: &HModule, v: &[Scalar]) -> usize {
    let cols: Vec<Vector> = m.action.iter().map(|a| a.apply(v)).collect();
    Matrix::from_columns(m.field(), m.dim, &cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_named_hopf, dual_hopf, sweedler, GroupTable, NamedHopf};

    const Q: Field = Field::Rationals;

    fn f1() -> Arc<HopfAlgebra> {
        Arc::new(build_named_hopf(Q, &NamedHopf::GroupAlgebra(GroupTable::cyclic(2))).unwrap())
    }

    fn f2() -> Arc<HopfAlgebra> {
        Arc::new(build_named_hopf(Field::Prime(2), &NamedHopf::GroupAlgebra(GroupTable::cyclic(2))).unwrap())
    }

    fn sign(h: &Arc<HopfAlgebra>) -> HModule {
        HModule::character(h, &[Q.one(), Q.from_i64(-1)]).unwrap()
    }

    #[test]
    fn validation_examples() {
        let h = f1();
        assert!(validate_module(&HModule::trivial(&h)).is_empty());
        assert!(validate_module(&sign(&h)).is_empty());
        let bad = HModule::character(&h, &[Q.one(), Q.from_i64(2)]).unwrap();
        assert!(validate_module(&bad).mentions("representation law"));
        assert!(validate_comodule(&HComodule::grouplike_line(&h, 1)).is_empty());
        let s = Arc::new(sweedler(Q));
        assert!(validate_module(&HModule::regular(&s)).is_empty());
    }

    #[test]
    fn invariant_examples() {
        let h = f1();
        assert_eq!(invariants(&HModule::trivial(&h)).cols(), 1);
        assert_eq!(invariants(&sign(&h)).cols(), 0);
        let g2 = f2();
        let inv = invariants(&HModule::regular(&g2));
        assert_eq!(inv.cols(), 1);
        assert_eq!(inv.col(0), vec![Field::Prime(2).one(), Field::Prime(2).one()]);
    }

    #[test]
    fn invariants_checked_per_element() {
        let s = Arc::new(sweedler(Q));
        let m = HModule::regular(&s);
        let inv = invariants(&m);
        for i in 0..s.dim() {
            let d = m.action(i).sub(&Matrix::scalar(Q, m.dim(), &s.counit()[i]));
            assert!(d.mul(&inv).is_zero());
        }
    }

    #[test]
    fn coinvariant_examples() {
        let h = f1();
        assert_eq!(coinvariants(&HComodule::trivial(&h, 2)).cols(), 2);
        assert_eq!(coinvariants(&HComodule::grouplike_line(&h, 1)).cols(), 0);
        let two = HComodule::from_coefficient_maps(
            h.clone(),
            2,
            &[Matrix::from_ints(Q, 2, 2, &[1, 0, 0, 0]), Matrix::from_ints(Q, 2, 2, &[0, 0, 0, 1])],
        )
        .unwrap();
        assert!(validate_comodule(&two).is_empty());
        let c = coinvariants(&two);
        assert_eq!(c, Matrix::from_ints(Q, 2, 1, &[1, 0]));
    }

    #[test]
    fn tensor_examples() {
        let h = f1();
        let ss = tensor_modules(&sign(&h), &sign(&h)).unwrap();
        assert_eq!(ss, HModule::trivial(&h));
        let m = HModule::regular(&h);
        assert_eq!(tensor_modules(&m, &HModule::trivial(&h)).unwrap(), m);
        let g = HComodule::grouplike_line(&h, 1);
        let gg = tensor_comodules(&g, &g).unwrap();
        assert_eq!(coinvariants(&gg).cols(), 1);
        assert!(validate_comodule(&gg).is_empty());
    }

    #[test]
    fn hom_module_examples() {
        let h = f1();
        let t = HModule::trivial(&h);
        let hom = hom_hmodule(&t, &t).unwrap();
        assert_eq!(hom, t);
        let st = hom_hmodule(&sign(&h), &t).unwrap();
        assert_eq!(st, sign(&h));
        assert_eq!(invariants(&st).cols(), 0);
        let s = Arc::new(sweedler(Q));
        let r = HModule::regular(&s);
        let end = hom_hmodule(&r, &r).unwrap();
        assert!(validate_module(&end).is_empty());
        let id = flatten_map(&Matrix::identity(Q, 4));
        let inv = invariants(&end);
        assert!(crate::exactlin::span_contains(&inv, &Matrix::column_vector(&id, Q)));
    }

    #[test]
    fn hom_invariants_match_linear_system() {
        let s = Arc::new(sweedler(Q));
        let r = HModule::regular(&s);
        let t = HModule::trivial(&s);
        for (v, w) in [(&r, &t), (&t, &r), (&r, &r)] {
            let a = invariants(&hom_hmodule(v, w).unwrap());
            let b = h_linear_maps(v, w).unwrap();
            assert!(crate::exactlin::span_equal(&a, &b));
        }
    }

    #[test]
    fn dual_correspondence() {
        let h = f1();
        let d = Arc::new(dual_hopf(&h));
        let t = comodule_to_dual_module(&HComodule::trivial(&h, 1), &d).unwrap();
        assert!(validate_module(&t).is_empty());
        // e_i* acts by e_i*(1)
        for i in 0..2 {
            assert_eq!(t.action(i)[(0, 0)], h.unit()[i]);
        }
        let g = HComodule::grouplike_line(&h, 1);
        let gm = comodule_to_dual_module(&g, &d).unwrap();
        assert!(gm.action(1).is_identity());
        assert!(gm.action(0).is_zero());
        assert_eq!(dual_module_to_comodule(&gm, &h).unwrap(), g);
        assert_eq!(coinvariants(&g).cols(), invariants(&gm).cols());
    }

    #[test]
    fn locally_finite_examples() {
        let h = f1();
        assert_eq!(locally_finite_part(&HModule::trivial(&h)).cyclic_dims, vec![1]);
        let g2 = f2();
        let lf = locally_finite_part(&HModule::regular(&g2));
        assert_eq!(lf.cyclic_dims[0], 2);
        assert_eq!(lf.module.dim(), 2);
    }
}
