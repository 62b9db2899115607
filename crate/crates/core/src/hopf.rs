//! Finite-dimensional Hopf algebras given by structure constants.

use crate::error::{Error, Result};
use crate::exactlin::{axpy, unit_vector, zero_vector, Field, Matrix, Scalar, Vector};
use crate::report::Report;

/// Raw structure constants. `comult[i][j][k]` is the coefficient of
/// `e_j ⊗ e_k` in `Δ(e_i)`; `mult[i][j]` is the coordinate vector of
/// `e_i e_j`; column `j` of `antipode` is `S(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub field: Field,
    pub labels: Vec<String>,
    pub mult: Vec<Vec<Vector>>,
    pub unit: Vector,
    pub comult: Vec<Vec<Vec<Scalar>>>,
    pub counit: Vector,
    pub antipode: Matrix,
    pub antipode_inv: Matrix,
}

/// A Hopf algebra with bijective antipode on the basis `e_0..e_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    field: Field,
    labels: Vec<String>,
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    comult: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vector,
    antipode: Matrix,
    antipode_inv: Matrix,
}

impl HopfAlgebra {
    /// Builds from structure constants, computing `S⁻¹`. Only shapes are
    /// checked here; use [`check_hopf`] for the axioms.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        comult: Vec<Vec<Vec<Scalar>>>,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<HopfAlgebra> {
        let antipode_inv = antipode_inverse_of(&antipode)?;
        HopfAlgebra::from_data(HopfData {
            field,
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
            antipode_inv,
        })
    }

    /// Builds from raw data with a supplied `S⁻¹`, checking shapes only.
    pub fn from_data(data: HopfData) -> Result<HopfAlgebra> {
        let n = data.labels.len();
        let bad = |what: &str| Err(Error::Dimension(format!("hopf algebra of dimension {n}: {what}")));
        if data.mult.len() != n || data.mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("multiplication tensor");
        }
        if data.unit.len() != n || data.counit.len() != n {
            return bad("unit or counit");
        }
        if data.comult.len() != n
            || data.comult.iter().any(|t| t.len() != n || t.iter().any(|r| r.len() != n))
        {
            return bad("comultiplication tensor");
        }
        if data.antipode.shape() != (n, n) || data.antipode_inv.shape() != (n, n) {
            return bad("antipode");
        }
        let all_in_field = data
            .mult
            .iter()
            .flatten()
            .flatten()
            .chain(data.unit.iter())
            .chain(data.counit.iter())
            .chain(data.comult.iter().flatten().flatten())
            .all(|s| s.field() == data.field)
            && data.antipode.field() == data.field
            && data.antipode_inv.field() == data.field;
        if !all_in_field {
            return Err(Error::FieldMismatch(format!("structure constants not all over {}", data.field)));
        }
        let comult = data
            .comult
            .iter()
            .map(|t| {
                let mut terms = Vec::new();
                for (j, row) in t.iter().enumerate() {
                    for (k, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            terms.push((j, k, c.clone()));
                        }
                    }
                }
                terms
            })
            .collect();
        Ok(HopfAlgebra {
            field: data.field,
            labels: data.labels,
            mult: data.mult,
            unit: data.unit,
            comult,
            counit: data.counit,
            antipode: data.antipode,
            antipode_inv: data.antipode_inv,
        })
    }

    pub fn to_data(&self) -> HopfData {
        let n = self.dim();
        let comult = (0..n)
            .map(|i| {
                let mut t = vec![zero_vector(self.field, n); n];
                for (j, k, c) in &self.comult[i] {
                    t[*j][*k] = c.clone();
                }
                t
            })
            .collect();
        HopfData {
            field: self.field,
            labels: self.labels.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            comult,
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            antipode_inv: self.antipode_inv.clone(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
    pub fn unit(&self) -> &Vector {
        &self.unit
    }
    pub fn counit(&self) -> &Vector {
        &self.counit
    }
    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }
    pub fn antipode_inv(&self) -> &Matrix {
        &self.antipode_inv
    }
    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    /// `e_i e_j`
    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i][j]
    }

    /// Sparse `Δ(e_i)` as `(j, k, c)` terms of `c e_j ⊗ e_k`.
    pub fn comult(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[i]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                axpy(&mut out, &(x * y), &self.mult[i][j]);
            }
        }
        out
    }

    /// `Δ(a)` as a dense `n²` vector indexed `j * n + k`.
    pub fn coproduct(&self, a: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(self.field, n * n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comult[i] {
                out[j * n + k] += &(x * c);
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[Scalar]) -> Scalar {
        let mut s = self.field.zero();
        for (x, e) in a.iter().zip(&self.counit) {
            if !x.is_zero() {
                s += &(x * e);
            }
        }
        s
    }

    pub fn apply_antipode(&self, a: &[Scalar]) -> Vector {
        self.antipode.apply(a)
    }

    pub fn apply_antipode_inv(&self, a: &[Scalar]) -> Vector {
        self.antipode_inv.apply(a)
    }

    /// Index of a basis element `g` with `Δ(g) = g ⊗ g` and `ε(g) = 1`.
    pub fn is_grouplike(&self, i: usize) -> bool {
        let n = self.dim();
        let mut expected = zero_vector(self.field, n * n);
        expected[i * n + i] = self.field.one();
        self.coproduct(&self.basis(i)) == expected && self.counit[i].is_one()
    }

    /// Index of the basis element equal to the unit, when there is one.
    pub fn unit_index(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| self.unit == self.basis(i))
    }

    /// Product of two dense tensors in `H ⊗ H`.
    fn tensor_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(self.field, n * n);
        for (ab, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (j, k) = (ab / n, ab % n);
            for (lm, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (l, m) = (lm / n, lm % n);
                let c = x * y;
                for (p, u) in self.mult[j][l].iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (q, v) in self.mult[k][m].iter().enumerate() {
                        if !v.is_zero() {
                            out[p * n + q] += &(&c * &(u * v));
                        }
                    }
                }
            }
        }
        out
    }
}

fn antipode_inverse_of(s: &Matrix) -> Result<Matrix> {
    s.inverse().ok_or(Error::AntipodeNotBijective)
}

/// `S⁻¹` recomputed from `S`.
pub fn antipode_inverse(h: &HopfAlgebra) -> Result<Matrix> {
    antipode_inverse_of(h.antipode())
}

/// Verifies the eight axiom families; empty report iff all hold exactly.
pub fn check_hopf(h: &HopfAlgebra) -> Report {
    let mut r = Report::new();
    let n = h.dim();
    let f = h.field;
    let lab = |i: usize| h.labels[i].as_str();

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = h.mul(&h.mult[i][j], &h.basis(k));
                let right = h.mul(&h.basis(i), &h.mult[j][k]);
                r.check(left == right, "associativity", || {
                    format!("({}{}){} != {}({}{})", lab(i), lab(j), lab(k), lab(i), lab(j), lab(k))
                });
            }
        }
    }

    for i in 0..n {
        let e = h.basis(i);
        r.check(h.mul(&h.unit, &e) == e && h.mul(&e, &h.unit) == e, "unit", || {
            format!("1 is not a two-sided unit on {}", lab(i))
        });
    }

    for i in 0..n {
        // (Δ⊗id)Δ and (id⊗Δ)Δ as dense n³ tensors
        let mut left = zero_vector(f, n * n * n);
        let mut right = zero_vector(f, n * n * n);
        for (j, k, c) in &h.comult[i] {
            for (a, b, d) in &h.comult[*j] {
                left[(a * n + b) * n + k] += &(c * d);
            }
            for (a, b, d) in &h.comult[*k] {
                right[(j * n + a) * n + b] += &(c * d);
            }
        }
        r.check(left == right, "coassociativity", || format!("fails on {}", lab(i)));
    }

    for i in 0..n {
        let mut left = zero_vector(f, n);
        let mut right = zero_vector(f, n);
        for (j, k, c) in &h.comult[i] {
            left[*k] += &(c * &h.counit[*j]);
            right[*j] += &(c * &h.counit[*k]);
        }
        let e = h.basis(i);
        r.check(left == e && right == e, "counit", || format!("fails on {}", lab(i)));
    }

    let d_unit = h.coproduct(&h.unit);
    let mut one_one = zero_vector(f, n * n);
    for (a, x) in h.unit.iter().enumerate() {
        for (b, y) in h.unit.iter().enumerate() {
            one_one[a * n + b] = x * y;
        }
    }
    r.check(d_unit == one_one, "comultiplication multiplicative", || "Δ(1) != 1⊗1".into());
    for i in 0..n {
        let di = h.coproduct(&h.basis(i));
        for j in 0..n {
            let dj = h.coproduct(&h.basis(j));
            let lhs = h.coproduct(&h.mult[i][j]);
            r.check(lhs == h.tensor_mul(&di, &dj), "comultiplication multiplicative", || {
                format!("Δ({}{}) != Δ({})Δ({})", lab(i), lab(j), lab(i), lab(j))
            });
        }
    }

    r.check(h.counit_of(&h.unit).is_one(), "counit multiplicative", || "ε(1) != 1".into());
    for i in 0..n {
        for j in 0..n {
            let lhs = h.counit_of(&h.mult[i][j]);
            r.check(lhs == &h.counit[i] * &h.counit[j], "counit multiplicative", || {
                format!("ε({}{}) != ε({})ε({})", lab(i), lab(j), lab(i), lab(j))
            });
        }
    }

    for i in 0..n {
        let mut left = zero_vector(f, n);
        let mut right = zero_vector(f, n);
        for (j, k, c) in &h.comult[i] {
            let s_j = h.antipode.col(*j);
            let s_k = h.antipode.col(*k);
            axpy(&mut left, c, &h.mul(&s_j, &h.basis(*k)));
            axpy(&mut right, c, &h.mul(&h.basis(*j), &s_k));
        }
        let mut expected = zero_vector(f, n);
        axpy(&mut expected, &h.counit[i], &h.unit);
        r.check(left == expected && right == expected, "antipode", || {
            format!("S(h1)h2 = ε(h)1 = h1S(h2) fails on {}", lab(i))
        });
    }

    let id = Matrix::identity(f, n);
    r.check(
        h.antipode.mul(&h.antipode_inv) == id && h.antipode_inv.mul(&h.antipode) == id,
        "antipode inverse",
        || "S S⁻¹ != id".into(),
    );
    r
}

/// A finite group by its multiplication table: `table[a][b]` is the index
/// of `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn cyclic(n: usize) -> GroupTable {
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        GroupTable { labels, table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Checks closure, associativity, identity and inverses; returns the
    /// identity index and the inverse map.
    pub fn validate(&self) -> Result<(usize, Vec<usize>)> {
        let n = self.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not an n×n array of element indices".into()));
        }
        let t = &self.table;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| t[e][a] == a && t[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| t[a][b] == e && t[b][a] == e)
                .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", self.labels[a])))?;
            inv.push(b);
        }
        Ok((e, inv))
    }
}

/// The named Hopf algebras the library can build directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedHopf {
    GroupAlgebra(GroupTable),
    DualGroupAlgebra(GroupTable),
    Sweedler,
}

pub fn build_named_hopf(field: Field, spec: &NamedHopf) -> Result<HopfAlgebra> {
    match spec {
        NamedHopf::GroupAlgebra(t) => group_algebra(field, t),
        NamedHopf::DualGroupAlgebra(t) => dual_group_algebra(field, t),
        NamedHopf::Sweedler => Ok(sweedler(field)),
    }
}

fn group_algebra(field: Field, t: &GroupTable) -> Result<HopfAlgebra> {
    let (e, inv) = t.validate()?;
    let n = t.len();
    let b = |i: usize| unit_vector(field, n, i);
    let mult = (0..n).map(|a| (0..n).map(|c| b(t.table[a][c])).collect()).collect();
    let comult = (0..n)
        .map(|g| {
            let mut m = vec![zero_vector(field, n); n];
            m[g][g] = field.one();
            m
        })
        .collect();
    let counit = vec![field.one(); n];
    let antipode = Matrix::from_fn(field, n, n, |i, j| if inv[j] == i { field.one() } else { field.zero() });
    HopfAlgebra::new(field, t.labels.clone(), mult, b(e), comult, counit, antipode)
}

fn dual_group_algebra(field: Field, t: &GroupTable) -> Result<HopfAlgebra> {
    let (e, inv) = t.validate()?;
    let n = t.len();
    let labels = t.labels.iter().map(|l| format!("d_{l}")).collect();
    let mult = (0..n)
        .map(|a| {
            (0..n)
                .map(|c| if a == c { unit_vector(field, n, a) } else { zero_vector(field, n) })
                .collect()
        })
        .collect();
    let unit = vec![field.one(); n];
    let comult = (0..n)
        .map(|g| {
            let mut m = vec![zero_vector(field, n); n];
            for a in 0..n {
                for c in 0..n {
                    if t.table[a][c] == g {
                        m[a][c] = field.one();
                    }
                }
            }
            m
        })
        .collect();
    let counit = unit_vector(field, n, e);
    let antipode = Matrix::from_fn(field, n, n, |i, j| if inv[j] == i { field.one() } else { field.zero() });
    HopfAlgebra::new(field, labels, mult, unit, comult, counit, antipode)
}

/// Sweedler's four-dimensional Hopf algebra on `{1, g, x, gx}`.
pub fn sweedler(field: Field) -> HopfAlgebra {
    let z = || zero_vector(field, 4);
    let v = |c: [i64; 4]| -> Vector { c.iter().map(|&x| field.from_i64(x)).collect() };
    // rows: left factor 1, g, x, gx; columns: right factor
    let mult = vec![
        vec![v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 1, 0]), v([0, 0, 0, 1])],
        vec![v([0, 1, 0, 0]), v([1, 0, 0, 0]), v([0, 0, 0, 1]), v([0, 0, 1, 0])],
        vec![v([0, 0, 1, 0]), v([0, 0, 0, -1]), z(), z()],
        vec![v([0, 0, 0, 1]), v([0, 0, -1, 0]), z(), z()],
    ];
    let mut comult = vec![vec![z(); 4]; 4];
    let one = field.one();
    comult[0][0][0] = one.clone();
    comult[1][1][1] = one.clone();
    // Δ(x) = x⊗1 + g⊗x
    comult[2][2][0] = one.clone();
    comult[2][1][2] = one.clone();
    // Δ(gx) = gx⊗g + 1⊗gx
    comult[3][3][1] = one.clone();
    comult[3][0][3] = one;
    let counit = v([1, 1, 0, 0]);
    // S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x
    let antipode = Matrix::from_ints(field, 4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0]);
    let labels = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    HopfAlgebra::new(field, labels, mult, v([1, 0, 0, 0]), comult, counit, antipode)
        .expect("Sweedler antipode is invertible")
}

/// The dual Hopf algebra on the dual basis `e_i*`, with convolution product.
pub fn dual_hopf(h: &HopfAlgebra) -> HopfAlgebra {
    let n = h.dim();
    let data = h.to_data();
    // e_i* e_j* = Σ_k (coefficient of e_i⊗e_j in Δ(e_k)) e_k*
    let mult = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| data.comult[k][i][j].clone()).collect()).collect())
        .collect();
    // Δ(e_k*) = Σ_{i,j} (coefficient of e_k in e_i e_j) e_i*⊗e_j*
    let comult = (0..n)
        .map(|k| (0..n).map(|i| (0..n).map(|j| data.mult[i][j][k].clone()).collect()).collect())
        .collect();
    let labels = h.labels.iter().map(|l| format!("{l}*")).collect();
    HopfAlgebra::from_data(HopfData {
        field: h.field,
        labels,
        mult,
        unit: h.counit.clone(),
        comult,
        counit: h.unit.clone(),
        antipode: h.antipode.transpose(),
        antipode_inv: h.antipode_inv.transpose(),
    })
    .expect("dual of a well-formed algebra is well-formed")
}

/// The co-opposite Hopf algebra: same algebra, flipped coproduct, antipode
/// `S⁻¹`.
pub fn co_opposite(h: &HopfAlgebra) -> HopfAlgebra {
    let n = h.dim();
    let data = h.to_data();
    let comult = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| data.comult[i][k][j].clone()).collect()).collect())
        .collect();
    HopfAlgebra::from_data(HopfData {
        comult,
        antipode: data.antipode_inv.clone(),
        antipode_inv: data.antipode.clone(),
        ..data
    })
    .expect("co-opposite of a well-formed algebra is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn f1() -> HopfAlgebra {
        build_named_hopf(Q, &NamedHopf::GroupAlgebra(GroupTable::cyclic(2))).unwrap()
    }

    #[test]
    fn group_algebras_pass() {
        let h = f1();
        assert!(check_hopf(&h).is_empty(), "{}", check_hopf(&h));
        assert!(h.antipode().is_identity());
        let f2 = build_named_hopf(Field::prime(2).unwrap(), &NamedHopf::GroupAlgebra(GroupTable::cyclic(2))).unwrap();
        assert!(check_hopf(&f2).is_empty());
        let c3 = build_named_hopf(Q, &NamedHopf::GroupAlgebra(GroupTable::cyclic(3))).unwrap();
        assert!(check_hopf(&c3).is_empty());
        // S is the permutation g ↦ g⁻¹
        assert_eq!(c3.apply_antipode(&c3.basis(1)), c3.basis(2));
    }

    #[test]
    fn sweedler_passes_and_antipode_squares_to_minus_one_on_x() {
        let h = sweedler(Q);
        assert!(check_hopf(&h).is_empty(), "{}", check_hopf(&h));
        let x = h.basis(2);
        let s2x = h.apply_antipode(&h.apply_antipode(&x));
        assert_eq!(s2x, x.iter().map(|c| -c).collect::<Vec<_>>());
        // S⁻¹(x) = gx and S⁻¹(gx) = -x, from inverting S by hand
        assert_eq!(h.apply_antipode_inv(&x), h.basis(3));
        assert_eq!(h.apply_antipode_inv(&h.basis(3)), vec![Q.zero(), Q.zero(), Q.from_i64(-1), Q.zero()]);
        assert_eq!(antipode_inverse(&h).unwrap(), *h.antipode_inv());
    }

    #[test]
    fn broken_multiplication_violates_antipode() {
        let mut d = f1().to_data();
        d.mult[1][1] = vec![Q.zero(), Q.one()];
        let h = HopfAlgebra::from_data(d).unwrap();
        let r = check_hopf(&h);
        assert!(r.mentions("antipode"), "{r}");
    }

    #[test]
    fn singular_antipode_rejected() {
        let d = f1().to_data();
        let err = HopfAlgebra::new(
            d.field,
            d.labels,
            d.mult,
            d.unit,
            d.comult,
            d.counit,
            Matrix::zeros(Q, 2, 2),
        );
        assert_eq!(err, Err(Error::AntipodeNotBijective));
    }

    #[test]
    fn non_groups_rejected() {
        let no_identity = GroupTable { labels: vec!["a".into(), "b".into()], table: vec![vec![0, 0], vec![0, 0]] };
        assert!(matches!(no_identity.validate(), Err(Error::InvalidGroup(_))));
        let out_of_range = GroupTable { labels: vec!["a".into()], table: vec![vec![3]] };
        assert!(out_of_range.validate().is_err());
    }

    #[test]
    fn dual_of_group_algebra_is_dual_group_algebra() {
        let d = dual_hopf(&f1());
        let expected = build_named_hopf(Q, &NamedHopf::DualGroupAlgebra(GroupTable::cyclic(2))).unwrap();
        assert!(check_hopf(&d).is_empty());
        assert_eq!(d.to_data().mult, expected.to_data().mult);
        assert_eq!(d.to_data().comult, expected.to_data().comult);
        assert_eq!(d.unit(), expected.unit());
        assert_eq!(d.counit(), expected.counit());
        assert_eq!(d.antipode(), expected.antipode());
    }

    #[test]
    fn biduality_and_dual_counit() {
        for h in [f1(), sweedler(Q)] {
            let d = dual_hopf(&h);
            assert!(check_hopf(&d).is_empty(), "{}", check_hopf(&d));
            assert_eq!(d.counit(), h.unit());
            let dd = dual_hopf(&d).to_data();
            let hd = h.to_data();
            assert_eq!(dd.mult, hd.mult);
            assert_eq!(dd.comult, hd.comult);
            assert_eq!(dd.unit, hd.unit);
            assert_eq!(dd.counit, hd.counit);
            assert_eq!(dd.antipode, hd.antipode);
        }
    }

    #[test]
    fn co_opposite_is_hopf() {
        let h = co_opposite(&sweedler(Q));
        assert!(check_hopf(&h).is_empty(), "{}", check_hopf(&h));
    }

    #[test]
    fn counit_and_unit_fixed_by_antipode() {
        for h in [f1(), sweedler(Q), dual_hopf(&sweedler(Q))] {
            for i in 0..h.dim() {
                assert_eq!(h.counit_of(&h.apply_antipode(&h.basis(i))), h.counit()[i]);
            }
            assert_eq!(h.apply_antipode(h.unit()), *h.unit());
        }
    }
}
