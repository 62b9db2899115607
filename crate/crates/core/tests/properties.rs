mod common;

use proptest::prelude::*;

use hopfcat::catmod::{module_hom_basis, module_hom_basis_naive, CategoryPair};
use hopfcat::equivariant::tensor_hom_adjunction;
use hopfcat::fixtures::{self, c2fix_modules};
use hopfcat::homological::{ext_plain, Context};
use hopfcat::hopf::{check_hopf, dual_hopf};
use hopfcat::spectral::{ss_from_double_complex, validate_double_complex, verify_spectral_sequence, DoubleComplex};
use hopfcat::{CatModule, Field, HModule, Matrix, Side};

const Q: Field = Field::Rationals;

/// `L·U` with unit diagonals, hence invertible.
fn invertible(n: usize, entries: &[i64]) -> Matrix {
    let mut it = entries.iter().cycle();
    let mut l = Matrix::identity(Q, n);
    let mut u = Matrix::identity(Q, n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = Q.from_i64(*it.next().unwrap());
            u[(j, i)] = Q.from_i64(*it.next().unwrap());
        }
    }
    l.mul(&u)
}

/// A cochain complex in degrees `0..h.len()` with prescribed cohomology `h`
/// and boundary ranks `b` (`b[i]` is the rank of `d: C^i → C^{i+1}`), in a
/// scrambled basis.
fn complex(h: &[usize], b: &[usize], noise: &[i64]) -> (Vec<usize>, Vec<Matrix>) {
    let top = h.len();
    let rank = |i: usize| if i < b.len() { b[i] } else { 0 };
    let before = |i: usize| if i == 0 { 0 } else { rank(i - 1) };
    let dims: Vec<usize> = (0..top).map(|i| h[i] + before(i) + rank(i)).collect();
    let bases: Vec<Matrix> = dims.iter().enumerate().map(|(i, &d)| invertible(d, &noise[i..])).collect();
    let diffs = (0..top - 1)
        .map(|i| {
            // the last rank(i) coordinates of C^i go onto the image block of C^{i+1}
            let mut d = Matrix::zeros(Q, dims[i + 1], dims[i]);
            for k in 0..rank(i) {
                d[(h[i + 1] + k, h[i] + before(i) + k)] = Q.one();
            }
            bases[i + 1].mul(&d).mul(&bases[i].inverse().unwrap())
        })
        .collect();
    (dims, diffs)
}

fn tensor(c: &(Vec<usize>, Vec<Matrix>), d: &(Vec<usize>, Vec<Matrix>)) -> DoubleComplex {
    let (pc, qd) = (c.0.len(), d.0.len());
    let dims: Vec<Vec<usize>> = (0..pc).map(|p| (0..qd).map(|q| c.0[p] * d.0[q]).collect()).collect();
    let mut dc = DoubleComplex::from_dims(Q, dims);
    for p in 0..pc {
        for q in 0..qd {
            if p + 1 < pc {
                dc.horizontal[p][q] = c.1[p].kron(&Matrix::identity(Q, d.0[q]));
            }
            if q + 1 < qd {
                let v = Matrix::identity(Q, c.0[p]).kron(&d.1[q]);
                dc.vertical[p][q] = if p % 2 == 0 { v } else { v.neg() };
            }
        }
    }
    dc
}

fn shape() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..=3).prop_flat_map(|len| (prop::collection::vec(0usize..=2, len), prop::collection::vec(0usize..=1, len - 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_complexes_obey_kunneth(
        (hc, bc) in shape(),
        (hd, bd) in shape(),
        noise in prop::collection::vec(-2i64..=2, 40),
    ) {
        let c = complex(&hc, &bc, &noise);
        let d = complex(&hd, &bd, &noise[7..]);
        let dc = tensor(&c, &d);
        prop_assert!(validate_double_complex(&dc).is_empty());
        let (cols, rows) = ss_from_double_complex(&dc, 6);
        prop_assert!(verify_spectral_sequence(&cols).is_empty());
        prop_assert!(verify_spectral_sequence(&rows).is_empty());
        let top = hc.len() + hd.len() - 2;
        for t in 0..=top {
            let kunneth: usize = (0..hc.len()).filter(|&p| t >= p && t - p < hd.len()).map(|p| hc[p] * hd[t - p]).sum();
            prop_assert_eq!(cols.total[t], kunneth);
            prop_assert_eq!(rows.total[t], kunneth);
            prop_assert_eq!(cols.antidiagonal(t), kunneth);
        }
        // E_2 of the column filtration is H(C) ⊗ H(D) and nothing moves after it
        for p in 0..hc.len() {
            for q in 0..hd.len() {
                prop_assert_eq!(cols.page(2).dims[p][q], hc[p] * hd[q]);
                prop_assert_eq!(cols.infinity[p][q], hc[p] * hd[q]);
            }
        }
    }

    #[test]
    fn adjunction_survives_random_twists(
        plus in 0usize..=2,
        minus in 0usize..=2,
        noise in prop::collection::vec(-2i64..=2, 12),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        prop_assume!(plus + minus > 0);
        let c = fixtures::c2fix();
        let h = c.hopf();
        let n = plus + minus;
        let p = invertible(n, &noise);
        let mut diag = Matrix::identity(Q, n);
        for k in plus..n {
            diag[(k, k)] = Q.from_i64(-1);
        }
        let g = p.mul(&diag).mul(&p.inverse().unwrap());
        let v = HModule::new(h.clone(), n, vec![Matrix::identity(Q, n), g]).unwrap();
        let mods = c2fix_modules(&c);
        let a = tensor_hom_adjunction(&v, &mods[i], &mods[j]).unwrap();
        prop_assert!(a.holds(), "{:?}", a);
    }

    #[test]
    fn hom_basis_matches_naive_solver(
        blocks_m in prop::collection::vec(1usize..=2, 1..=2),
        blocks_n in prop::collection::vec(1usize..=2, 1..=2),
        noise in prop::collection::vec(-2i64..=2, 20),
    ) {
        let cats = CategoryPair::new(fixtures::dual_numbers());
        let m = nilpotent_module(&cats, &blocks_m, &noise);
        let n = nilpotent_module(&cats, &blocks_n, &noise[3..]);
        let fast = module_hom_basis(&m, &n).unwrap();
        let slow = module_hom_basis_naive(&m, &n).unwrap();
        prop_assert_eq!(fast.dim(), slow.dim());
        for eta in slow.morphisms() {
            prop_assert!(fast.coordinates(&eta).is_some());
        }
    }

    #[test]
    fn ext_over_dual_numbers_matches_x_resolution(
        blocks in prop::collection::vec(1usize..=2, 1..=3),
        noise in prop::collection::vec(-2i64..=2, 30),
    ) {
        let cats = CategoryPair::new(fixtures::dual_numbers());
        let t = nilpotent_module(&cats, &[1], &[]);
        let n = nilpotent_module(&cats, &blocks, &noise);
        let e = ext_plain(&t, &n, Context::ModC, 3).unwrap();
        let x = common::ints(n.cov_map(0, 0, 1));
        prop_assert_eq!(e.dims.clone(), common::x_resolution_ext(&x, 3));
        prop_assert_eq!(e.dims, e.injective_dims);
    }

    #[test]
    fn group_algebras_and_duals_are_hopf(n in 1usize..=4, p in prop::sample::select(vec![2u64, 3, 5])) {
        for field in [Q, Field::Prime(p)] {
            let h = fixtures::cyclic_group_algebra(field, n);
            prop_assert!(check_hopf(&h).is_empty());
            prop_assert!(check_hopf(&dual_hopf(&h)).is_empty());
        }
    }
}

/// A right module over `ℚ[x]/(x²)` that is a sum of Jordan blocks of size
/// 1 or 2 for `x`, in a scrambled basis.
fn nilpotent_module(cats: &std::sync::Arc<CategoryPair>, blocks: &[usize], noise: &[i64]) -> CatModule {
    let d: usize = blocks.iter().sum();
    let mut x = Matrix::zeros(Q, d, d);
    let mut at = 0;
    for &b in blocks {
        if b == 2 {
            x[(at + 1, at)] = Q.one();
        }
        at += b;
    }
    let p = if noise.is_empty() { Matrix::identity(Q, d) } else { invertible(d, noise) };
    let x = p.mul(&x).mul(&p.inverse().unwrap());
    CatModule::new(cats.clone(), Side::Right, vec![d], vec![vec![Matrix::identity(Q, d), x]]).unwrap()
}
