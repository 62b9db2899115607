//! Oracles that share no code with the library's solvers: hand-rolled
//! modular elimination, inhomogeneous cochains for group cohomology and
//! exhaustive enumeration of morphisms over small prime fields.

#![allow(dead_code)]

use std::sync::Arc;

use hopfcat::catmod::{direct_sum, representable, CategoryPair};
use hopfcat::fixtures;
use hopfcat::hcat::LinCategory;
use hopfcat::relhopf::{representable_relhopf, tensor_comod};
use hopfcat::{CatModule, CoHCategory, Field, HComodule, Matrix, RelHopfModule, Side};

/// Rank of an integer matrix modulo a prime.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let k = a[r][c];
                for j in 0..cols {
                    a[r][j] = (a[r][j] - k * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (k, l) = (a[r][c], a[rank][c]);
                for j in 0..cols {
                    a[r][j] = a[r][j] * l - k * a[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H^q(G, 𝔽_p)` for `q = 0..=top`, trivial coefficients, from the
/// inhomogeneous cochains `C^q = Maps(G^q, 𝔽_p)`.
pub fn bar_cohomology(table: &[Vec<usize>], p: i64, top: usize) -> Vec<usize> {
    let n = table.len();
    let tuples = |q: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..q {
            out = out.into_iter().flat_map(|t| (0..n).map(move |g| [t.clone(), vec![g]].concat())).collect();
        }
        out
    };
    let index = |t: &[usize]| t.iter().fold(0, |acc, &g| acc * n + g);
    // δ: C^q → C^{q+1} as a (n^{q+1} × n^q) matrix
    let coboundary = |q: usize| -> Vec<Vec<i64>> {
        let src = n.pow(q as u32);
        tuples(q + 1)
            .iter()
            .map(|t| {
                let mut row = vec![0i64; src];
                row[index(&t[1..])] += 1;
                for i in 0..q {
                    let mut s = t[..i].to_vec();
                    s.push(table[t[i]][t[i + 1]]);
                    s.extend_from_slice(&t[i + 2..]);
                    row[index(&s)] += if (i + 1) % 2 == 0 { 1 } else { -1 };
                }
                row[index(&t[..q])] += if (q + 1) % 2 == 0 { 1 } else { -1 };
                row
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=top).map(|q| rank_mod(&coboundary(q), p)).collect();
    (0..=top).map(|q| n.pow(q as u32) - ranks[q] - if q > 0 { ranks[q - 1] } else { 0 }).collect()
}

/// `dim Ext^q_A(T, T)` over `A = ℚ[x]/(x²)` from the periodic resolution
/// `⋯ → A --x--> A --x--> A → T`, for a module `T` on which `x` acts by
/// `x_action`: `Hom_A(A, T) = T` and the differential is `x_action`.
pub fn x_resolution_ext(x_action: &[Vec<i64>], top: usize) -> Vec<usize> {
    let d = x_action.len();
    let r = rank_rational(x_action);
    // every cochain group is T, every differential is x acting on T
    (0..=top).map(|q| d - r - if q > 0 { r } else { 0 }).collect()
}

/// Entries of a library matrix as integers (prime-field residues).
pub fn ints(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].to_i64().expect("small residue")).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize, p: i64) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<i64>().rem_euclid(p)).collect())
        .collect()
}

/// One instance for the enumeration oracle: plain modules over a common
/// category, optionally with per-object coactions (row `a·n + i`).
pub struct Instance {
    pub name: String,
    pub source: CatModule,
    pub target: CatModule,
    pub coactions: Option<(Vec<Matrix>, Vec<Matrix>, usize)>,
}

/// Every family of per-object matrices satisfying naturality (and
/// colinearity when coactions are given), as flattened row-major
/// components concatenated over objects.
pub fn enumerate_morphisms(inst: &Instance, p: i64) -> Vec<Vec<i64>> {
    let (m, n) = (&inst.source, &inst.target);
    let c = m.covariant();
    let k = c.num_objects();
    let shapes: Vec<(usize, usize)> = (0..k).map(|x| (n.dim(x), m.dim(x))).collect();
    let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
    assert!(len <= 12, "{}: {len} unknowns is too many to enumerate", inst.name);
    let total = (p as u64).pow(len as u32);
    let cov_m: Vec<Vec<Vec<Vec<i64>>>> = m.cov_maps().iter().map(|l| l.iter().map(ints).collect()).collect();
    let cov_n: Vec<Vec<Vec<Vec<i64>>>> = n.cov_maps().iter().map(|l| l.iter().map(ints).collect()).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mut digits = Vec::with_capacity(len);
        let mut rest = code;
        for _ in 0..len {
            digits.push((rest % p as u64) as i64);
            rest /= p as u64;
        }
        let mut at = 0;
        let comps: Vec<Vec<Vec<i64>>> = shapes
            .iter()
            .map(|&(r, cc)| {
                let block = (0..r).map(|i| digits[at + i * cc..at + (i + 1) * cc].to_vec()).collect();
                at += r * cc;
                block
            })
            .collect();
        let natural = (0..k).all(|x| {
            (0..k).all(|y| {
                cov_m[x * k + y].iter().zip(&cov_n[x * k + y]).all(|(ma, na)| {
                    let left = mat_mul(na, &comps[x], n.dim(x), m.dim(x), p);
                    let right = mat_mul(&comps[y], ma, m.dim(y), m.dim(x), p);
                    left == right
                })
            })
        });
        if !natural {
            continue;
        }
        if let Some((cm, cn, hn)) = &inst.coactions {
            let colinear = (0..k).all(|x| {
                let (dm, dn) = (m.dim(x), n.dim(x));
                let (rm, rn) = (ints(&cm[x]), ints(&cn[x]));
                let left = mat_mul(&rn, &comps[x], dn, dm, p);
                // (η ⊗ I) ρ_M
                let kron: Vec<Vec<i64>> = (0..dn * hn)
                    .map(|row| (0..dm * hn).map(|col| if row % hn == col % hn { comps[x][row / hn][col / hn] } else { 0 }).collect())
                    .collect();
                let right = mat_mul(&kron, &rm, dm * hn, dm, p);
                left == right
            });
            if !colinear {
                continue;
            }
        }
        out.push(digits);
    }
    out
}

fn f(p: u64) -> Field {
    Field::Prime(p)
}

pub fn dual_numbers_mod(p: u64) -> LinCategory {
    let q = f(p);
    let e = |i: usize| -> Vec<_> { (0..2).map(|j| if i == j { q.one() } else { q.zero() }).collect() };
    let mult = vec![vec![e(0), e(1)], vec![e(1), vec![q.zero(), q.zero()]]];
    LinCategory::one_object(q, vec!["1".into(), "x".into()], &mult, e(0)).unwrap()
}

fn sum(cats: &Arc<CategoryPair>, side: Side, parts: &[&CatModule]) -> CatModule {
    direct_sum(cats, side, parts).unwrap().module
}

/// Plain module instances over prime fields with total carrier dimension
/// at most six.
pub fn plain_instances() -> Vec<(Instance, i64)> {
    let mut out = Vec::new();
    let mut add = |tag: &str, mods: Vec<(&str, CatModule)>, p: i64| {
        for (a, m) in &mods {
            for (b, n) in &mods {
                if m.total_dim() + n.total_dim() <= 6 {
                    out.push((
                        Instance { name: format!("{tag}: {a} -> {b}"), source: m.clone(), target: n.clone(), coactions: None },
                        p,
                    ));
                }
            }
        }
    };

    // dual numbers over F3, right modules
    let cats = CategoryPair::new(dual_numbers_mod(3));
    let q = f(3);
    let t = CatModule::new(cats.clone(), Side::Right, vec![1], vec![vec![Matrix::identity(q, 1), Matrix::zeros(q, 1, 1)]]).unwrap();
    let r = representable(&cats, 0, Side::Right);
    let tt = sum(&cats, Side::Right, &[&t, &t]);
    let rt = sum(&cats, Side::Right, &[&r, &t]);
    add("F3[x]/(x^2)", vec![("T", t), ("R", r), ("T+T", tt), ("R+T", rt)], 3);

    // F2[C2] on one object, left modules
    let h = fixtures::f2();
    let cats = CategoryPair::new(LinCategory::algebra_category(&h));
    let q = f(2);
    let triv = CatModule::new(cats.clone(), Side::Left, vec![1], vec![vec![Matrix::identity(q, 1), Matrix::identity(q, 1)]]).unwrap();
    let reg = representable(&cats, 0, Side::Left);
    let rt = sum(&cats, Side::Left, &[&reg, &triv]);
    let tt = sum(&cats, Side::Left, &[&triv, &triv]);
    add("F2[C2]", vec![("k", triv), ("F2[C2]", reg), ("k+k", tt), ("F2[C2]+k", rt)], 2);

    // arrow category over F3, left modules
    let cats = CategoryPair::new(fixtures::arrow_category(f(3)));
    let q = f(3);
    let id = |d| Matrix::identity(q, d);
    let module = |dims: [usize; 2], alpha: Matrix| {
        CatModule::from_covariant(cats.clone(), Side::Left, dims.to_vec(), vec![vec![id(dims[0])], vec![alpha], vec![], vec![id(dims[1])]]).unwrap()
    };
    let pa = representable(&cats, 0, Side::Left);
    let pb = representable(&cats, 1, Side::Left);
    let sa = module([1, 0], Matrix::zeros(q, 0, 1));
    let v = module([2, 1], Matrix::from_ints(q, 1, 2, &[1, 0]));
    let w = module([1, 2], Matrix::from_ints(q, 2, 1, &[1, 2]));
    add("A->B over F3", vec![("P_A", pa), ("P_B", pb), ("S_A", sa), ("V", v), ("W", w)], 3);
    out
}

/// `ρ(α) = α ⊗ g` on the arrow category over `F_p`, coacted on by `F_p[C₂]`.
pub fn d1_mod(p: u64) -> Arc<CoHCategory> {
    let q = f(p);
    let h = fixtures::cyclic_group_algebra(q, 2);
    let one = |c: i64| Matrix::from_ints(q, 1, 1, &[c]);
    let empty = Matrix::zeros(q, 0, 0);
    let maps = vec![vec![one(1), one(0)], vec![one(0), one(1)], vec![empty.clone(), empty], vec![one(1), one(0)]];
    Arc::new(CoHCategory::from_coefficient_maps(Arc::new(fixtures::arrow_category(q)), h, &maps).unwrap())
}

pub fn relhopf_modules(d: &Arc<CoHCategory>) -> Vec<(String, RelHopfModule)> {
    let q = d.base().field();
    let h = d.hopf();
    let g = h.label_index("g").unwrap();
    let one = Matrix::identity(q, 1);
    let base = CatModule::from_covariant(d.cats().clone(), Side::Left, vec![1, 1], vec![vec![one.clone()], vec![one.clone()], vec![], vec![one]])
        .unwrap();
    let m1 = RelHopfModule::new(d.clone(), base, vec![HComodule::trivial(h, 1), HComodule::grouplike_line(h, g)]).unwrap();
    let line = HComodule::grouplike_line(h, g);
    let sa_base = CatModule::from_covariant(
        d.cats().clone(),
        Side::Left,
        vec![1, 0],
        vec![vec![Matrix::identity(q, 1)], vec![Matrix::zeros(q, 0, 1)], vec![], vec![Matrix::identity(q, 0)]],
    )
    .unwrap();
    let sa = RelHopfModule::new(d.clone(), sa_base, vec![HComodule::trivial(h, 1), HComodule::trivial(h, 0)]).unwrap();
    vec![
        ("M1".into(), m1.clone()),
        ("M1 shifted".into(), tensor_comod(&m1, &line).unwrap()),
        ("P_A".into(), representable_relhopf(d, 0)),
        ("P_B".into(), representable_relhopf(d, 1)),
        ("S_A".into(), sa.clone()),
        ("S_A shifted".into(), tensor_comod(&sa, &line).unwrap()),
    ]
}

pub fn relhopf_instances() -> Vec<(Instance, RelHopfModule, RelHopfModule, i64)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let d = d1_mod(p);
        let mods = relhopf_modules(&d);
        for (a, m) in &mods {
            for (b, n) in &mods {
                if m.base().total_dim() + n.base().total_dim() > 6 {
                    continue;
                }
                let co = |x: &RelHopfModule| x.hcomods().iter().map(|c| c.coaction().clone()).collect::<Vec<_>>();
                out.push((
                    Instance {
                        name: format!("D1 over F{p}: {a} -> {b}"),
                        source: m.base().clone(),
                        target: n.base().clone(),
                        coactions: Some((co(m), co(n), d.hopf().dim())),
                    },
                    m.clone(),
                    n.clone(),
                    p as i64,
                ));
            }
        }
    }
    out
}
