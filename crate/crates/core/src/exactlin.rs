//! Exact linear algebra over the rationals and prime fields.
//!
//! Scalars carry their field, matrices are dense and row-major. Row
//! reduction always pivots on the first nonzero entry of a column, so every
//! basis produced downstream is reproducible.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds a prime field, rejecting composites and moduli that would
    /// overflow 64-bit products.
    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Modular { value: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den`, failing when the denominator vanishes in this field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::Parse(format!("{num}/{den}")));
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u64().expect("reduced residue fits")
                };
                let d = Scalar::Modular { value: reduce(den), modulus: p };
                let n = Scalar::Modular { value: reduce(num), modulus: p };
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("{num}/{den} (denominator is 0 mod {p})")))?;
                Ok(n * inv)
            }
        }
    }

    /// Parses `"n"` or `"p/q"`.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| Error::Parse(text.to_string()))?;
        let den: BigInt = den.parse().map_err(|_| Error::Parse(text.to_string()))?;
        self.from_ratio(&num, &den)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Mixing elements of different fields panics: that is an
/// internal invariant violation, never a user error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer representative for prime fields, `None` for non-integral
    /// rationals.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => Some(*value as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// Coordinate vectors.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn scalar(field: Field, n: usize, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds from row-major data, checking the length.
    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!("entry over {} in matrix over {field}", bad.field())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_ints(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&e| field.from_i64(e)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        let cols = columns.len();
        let mut m = Matrix::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Scalar], field: Field) -> Matrix {
        Matrix::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = zero_vector(self.field, self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    out[i] += &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.field.one())
    }

    /// `self += c * rhs`
    pub fn add_scaled(&mut self, c: &Scalar, rhs: &Matrix) {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }

    /// Kronecker product; row index `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            out.set_block(off, 0, b);
            off += b.rows;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let data = rows.into_iter().flatten().collect();
        (Matrix { field: self.field, rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        // Eliminate on whichever orientation is smaller.
        if self.rows <= self.cols {
            self.rref().1.len()
        } else {
            self.transpose().rref().1.len()
        }
    }

    /// Indices of the leading independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// The leading independent columns: a basis of the column span.
    pub fn column_basis(&self) -> Matrix {
        self.select_columns(&self.pivot_columns())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, piv) = aug.rref();
        if piv.len() < n || (n > 0 && piv[n - 1] != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &(&factor * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of `a`, as the columns of the result.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let field = a.field;
    let (r, pivots) = a.rref();
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..a.cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(field, a.cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            let v = &r[(row, f)];
            if !v.is_zero() {
                out[(p, k)] = -v;
            }
        }
    }
    out
}

/// Some `x` with `a x = b`, or `None` when `b` is not in the image.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vector>> {
    if a.rows != b.len() {
        return Err(Error::Dimension(format!(
            "solve: {} rows against a right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let rhs = Matrix::column_vector(b, a.field);
    Ok(solve_matrix(a, &rhs)?.map(|x| x.col(0)))
}

/// Some `X` with `a X = b`, or `None` when some column of `b` is unreachable.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows != b.rows {
        return Err(Error::Dimension(format!(
            "solve: {} rows against {} right-hand rows",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let aug = Matrix::hstack(a.field, a.rows, &[a, b]);
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(a.field, n, b.cols);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x[(p, j)] = r[(row, n + j)].clone();
        }
    }
    Ok(Some(x))
}

/// True when every column of `b` lies in the column span of `a`.
pub fn span_contains(a: &Matrix, b: &Matrix) -> bool {
    assert_eq!(a.rows, b.rows, "span comparison in different ambient spaces");
    if b.cols == 0 {
        return true;
    }
    Matrix::hstack(a.field, a.rows, &[a, b]).rank() == a.rank()
}

pub fn span_equal(a: &Matrix, b: &Matrix) -> bool {
    span_contains(a, b) && span_contains(b, a)
}

/// Basis of the intersection of two column spans.
pub fn span_intersection(a: &Matrix, b: &Matrix) -> Matrix {
    let a = a.column_basis();
    let b = b.column_basis();
    let stacked = Matrix::hstack(a.field, a.rows, &[&a, &b.neg()]);
    let k = kernel_basis(&stacked);
    let top = k.block(0, 0, a.cols, k.cols);
    a.mul(&top).column_basis()
}

/// Basis of the sum of two column spans.
pub fn span_sum(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::hstack(a.field, a.rows, &[a, b]).column_basis()
}

/// Result of [`subquotient`]: representatives of a basis of `span Z / span B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub dim: usize,
    /// Columns projecting to a basis of the quotient.
    pub reps: Matrix,
    /// A basis of `span B`.
    pub boundaries: Matrix,
}

impl Subquotient {
    /// Coordinates of the class of `v` in the `reps` basis, or `None` when
    /// `v` is not in `span Z`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let field = self.reps.field;
        let basis = Matrix::hstack(field, self.reps.rows, &[&self.reps, &self.boundaries]);
        let x = solve(&basis, v).expect("ambient dimension")?;
        Some(x[..self.dim].to_vec())
    }

    /// Coordinates of the classes of all columns of `m`.
    pub fn coordinates_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let field = self.reps.field;
        let basis = Matrix::hstack(field, self.reps.rows, &[&self.reps, &self.boundaries]);
        let x = solve_matrix(&basis, m).expect("ambient dimension")?;
        Some(x.block(0, 0, self.dim, m.cols))
    }
}

/// `span Z / span B`, failing when `B` is not inside `span Z`.
pub fn subquotient(z: &Matrix, b: &Matrix) -> Result<Subquotient> {
    if z.rows != b.rows {
        return Err(Error::Dimension(format!(
            "subquotient: cycles in dimension {} but boundaries in {}",
            z.rows, b.rows
        )));
    }
    let field = z.field;
    let bb = b.column_basis();
    let all = Matrix::hstack(field, z.rows, &[&bb, z]);
    let pivots = all.pivot_columns();
    if pivots.len() != z.rank() {
        return Err(Error::Inconsistent(
            "boundaries are not contained in the cycles".to_string(),
        ));
    }
    let rep_idx: Vec<usize> = pivots
        .iter()
        .filter(|&&p| p >= bb.cols)
        .map(|&p| p - bb.cols)
        .collect();
    let reps = z.select_columns(&rep_idx);
    Ok(Subquotient { dim: reps.cols, reps, boundaries: bb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn kernel_of_zero_scalar() {
        let k = kernel_basis(&Matrix::zeros(Q, 1, 1));
        assert_eq!(k, Matrix::from_ints(Q, 1, 1, &[1]));
    }

    #[test]
    fn kernel_of_identity_mod_two() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(kernel_basis(&Matrix::identity(f2, 2)).cols(), 0);
    }

    #[test]
    fn kernel_of_all_ones() {
        let a = Matrix::from_ints(Q, 2, 2, &[1, 1, 1, 1]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        // (1,-1) up to scaling
        assert!(span_equal(&k, &Matrix::from_ints(Q, 2, 1, &[1, -1])));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 3);
        let b = vec![Q.from_i64(4), Q.from_i64(-2), Q.parse("3/7").unwrap()];
        assert_eq!(solve(&id, &b).unwrap(), Some(b.clone()));
        let two = Matrix::from_ints(Q, 1, 1, &[2]);
        assert_eq!(solve(&two, &[Q.one()]).unwrap(), Some(vec![Q.parse("1/2").unwrap()]));
        let zero = Matrix::zeros(Q, 1, 1);
        assert_eq!(solve(&zero, &[Q.one()]).unwrap(), None);
        assert!(solve(&zero, &[Q.one(), Q.one()]).is_err());
    }

    #[test]
    fn subquotient_examples() {
        let empty = Matrix::zeros(Q, 0, 0);
        assert_eq!(subquotient(&empty, &empty).unwrap().dim, 0);
        let id = Matrix::identity(Q, 2);
        assert_eq!(subquotient(&id, &Matrix::zeros(Q, 2, 0)).unwrap().dim, 2);
        let f2 = Field::prime(2).unwrap();
        let z = Matrix::identity(f2, 2);
        let b = Matrix::from_ints(f2, 2, 1, &[1, 1]);
        assert_eq!(subquotient(&z, &b).unwrap().dim, 1);
        let outside = Matrix::from_ints(Q, 2, 1, &[0, 1]);
        let z1 = Matrix::from_ints(Q, 2, 1, &[1, 0]);
        assert!(matches!(subquotient(&z1, &outside), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let a = f5.from_i64(3);
        assert_eq!(&a * &a.inv().unwrap(), f5.one());
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
        assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
        assert!(f5.parse("1/5").is_err());
        assert!(Field::prime(4).is_err());
    }

    #[test]
    fn parse_and_display_rationals() {
        let x = Q.parse("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Q.parse(" 7 ").unwrap().to_string(), "7");
        assert!(Q.parse("1/0").is_err());
        assert!(Q.parse("abc").is_err());
    }

    #[test]
    fn inverse_and_products() {
        let a = Matrix::from_ints(Q, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Matrix::from_ints(Q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let k = Matrix::identity(Q, 2).kron(&a);
        assert_eq!(k.shape(), (4, 4));
        assert_eq!(k[(3, 2)], Q.one());
    }

    #[test]
    fn empty_matrices_are_legal() {
        let a = Matrix::zeros(Q, 0, 3);
        assert_eq!(kernel_basis(&a).cols(), 3);
        let b = Matrix::zeros(Q, 3, 0);
        assert_eq!(b.rank(), 0);
        assert_eq!(kernel_basis(&b).shape(), (0, 0));
        assert_eq!(solve(&b, &zero_vector(Q, 3)).unwrap(), Some(vec![]));
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c)
                .prop_map(move |v| Matrix::from_ints(field, r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix(Q)) {
            let k = kernel_basis(&a);
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_nullity_mod_three(a in small_matrix(Field::Prime(3))) {
            let k = kernel_basis(&a);
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
        }

        #[test]
        fn solve_reaches_image(a in small_matrix(Q), seed in proptest::collection::vec(-3i64..=3, 5)) {
            let x: Vector = (0..a.cols()).map(|i| Q.from_i64(seed[i])).collect();
            let b = a.apply(&x);
            let y = solve(&a, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(a.apply(&y), b);
        }

        #[test]
        fn subquotient_is_order_independent(z in small_matrix(Q), seed in any::<u64>()) {
            // boundaries: the image of the first columns of z under a fixed mixing
            let half = z.cols() / 2;
            let b = z.select_columns(&(0..half).collect::<Vec<_>>());
            let sq = subquotient(&z, &b).unwrap();
            prop_assert_eq!(sq.dim, z.rank() - b.rank());
            let mut perm: Vec<usize> = (0..z.cols()).collect();
            let n = perm.len();
            if n > 1 {
                perm.rotate_left((seed as usize) % n);
            }
            let z2 = z.select_columns(&perm);
            let mut bperm: Vec<usize> = (0..b.cols()).collect();
            bperm.reverse();
            let b2 = b.select_columns(&bperm);
            prop_assert_eq!(subquotient(&z2, &b2).unwrap().dim, sq.dim);
        }
    }
}
