//! Dense exact linear algebra over the rationals.
//!
//! Matrices are small (the algebras of interest rarely exceed a few dozen
//! dimensions), so everything is dense and row-major. Elimination always picks
//! the first nonzero pivot; with exact arithmetic there is no stability concern.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{one, zero, Rational};

/// Coordinate vector in a fixed basis.
pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A dense `rows × cols` rational matrix.
///
/// When a matrix represents a linear map, column `j` is the image of the
/// `j`-th basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Matrix of a linear map in the chosen bases.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| crate::rational::int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer rows")
    }

    /// Columns are given as vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator `AB − BA`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    /// Rows stacked on top of each other. All blocks share a column count.
    pub fn vstack(blocks: &[Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            check_dim(cols, b.cols)?;
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &f * &m[(r, j)];
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        match Lu::new(self) {
            Ok(lu) => Ok(lu.determinant()),
            Err(Error::Singular) => Ok(zero()),
            Err(e) => Err(e),
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let lu = Lu::new(self)?;
        let cols: Vec<Vector> = (0..self.rows)
            .map(|j| lu.solve(&unit_vector(self.rows, j)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.rows, &cols))
    }

    /// Bilinear form value `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        check_dim(self.rows, x.len())?;
        Ok(dot(x, &self.apply(y)?))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `PA = LU` factorization of a nonsingular square matrix, reusable across
/// right-hand sides.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    // Unit lower factor below the diagonal, upper factor on and above it.
    packed: Matrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn new(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "expected a square matrix, got {}×{}",
                m.rows, m.cols
            )));
        }
        let n = m.rows;
        let mut a = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
            if p != k {
                a.swap_rows(p, k);
                perm.swap(p, k);
                swaps += 1;
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] / &pivot;
                for j in k + 1..n {
                    let v = &f * &a[(k, j)];
                    a[(i, j)] -= v;
                }
                a[(i, k)] = f;
            }
        }
        Ok(Self {
            n,
            packed: a,
            perm,
            swaps,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Vector> {
        check_dim(self.n, b.len())?;
        let n = self.n;
        let mut y: Vector = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let v = &self.packed[(i, j)] * &y[j];
                y[i] -= v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = &self.packed[(i, j)] * &y[j];
                y[i] -= v;
            }
            y[i] = &y[i] / &self.packed[(i, i)];
        }
        Ok(y)
    }

    pub fn determinant(&self) -> Rational {
        let d: Rational = (0..self.n).map(|i| self.packed[(i, i)].clone()).product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

/// Exact solution of `Mx = b` for square nonsingular `M`.
pub fn solve_linear(m: &Matrix, b: &[Rational]) -> Result<Vector> {
    Lu::new(m)?.solve(b)
}

/// Basis of `{v : Mv = 0}`, one vector per free column of the echelon form.
pub fn nullspace(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vector(m.cols);
            v[f] = one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the span: the nonzero rows of the reduced echelon form.
pub fn echelon_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("vectors of equal length");
    debug_assert_eq!(m.cols, dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn same_span(a: &[Vector], b: &[Vector], dim: usize) -> bool {
    echelon_basis(a, dim) == echelon_basis(b, dim)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &[Rational]) -> bool {
    if is_zero_vector(v) {
        return true;
    }
    let dim = v.len();
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    echelon_basis(&extended, dim).len() == echelon_basis(basis, dim).len()
}

/// Sylvester inertia of a symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    /// Number of negative squares.
    pub index: usize,
    /// Number of positive squares.
    pub plus: usize,
    /// Dimension of the radical.
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.index + self.plus + self.zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.index == 0 && self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.index, self.plus, self.zero)
    }
}

/// Signature by symmetric congruence diagonalization.
///
/// Pivots on a nonzero diagonal entry when one exists; otherwise a nonzero
/// off-diagonal entry `M_ij` is promoted with `e_i ← e_i + e_j`, which makes
/// the new diagonal entry `2 M_ij`.
pub fn signature(m: &Matrix) -> Result<Signature> {
    if !m.is_symmetric() {
        return Err(Error::Shape("signature requires a symmetric matrix".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut sig = Signature {
        index: 0,
        plus: 0,
        zero: 0,
    };
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            congruent_swap(&mut a, k, p);
        } else {
            let off = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero());
            match off {
                Some((i, j)) => {
                    congruent_add(&mut a, i, j);
                    congruent_swap(&mut a, k, i);
                }
                None => {
                    sig.zero += n - k;
                    break;
                }
            }
        }
        let pivot = a[(k, k)].clone();
        for r in k + 1..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let f = &a[(r, k)] / &pivot;
            for c in 0..n {
                let v = &f * &a[(k, c)];
                a[(r, c)] -= v;
            }
            for c in 0..n {
                let v = &f * &a[(c, k)];
                a[(c, r)] -= v;
            }
        }
        if pivot.is_negative() {
            sig.index += 1;
        } else {
            sig.plus += 1;
        }
    }
    Ok(sig)
}

fn congruent_swap(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
}

/// Row and column operation `e_i ← e_i + e_j`.
fn congruent_add(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows;
    for c in 0..n {
        let v = a[(j, c)].clone();
        a[(i, c)] += v;
    }
    for r in 0..n {
        let v = a[(r, j)].clone();
        a[(r, i)] += v;
    }
}
