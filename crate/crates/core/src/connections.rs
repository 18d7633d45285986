//! Left-invariant connections as bilinear products on a Lie algebra.
//!
//! A left-invariant linear connection is determined by its value on left
//! invariant fields at the identity, i.e. by a bilinear map `x·y = ∇_x y`.
//! Torsion, curvature and the trace criteria for completeness and
//! unimodularity are all evaluated on that product.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{axpy, sub_vectors, unit_vector, zero_vector, Matrix, Vector};
use crate::rational::{int, Rational};
use crate::report::{first_mismatch, ordered_pairs, Check, Report, Witness};

/// One stored product: `e_i·e_j = Σ coeff·e_k` (any `i`, `j`).
pub type ProductEntry = (usize, usize, Vec<(usize, Rational)>);

/// A bilinear product `e_i·e_j = Σ_k a^k_ij e_k` on a Lie algebra.
///
/// No symmetry is assumed. The product owns a shared handle to the algebra
/// whose bracket it is measured against.
#[derive(Clone, PartialEq, Eq)]
pub struct Product {
    algebra: Arc<LieAlgebra>,
    table: Vec<Vector>,
}

impl Product {
    pub fn new(algebra: Arc<LieAlgebra>, entries: impl IntoIterator<Item = ProductEntry>) -> Result<Self> {
        let n = algebra.dim();
        let mut table = vec![zero_vector(n); n * n];
        for (pos, (i, j, coeffs)) in entries.into_iter().enumerate() {
            if i >= n || j >= n {
                return Err(Error::Validation(format!(
                    "products[{pos}]: index out of range for dimension {n}"
                )));
            }
            for (k, c) in coeffs {
                if k >= n {
                    return Err(Error::Validation(format!(
                        "products[{pos}]: index out of range for dimension {n}"
                    )));
                }
                table[i * n + j][k] += c;
            }
        }
        Ok(Self { algebra, table })
    }

    /// Builds a product from a rule giving `e_i·e_j`.
    pub fn from_rule(algebra: Arc<LieAlgebra>, mut rule: impl FnMut(usize, usize) -> Vector) -> Self {
        let n = algebra.dim();
        let table = (0..n * n)
            .map(|idx| {
                let v = rule(idx / n, idx % n);
                assert_eq!(v.len(), n, "product rule returned a vector of the wrong length");
                v
            })
            .collect();
        Self { algebra, table }
    }

    pub fn zero(algebra: Arc<LieAlgebra>) -> Self {
        let n = algebra.dim();
        Self::from_rule(algebra, |_, _| zero_vector(n))
    }

    /// `x·y = c[x, y]`
    pub fn scaled_bracket(algebra: Arc<LieAlgebra>, c: &Rational) -> Self {
        let alg = Arc::clone(&algebra);
        Self::from_rule(algebra, |i, j| alg.basis_bracket(i, j).iter().map(|v| c * v).collect())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `e_i·e_j`
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero products in `(i, j)` order, coefficients in `k` order.
    pub fn entries(&self) -> Vec<ProductEntry> {
        let n = self.dim();
        (0..n * n)
            .filter_map(|idx| {
                let coeffs: Vec<_> = self.table[idx]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                (!coeffs.is_empty()).then_some((idx / n, idx % n, coeffs))
            })
            .collect()
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        check_dim(n, x.len())?;
        check_dim(n, y.len())?;
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi * yj), self.basis_product(i, j));
                }
            }
        }
        Ok(out)
    }

    /// `e_i·y`
    fn left_basis(&self, i: usize, y: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut out, yj, self.basis_product(i, j));
        }
        out
    }

    /// `x·e_k`
    fn right_basis(&self, x: &[Rational], k: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.basis_product(i, k));
        }
        out
    }

    /// Whether every coefficient agrees with `other` (algebras are not compared).
    pub fn same_coefficients(&self, other: &Product) -> bool {
        self.table == other.table
    }

    /// The product with coefficient `a^k_ij` shifted by `delta`.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: &Rational) -> Product {
        let mut p = self.clone();
        let n = self.dim();
        p.table[i * n + j][k] += delta;
        p
    }
}

impl std::fmt::Debug for Product {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = self.algebra.basis_names();
        write!(f, "Product(on {:?}", self.algebra.name())?;
        for (i, j, row) in self.entries() {
            let terms: Vec<String> = row.iter().map(|(k, c)| format!("{c}·{}", names[*k])).collect();
            write!(f, ", {}·{}={}", names[i], names[j], terms.join("+"))?;
        }
        write!(f, ")")
    }
}

/// Matrix of `L_x: y ↦ x·y`.
pub fn left_mult(p: &Product, x: &[Rational]) -> Result<Matrix> {
    let n = p.dim();
    check_dim(n, x.len())?;
    let cols: Vec<Vector> = (0..n).map(|j| p.right_basis(x, j)).collect();
    Ok(Matrix::from_columns(n, &cols))
}

/// Matrix of `R_x: y ↦ y·x`.
pub fn right_mult(p: &Product, x: &[Rational]) -> Result<Matrix> {
    let n = p.dim();
    check_dim(n, x.len())?;
    let cols: Vec<Vector> = (0..n).map(|j| p.left_basis(j, x)).collect();
    Ok(Matrix::from_columns(n, &cols))
}

pub(crate) fn left_basis_matrix(p: &Product, i: usize) -> Matrix {
    left_mult(p, &unit_vector(p.dim(), i)).expect("basis vector has the right length")
}

pub(crate) fn right_basis_matrix(p: &Product, i: usize) -> Matrix {
    right_mult(p, &unit_vector(p.dim(), i)).expect("basis vector has the right length")
}

/// Dense `t(e_i, e_j) = Σ_k t^k_ij e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Vector>,
}

impl Tensor3 {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.data[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.iter().all(Zero::is_zero))
    }
}

/// Dense `R(e_i, e_j)e_k`, only built on request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<Vector>,
}

impl Tensor4 {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.iter().all(Zero::is_zero))
    }
}

/// Torsion `T(e_i, e_j) = e_i·e_j − e_j·e_i − [e_i, e_j]`.
pub fn torsion(p: &Product) -> Tensor3 {
    let n = p.dim();
    let alg = p.algebra();
    let data = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let commutator = sub_vectors(p.basis_product(i, j), p.basis_product(j, i));
            sub_vectors(&commutator, alg.basis_bracket(i, j))
        })
        .collect();
    Tensor3 { n, data }
}

/// Curvature of a product, evaluated one basis triple at a time.
///
/// `R(e_i, e_j)e_k = e_i·(e_j·e_k) − e_j·(e_i·e_k) − [e_i, e_j]·e_k`
#[derive(Clone, Copy, Debug)]
pub struct Curvature<'a> {
    product: &'a Product,
}

pub fn curvature(p: &Product) -> Curvature<'_> {
    Curvature { product: p }
}

impl Curvature<'_> {
    /// The two sides `e_i·(e_j·e_k) − e_j·(e_i·e_k)` and `[e_i, e_j]·e_k`.
    pub fn sides(&self, i: usize, j: usize, k: usize) -> (Vector, Vector) {
        let p = self.product;
        let ij_k = p.left_basis(i, p.basis_product(j, k));
        let ji_k = p.left_basis(j, p.basis_product(i, k));
        let bracket = p.algebra().basis_bracket(i, j);
        (sub_vectors(&ij_k, &ji_k), p.right_basis(bracket, k))
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> Vector {
        let (l, r) = self.sides(i, j, k);
        sub_vectors(&l, &r)
    }

    /// First `(i, j, k)` with `i < j` where the curvature is nonzero.
    pub fn first_nonzero(&self) -> Option<Witness> {
        let n = self.product.dim();
        let idx = ordered_pairs(n).flat_map(move |ij| (0..n).map(move |k| vec![ij[0], ij[1], k]));
        first_mismatch(idx, |t| self.sides(t[0], t[1], t[2]))
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    pub fn materialize(&self) -> Tensor4 {
        let n = self.product.dim();
        let data = (0..n * n * n)
            .map(|idx| self.at(idx / (n * n), (idx / n) % n, idx % n))
            .collect();
        Tensor4 { n, data }
    }
}

fn torsion_check(p: &Product, name: &str) -> Check {
    let alg = p.algebra();
    let witness = first_mismatch(ordered_pairs(p.dim()), |ij| {
        let (i, j) = (ij[0], ij[1]);
        (
            sub_vectors(p.basis_product(i, j), p.basis_product(j, i)),
            alg.basis_bracket(i, j).clone(),
        )
    });
    Check::from_witness(name, witness)
}

/// `x·y − y·x = [x, y]` on every basis pair.
pub fn bracket_compatibility(p: &Product) -> Report {
    Report::single(torsion_check(p, "bracket_compatibility"))
}

/// Torsion-free and curvature-free, each reported as its own check.
pub fn is_flat_affine(p: &Product) -> Report {
    let mut r = Report::new();
    r.push(torsion_check(p, "torsion"));
    r.push(Check::from_witness("curvature", curvature(p).first_nonzero()));
    r
}

/// `L_{[e_i,e_j]} = L_{e_i}L_{e_j} − L_{e_j}L_{e_i}` for every `i < j`.
///
/// The witness is `(i, j, k)` where `k` is the first column that differs.
pub fn check_left_homomorphism(p: &Product) -> Report {
    let n = p.dim();
    let lefts: Vec<Matrix> = (0..n).map(|i| left_basis_matrix(p, i)).collect();
    let alg = p.algebra();
    let witness = ordered_pairs(n).find_map(|ij| {
        let (i, j) = (ij[0], ij[1]);
        let lhs = left_mult(p, alg.basis_bracket(i, j)).expect("dimension matches");
        let rhs = lefts[i].commutator(&lefts[j]).expect("square matrices");
        (0..n).find_map(|k| {
            let (l, r) = (lhs.column(k), rhs.column(k));
            (l != r).then(|| Witness::with_sides(vec![i, j, k], l, r))
        })
    });
    Report::single(Check::from_witness("left_homomorphism", witness))
}

fn trace_check(name: &str, n: usize, trace_of: impl Fn(usize) -> Rational) -> Check {
    let witness = (0..n).find_map(|i| {
        let t = trace_of(i);
        (!t.is_zero()).then(|| Witness::with_sides(vec![i], vec![t], vec![int(0)]))
    });
    Check::from_witness(name, witness)
}

/// `tr(ad_{e_i}) = 0` for every basis vector.
pub fn is_unimodular(a: &LieAlgebra) -> Report {
    Report::single(trace_check("unimodular", a.dim(), |i| a.ad_basis(i).trace()))
}

/// `tr(R_{e_i}) = 0` for every basis vector.
///
/// This characterizes geodesic completeness only for flat affine products; on
/// any other product the trace is still computed and the report carries a
/// warning.
pub fn is_complete(p: &Product) -> Report {
    let mut r = Report::new();
    if !is_flat_affine(p).passed() {
        r.push(Check::warn(
            "hypothesis",
            "criterion outside stated hypothesis: product is not flat affine",
        ));
    }
    r.push(trace_check("right_trace", p.dim(), |i| {
        right_basis_matrix(p, i).trace()
    }));
    r
}

/// `tr(L_{e_i})` for every basis vector.
pub fn left_traces(p: &Product) -> Vec<Rational> {
    (0..p.dim()).map(|i| left_basis_matrix(p, i).trace()).collect()
}
