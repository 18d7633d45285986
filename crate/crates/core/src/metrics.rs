//! Scalar products on a Lie algebra and their Levi-Civita products.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::connections::{curvature, is_flat_affine, torsion, Product};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{signature, Lu, Matrix, Signature, Vector};
use crate::rational::{half, int, Rational};
use crate::report::{first_mismatch, triples, Check, Report, Witness};

/// A nondegenerate symmetric bilinear form `g_ij = μ(e_i, e_j)`.
///
/// The Gram matrix is factored once at construction; every Levi-Civita solve
/// against this form reuses that factorization.
#[derive(Clone, Debug)]
pub struct ScalarProduct {
    gram: Matrix,
    lu: Lu,
    signature: Signature,
}

impl PartialEq for ScalarProduct {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for ScalarProduct {}

impl ScalarProduct {
    /// Rejects non-symmetric (`Shape`) and degenerate (`Singular`) matrices.
    pub fn new(gram: Matrix) -> Result<Self> {
        let signature = signature(&gram)?;
        if !signature.is_nondegenerate() {
            return Err(Error::Singular);
        }
        let lu = Lu::new(&gram)?;
        Ok(Self { gram, lu, signature })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n)).expect("identity is nondegenerate")
    }

    /// `Σ_i (x_i y_{n+i} + x_{n+i} y_i)` on a `2n`-dimensional space.
    pub fn hyperbolic(n: usize) -> Self {
        let mut g = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            g[(i, n + i)] = int(1);
            g[(n + i, i)] = int(1);
        }
        Self::new(g).expect("hyperbolic form is nondegenerate")
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.is_positive_definite()
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.gram.bilinear(x, y)
    }

    /// `(μ(v, e_k))_k`
    pub fn lower(&self, v: &[Rational]) -> Vector {
        self.gram.apply(v).expect("caller checked the dimension")
    }

    /// The vector `w` with `μ(w, e_k) = c_k` for all `k`.
    pub fn raise(&self, covector: &[Rational]) -> Result<Vector> {
        self.lu.solve(covector)
    }

    /// Pullback `Sᵀ G S` along a change of basis.
    pub fn congruent(&self, change: &Matrix) -> Result<ScalarProduct> {
        let g = &(&change.transpose() * &self.gram) * change;
        ScalarProduct::new(g)
    }
}

/// A product paired with a form for which it is the Levi-Civita product.
///
/// The constructor re-verifies torsion-freeness and metric compatibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricPair {
    product: Product,
    form: ScalarProduct,
}

impl MetricPair {
    pub fn new(product: Product, form: ScalarProduct) -> Result<Self> {
        check_dim(product.dim(), form.dim())?;
        if !torsion(&product).is_zero() {
            return Err(Error::Validation("metric pair: product has torsion".into()));
        }
        let compat = metric_compatibility(&product, &form);
        if let Some(c) = compat.first_failure() {
            let at = c.witness.as_ref().map(|w| w.indices.clone()).unwrap_or_default();
            return Err(Error::Validation(format!(
                "metric pair: L_x is not antisymmetric at {at:?}"
            )));
        }
        Ok(Self { product, form })
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn form(&self) -> &ScalarProduct {
        &self.form
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.product.algebra()
    }
}

/// `μ(L_{e_i} e_j, e_k) + μ(e_j, L_{e_i} e_k) = 0` on every basis triple.
pub fn metric_compatibility(p: &Product, g: &ScalarProduct) -> Report {
    let n = p.dim();
    let lowered: Vec<Vector> = (0..n * n)
        .map(|idx| g.lower(p.basis_product(idx / n, idx % n)))
        .collect();
    let witness = first_mismatch(triples(n), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let s = &lowered[i * n + j][k] + &lowered[i * n + k][j];
        (vec![s], vec![int(0)])
    });
    Report::single(Check::from_witness("metric_compatibility", witness))
}

/// Right-hand side of the Koszul formula at the identity,
/// `½(μ([x,y],z) − μ([y,z],x) + μ([z,x],y))`, for all basis triples.
fn koszul_table(a: &LieAlgebra, g: &ScalarProduct) -> impl Fn(usize, usize, usize) -> Rational {
    let n = a.dim();
    let lowered: Vec<Vector> = (0..n * n)
        .map(|idx| g.lower(a.basis_bracket(idx / n, idx % n)))
        .collect();
    move |i, j, k| {
        let s = &lowered[i * n + j][k] - &lowered[j * n + k][i] + &lowered[k * n + i][j];
        s * half()
    }
}

/// Solves the Koszul formula for the unique torsion-free, metric-compatible
/// product.
pub fn levi_civita(a: &Arc<LieAlgebra>, g: &ScalarProduct) -> Result<MetricPair> {
    let n = a.dim();
    check_dim(n, g.dim())?;
    let rhs = koszul_table(a, g);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let covector: Vector = (0..n).map(|k| rhs(i, j, k)).collect();
            table.push(g.raise(&covector)?);
        }
    }
    let product = Product::from_rule(Arc::clone(a), |i, j| table[i * n + j].clone());
    MetricPair::new(product, g.clone())
}

/// Whether `μ(e_i·e_j, e_k)` equals the Koszul right-hand side everywhere.
pub fn koszul_residual(p: &Product, g: &ScalarProduct) -> Report {
    let n = p.dim();
    let rhs = koszul_table(p.algebra(), g);
    let witness = first_mismatch(triples(n), |t| {
        let lhs = g.lower(p.basis_product(t[0], t[1]))[t[2]].clone();
        (vec![lhs], vec![rhs(t[0], t[1], t[2])])
    });
    Report::single(Check::from_witness("koszul", witness))
}

/// Curvature of the Levi-Civita product vanishes.
pub fn is_flat_metric(mp: &MetricPair) -> Report {
    Report::single(Check::from_witness(
        "flat_metric",
        curvature(&mp.product).first_nonzero(),
    ))
}

/// `μ([e_i,e_j], e_k) + μ(e_j, [e_i,e_k]) = 0` on every basis triple.
pub fn is_invariant(a: &LieAlgebra, g: &ScalarProduct) -> Report {
    let n = a.dim();
    if let Err(e) = check_dim(n, g.dim()) {
        return Report::single(Check::fail("invariant", None).with_note(e.to_string()));
    }
    let lowered: Vec<Vector> = (0..n * n)
        .map(|idx| g.lower(a.basis_bracket(idx / n, idx % n)))
        .collect();
    let witness = first_mismatch(triples(n), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let s = &lowered[i * n + j][k] + &lowered[i * n + k][j];
        (vec![s], vec![int(0)])
    });
    Report::single(Check::from_witness("invariant", witness))
}

/// `x·y = ½[x, y]`, the Levi-Civita product of any invariant form.
pub fn biinvariant_levi_civita(a: &Arc<LieAlgebra>) -> Product {
    Product::scaled_bracket(Arc::clone(a), &half())
}

/// `[[e_i, e_j], e_k] = 0` on every basis triple.
pub fn is_two_nilpotent(a: &LieAlgebra) -> Report {
    let n = a.dim();
    let witness = first_mismatch(triples(n), |t| {
        let inner = a.basis_bracket(t[0], t[1]);
        let outer = a
            .bracket(inner, &crate::linalg::unit_vector(n, t[2]))
            .expect("basis dimension");
        (outer, crate::linalg::zero_vector(n))
    });
    Report::single(Check::from_witness("two_nilpotent", witness))
}

/// `μ(Mx, y) + μ(x, My) = 0`, i.e. `GM + MᵀG = 0`.
///
/// The witness indexes the first nonzero entry of `GM + MᵀG`.
pub fn antisymmetric_wrt(g: &ScalarProduct, m: &Matrix) -> Result<Report> {
    let n = g.dim();
    check_dim(n, m.rows())?;
    check_dim(n, m.cols())?;
    let gm = g.gram() * m;
    let sym = &gm + &gm.transpose();
    let witness = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| !sym[(r, c)].is_zero())
        .map(|(r, c)| Witness::with_sides(vec![r, c], vec![sym[(r, c)].clone()], vec![int(0)]));
    Ok(Report::single(Check::from_witness("antisymmetric", witness)))
}

/// Flat affine check plus metric compatibility, for products not built here.
pub fn is_levi_civita_of(p: &Product, g: &ScalarProduct) -> Report {
    let mut r = Report::new();
    let flat = is_flat_affine(p);
    r.push(flat.check("torsion").cloned().expect("torsion check present"));
    r.extend(metric_compatibility(p, g));
    r
}
