//! Builders for orthogonal and flat pseudo-Riemannian Lie algebras.
//!
//! Basis conventions: cotangent constructions list the algebra's basis first
//! and then the dual basis; the double extension of `(g, μ₀)` by `h` uses
//! `h, g, h*`. Dual vectors are coordinate vectors in the dual basis, so the
//! coadjoint action of `x` is the matrix `−ad_xᵀ`.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::{default_basis, LieAlgebra};
use crate::connections::{is_flat_affine, left_mult, Product};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{axpy, unit_vector, zero_vector, Matrix, Vector};
use crate::metrics::{is_flat_metric, MetricPair};
use crate::metrics::{is_invariant, levi_civita, ScalarProduct};
use crate::rational::{int, one, Rational};
use crate::report::{first_mismatch, Check, Report, Witness};

/// A Lie algebra with an invariant scalar product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalAlgebra {
    algebra: Arc<LieAlgebra>,
    form: ScalarProduct,
}

impl OrthogonalAlgebra {
    /// Fails with `Validation` unless the form is invariant.
    pub fn new(algebra: Arc<LieAlgebra>, form: ScalarProduct) -> Result<Self> {
        check_dim(algebra.dim(), form.dim())?;
        let report = is_invariant(&algebra, &form);
        if let Some(c) = report.first_failure() {
            let at = c.witness.as_ref().map(|w| w.indices.clone()).unwrap_or_default();
            return Err(Error::Validation(format!("form is not invariant at {at:?}")));
        }
        Ok(Self { algebra, form })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn form(&self) -> &ScalarProduct {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The zero-dimensional orthogonal algebra.
    pub fn trivial() -> Self {
        let algebra = Arc::new(LieAlgebra::abelian(0).with_name("zero"));
        let form = ScalarProduct::new(Matrix::zeros(0, 0)).expect("empty form");
        Self { algebra, form }
    }

    /// Orthogonal direct sum, `self` first.
    pub fn direct_sum(&self, other: &OrthogonalAlgebra) -> OrthogonalAlgebra {
        let algebra = Arc::new(self.algebra.direct_sum(&other.algebra));
        let (n, m) = (self.dim(), other.dim());
        let mut g = Matrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.form.gram()[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.form.gram()[(i, j)].clone();
            }
        }
        let form = ScalarProduct::new(g).expect("block sum of nondegenerate forms");
        Self { algebra, form }
    }
}

fn dual_names(names: &[String]) -> Vec<String> {
    names.iter().map(|s| format!("{s}*")).collect()
}

/// `−Mᵀ`, the dual action on coordinate covectors.
fn dual_action(m: &Matrix) -> Matrix {
    -&m.transpose()
}

/// Semidirect product `g ⋉ g*` where `e_i` acts on `g*` by `−ᵗrep_i`.
fn cotangent_algebra(a: &LieAlgebra, name: String, reps: &[Matrix]) -> LieAlgebra {
    let n = a.dim();
    let mut basis = a.basis_names().to_vec();
    basis.extend(dual_names(a.basis_names()));
    let duals: Vec<Matrix> = reps.iter().map(dual_action).collect();
    LieAlgebra::from_rule(name, basis, |i, j| {
        let mut v = zero_vector(2 * n);
        if i < n && j < n {
            v[..n].clone_from_slice(a.basis_bracket(i, j));
        } else if i < n {
            for (k, c) in duals[i].column(j - n).into_iter().enumerate() {
                v[n + k] = c;
            }
        }
        v
    })
}

/// The cotangent algebra `g ⋉_{ad*} g*` with the pairing `α(y) + β(x)`.
pub fn cotangent_coadjoint(a: &LieAlgebra) -> Result<OrthogonalAlgebra> {
    if !a.check_jacobi().passed() {
        return Err(Error::Precondition("input fails the Jacobi identity".into()));
    }
    let ads: Vec<Matrix> = (0..a.dim()).map(|i| a.ad_basis(i)).collect();
    let algebra = cotangent_algebra(a, format!("T*{}", a.name()), &ads);
    OrthogonalAlgebra::new(Arc::new(algebra), ScalarProduct::hyperbolic(a.dim()))
}

/// The cotangent algebra `g ⋉_L g*` of a flat affine product, with the
/// pairing `α(y) + β(x)` and its Levi-Civita product
/// `(x, α)·(y, β) = (x·y, L*_x β)`.
///
/// The returned pair is cross-checked against an independent Koszul solve and
/// a flatness check.
pub fn classical_cotangent(a: &LieAlgebra, p: &Product) -> Result<MetricPair> {
    check_dim(a.dim(), p.dim())?;
    if !a.same_structure(p.algebra()) {
        return Err(Error::Precondition("product is defined on a different algebra".into()));
    }
    if !is_flat_affine(p).passed() {
        return Err(Error::Precondition("product is not flat affine".into()));
    }
    let n = a.dim();
    let lefts: Vec<Matrix> = (0..n)
        .map(|i| left_mult(p, &unit_vector(n, i)).expect("basis vector"))
        .collect();
    let algebra = Arc::new(cotangent_algebra(a, format!("T*_L {}", a.name()), &lefts));
    let duals: Vec<Matrix> = lefts.iter().map(dual_action).collect();
    let product = Product::from_rule(Arc::clone(&algebra), |i, j| {
        let mut v = zero_vector(2 * n);
        if i < n && j < n {
            v[..n].clone_from_slice(p.basis_product(i, j));
        } else if i < n {
            for (k, c) in duals[i].column(j - n).into_iter().enumerate() {
                v[n + k] = c;
            }
        }
        v
    });
    let form = ScalarProduct::hyperbolic(n);
    let pair = MetricPair::new(product, form.clone())?;
    let koszul = levi_civita(&algebra, &form)?;
    if !koszul.product().same_coefficients(pair.product()) {
        return Err(Error::Validation(
            "cotangent product differs from the Koszul solution".into(),
        ));
    }
    if !is_flat_metric(&pair).passed() {
        return Err(Error::Validation("cotangent metric is not flat".into()));
    }
    Ok(pair)
}

/// Images `ψ_{z_1}, …, ψ_{z_m}` of a basis of `h` in the skew-symmetric
/// derivations of an orthogonal algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDerivationMap {
    source: Arc<LieAlgebra>,
    target: OrthogonalAlgebra,
    maps: Vec<Matrix>,
}

impl SkewDerivationMap {
    /// Checks shapes only; the algebraic identities are reported by
    /// [`SkewDerivationMap::validate`].
    pub fn new(source: Arc<LieAlgebra>, target: OrthogonalAlgebra, maps: Vec<Matrix>) -> Result<Self> {
        check_dim(source.dim(), maps.len())?;
        for m in &maps {
            check_dim(target.dim(), m.rows())?;
            check_dim(target.dim(), m.cols())?;
        }
        Ok(Self { source, target, maps })
    }

    pub fn source(&self) -> &Arc<LieAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &OrthogonalAlgebra {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `ψ_z` for an arbitrary `z ∈ h`.
    pub fn image(&self, z: &[Rational]) -> Matrix {
        let n = self.target.dim();
        let mut out = Matrix::zeros(n, n);
        for (c, m) in z.iter().zip(&self.maps) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// Derivation, skew-symmetry and homomorphism identities.
    pub fn validate(&self) -> Report {
        let g = self.target.algebra();
        let form = self.target.form();
        let n = g.dim();
        let mut r = Report::new();

        // ψ_a[x, y] = [ψ_a x, y] + [x, ψ_a y]
        let witness = self.maps.iter().enumerate().find_map(|(a, psi)| {
            let idx = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![a, i, j]));
            first_mismatch(idx, |t| {
                let (i, j) = (t[1], t[2]);
                let lhs = psi.apply(g.basis_bracket(i, j)).expect("dimension");
                let mut rhs = g.bracket(&psi.column(i), &unit_vector(n, j)).expect("dimension");
                let second = g.bracket(&unit_vector(n, i), &psi.column(j)).expect("dimension");
                axpy(&mut rhs, &one(), &second);
                (lhs, rhs)
            })
        });
        r.push(Check::from_witness("derivation", witness));

        let witness = self.maps.iter().enumerate().find_map(|(a, psi)| {
            let gm = form.gram() * psi;
            let sym = &gm + &gm.transpose();
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| !sym[(i, j)].is_zero())
                .map(|(i, j)| Witness::with_sides(vec![a, i, j], vec![sym[(i, j)].clone()], vec![int(0)]))
        });
        r.push(Check::from_witness("skew_symmetric", witness));

        // ψ_{[z_a, z_b]} = [ψ_a, ψ_b]
        let m = self.source.dim();
        let witness = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).find_map(|(a, b)| {
            let lhs = self.image(self.source.basis_bracket(a, b));
            let rhs = self.maps[a].commutator(&self.maps[b]).expect("square");
            (0..n).find_map(|k| {
                let (l, r) = (lhs.column(k), rhs.column(k));
                (l != r).then(|| Witness::with_sides(vec![a, b, k], l, r))
            })
        });
        r.push(Check::from_witness("homomorphism", witness));
        r
    }
}

/// `Φ(x, y)(z_c) = μ₀(ψ_{z_c} x, y)`, as a coordinate vector in `h*`.
pub fn phi(psi: &SkewDerivationMap, x: &[Rational], y: &[Rational]) -> Vector {
    let form = psi.target.form();
    psi.maps
        .iter()
        .map(|m| form.eval(&m.apply(x).expect("dimension"), y).expect("dimension"))
        .collect()
}

/// The central extension `g ×_Φ h*`, basis `(g, h*)`.
pub fn central_extension(psi: &SkewDerivationMap) -> LieAlgebra {
    let g = psi.target.algebra();
    let (n, m) = (g.dim(), psi.source.dim());
    let mut basis = g.basis_names().to_vec();
    basis.extend(dual_names(psi.source.basis_names()));
    LieAlgebra::from_rule(format!("{}_Phi", g.name()), basis, |i, j| {
        let mut v = zero_vector(n + m);
        if j < n {
            v[..n].clone_from_slice(g.basis_bracket(i, j));
            let f = phi(psi, &unit_vector(n, i), &unit_vector(n, j));
            v[n..].clone_from_slice(&f);
        }
        v
    })
}

/// `Θ_{z_a}(x, α) = (ψ_a x, π*_a α)` on `g ×_Φ h*`.
pub fn theta(psi: &SkewDerivationMap, a: usize) -> Matrix {
    let (n, m) = (psi.target.dim(), psi.source.dim());
    let coad = dual_action(&psi.source.ad_basis(a));
    let mut out = Matrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = psi.maps[a][(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[(n + i, n + j)] = coad[(i, j)].clone();
        }
    }
    out
}

/// `Φ([x,y],w) + Φ([y,w],x) + Φ([w,x],y) = 0` on basis triples.
pub fn phi_cocycle_check(psi: &SkewDerivationMap) -> Report {
    let g = psi.target.algebra();
    let n = g.dim();
    let idx = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| vec![i, j, k])));
    let witness = first_mismatch(idx, |t| {
        let (x, y, w) = (unit_vector(n, t[0]), unit_vector(n, t[1]), unit_vector(n, t[2]));
        let mut sum = phi(psi, g.basis_bracket(t[0], t[1]), &w);
        axpy(&mut sum, &one(), &phi(psi, g.basis_bracket(t[1], t[2]), &x));
        axpy(&mut sum, &one(), &phi(psi, g.basis_bracket(t[2], t[0]), &y));
        (sum, zero_vector(psi.source.dim()))
    });
    Report::single(Check::from_witness("phi_cocycle", witness))
}

/// Each `Θ_z` is a derivation of the central extension.
pub fn theta_derivation_check(psi: &SkewDerivationMap) -> Report {
    let ext = central_extension(psi);
    let d = ext.dim();
    let witness = (0..psi.source.dim()).find_map(|a| {
        let t = theta(psi, a);
        let idx = (0..d).flat_map(|i| (i + 1..d).map(move |j| vec![a, i, j]));
        first_mismatch(idx, |v| {
            let (i, j) = (v[1], v[2]);
            let lhs = t.apply(ext.basis_bracket(i, j)).expect("dimension");
            let mut rhs = ext.bracket(&t.column(i), &unit_vector(d, j)).expect("dimension");
            axpy(
                &mut rhs,
                &one(),
                &ext.bracket(&unit_vector(d, i), &t.column(j)).expect("dimension"),
            );
            (lhs, rhs)
        })
    });
    Report::single(Check::from_witness("theta_derivation", witness))
}

/// `π*_z(Φ(x, y)) = Φ(ψ_z x, y) + Φ(x, ψ_z y)`.
pub fn equivariance_check(psi: &SkewDerivationMap) -> Report {
    let n = psi.target.dim();
    let m = psi.source.dim();
    let idx = (0..m).flat_map(|a| (0..n).flat_map(move |i| (0..n).map(move |j| vec![a, i, j])));
    let witness = first_mismatch(idx, |t| {
        let (a, x, y) = (t[0], unit_vector(n, t[1]), unit_vector(n, t[2]));
        let coad = dual_action(&psi.source.ad_basis(a));
        let lhs = coad.apply(&phi(psi, &x, &y)).expect("dimension");
        let psi_a = &psi.maps[a];
        let mut rhs = phi(psi, &psi_a.column(t[1]), &y);
        axpy(&mut rhs, &one(), &phi(psi, &x, &psi_a.column(t[2])));
        (lhs, rhs)
    });
    Report::single(Check::from_witness("equivariance", witness))
}

/// Double orthogonal extension of `(g, μ₀)` by `h` through `ψ`.
///
/// The result lives on `h ⊕ g ⊕ h*` with bracket
/// `[(z,x,α),(z',y,β)] = ([z,z'], ψ_z y − ψ_{z'} x + [x,y], π*_z β − π*_{z'} α + Φ(x,y))`
/// and form `μ₀(x,y) + α(z') + β(z)`.
pub fn double_extension(
    base: &OrthogonalAlgebra,
    h: &LieAlgebra,
    psi: &SkewDerivationMap,
) -> Result<OrthogonalAlgebra> {
    if !psi.source.same_structure(h) {
        return Err(Error::Validation("psi is defined on a different source algebra".into()));
    }
    if psi.target != *base {
        return Err(Error::Validation("psi targets a different orthogonal algebra".into()));
    }
    let report = psi.validate();
    if let Some(c) = report.first_failure() {
        let at = c.witness.as_ref().map(|w| w.indices.clone()).unwrap_or_default();
        return Err(Error::Validation(format!("psi fails {} at {at:?}", c.name)));
    }
    let g = base.algebra();
    let (n, m) = (g.dim(), h.dim());
    let d = 2 * m + n;
    let mut basis = h.basis_names().to_vec();
    basis.extend(g.basis_names().iter().cloned());
    basis.extend(dual_names(h.basis_names()));
    let coads: Vec<Matrix> = (0..m).map(|a| dual_action(&h.ad_basis(a))).collect();

    let algebra = LieAlgebra::from_rule(format!("D({},{})", g.name(), h.name()), basis, |i, j| {
        let mut v = zero_vector(d);
        match (block(i, m, n), block(j, m, n)) {
            ((Block::H, a), (Block::H, b)) => v[..m].clone_from_slice(h.basis_bracket(a, b)),
            ((Block::H, a), (Block::G, x)) => v[m..m + n].clone_from_slice(&base_column(psi, a, x)),
            ((Block::H, a), (Block::Dual, b)) => v[m + n..].clone_from_slice(&coads[a].column(b)),
            ((Block::G, x), (Block::G, y)) => {
                v[m..m + n].clone_from_slice(g.basis_bracket(x, y));
                v[m + n..].clone_from_slice(&phi(psi, &unit_vector(n, x), &unit_vector(n, y)));
            }
            _ => {}
        }
        v
    });

    let mut gram = Matrix::zeros(d, d);
    for x in 0..n {
        for y in 0..n {
            gram[(m + x, m + y)] = base.form().gram()[(x, y)].clone();
        }
    }
    for a in 0..m {
        gram[(a, m + n + a)] = one();
        gram[(m + n + a, a)] = one();
    }
    let form = ScalarProduct::new(gram)?;
    OrthogonalAlgebra::new(Arc::new(algebra), form)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    H,
    G,
    Dual,
}

fn block(i: usize, m: usize, n: usize) -> (Block, usize) {
    if i < m {
        (Block::H, i)
    } else if i < m + n {
        (Block::G, i - m)
    } else {
        (Block::Dual, i - m - n)
    }
}

fn base_column(psi: &SkewDerivationMap, a: usize, x: usize) -> Vector {
    psi.maps[a].column(x)
}

/// The oscillator algebra `g_λ` in the basis `(e, e_1..e_n, ê_1..ê_n, ê)`:
/// `[e, e_j] = λ_j ê_j`, `[e, ê_j] = −λ_j e_j`, `[e_j, ê_j] = ê`, with the
/// Lorentzian invariant form `Σ (x_j x'_j + y_j y'_j)/λ_j + αβ' + α'β`.
pub fn oscillator(lambda: &[Rational]) -> Result<OrthogonalAlgebra> {
    if lambda.is_empty() {
        return Err(Error::Validation("lambda must be nonempty".into()));
    }
    if let Some(pos) = lambda.iter().position(|l| !l.is_positive()) {
        return Err(Error::Validation(format!("lambda[{pos}] must be positive")));
    }
    if let Some(pos) = lambda.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::Validation(format!(
            "lambda must be nondecreasing at index {}",
            pos + 1
        )));
    }
    let n = lambda.len();
    let d = 2 * n + 2;
    let (e, center) = (0, d - 1);
    let x = |j: usize| 1 + j;
    let y = |j: usize| 1 + n + j;
    let mut basis = vec!["e".to_string()];
    basis.extend((1..=n).map(|j| format!("e{j}")));
    basis.extend((1..=n).map(|j| format!("ê{j}")));
    basis.push("ê".into());

    let mut entries = Vec::new();
    for (j, l) in lambda.iter().enumerate() {
        entries.push((e, x(j), vec![(y(j), l.clone())]));
        entries.push((e, y(j), vec![(x(j), -l.clone())]));
        entries.push((x(j), y(j), vec![(center, one())]));
    }
    let label: Vec<String> = lambda.iter().map(ToString::to_string).collect();
    let algebra = LieAlgebra::new(format!("oscillator({})", label.join(",")), basis, entries)?;

    let mut gram = Matrix::zeros(d, d);
    for (j, l) in lambda.iter().enumerate() {
        gram[(x(j), x(j))] = l.recip();
        gram[(y(j), y(j))] = l.recip();
    }
    gram[(e, center)] = one();
    gram[(center, e)] = one();
    OrthogonalAlgebra::new(Arc::new(algebra), ScalarProduct::new(gram)?)
}

/// Is `ψ` an isomorphism intertwining the coadjoint representation and the
/// dual of `L`, i.e. `ad*_{e_i} ∘ ψ = ψ ∘ L*_{e_i}` for every `i`?
pub fn check_intertwiner(a: &LieAlgebra, p: &Product, psi: &Matrix) -> Result<Report> {
    let n = a.dim();
    check_dim(n, p.dim())?;
    check_dim(n, psi.rows())?;
    check_dim(n, psi.cols())?;
    let mut r = Report::new();
    if !is_flat_affine(p).passed() {
        r.push(Check::warn("hypothesis", "product is not flat affine"));
    }
    let invertible = psi.rank() == n;
    r.push(if invertible {
        Check::pass("invertible")
    } else {
        Check::fail("invertible", None)
    });
    let witness = (0..n).find_map(|i| {
        let ad_star = dual_action(&a.ad_basis(i));
        let l_star = dual_action(&left_mult(p, &unit_vector(n, i)).expect("dimension"));
        let lhs = &ad_star * psi;
        let rhs = psi * &l_star;
        (0..n).find_map(|k| {
            let (l, r) = (lhs.column(k), rhs.column(k));
            (l != r).then(|| Witness::with_sides(vec![i, k], l, r))
        })
    });
    r.push(Check::from_witness("intertwiner", witness));
    Ok(r)
}

/// `aff(ℝ)`: `[e1, e2] = e2`.
pub fn aff1() -> LieAlgebra {
    LieAlgebra::new("aff1", default_basis("e", 2), [(0, 1, vec![(1, one())])]).expect("valid")
}

/// Flat affine family on `aff(ℝ)`: `e1·e1 = α e1`, `e1·e2 = e2`, others zero.
pub fn aff1_flat_product(algebra: Arc<LieAlgebra>, alpha: &Rational) -> Product {
    Product::new(algebra, [(0, 0, vec![(0, alpha.clone())]), (0, 1, vec![(1, one())])]).expect("valid")
}

/// Heisenberg algebra of dimension `2n + 1`: `[e_j, e_{n+j}] = e_{2n+1}`.
pub fn heisenberg(n: usize) -> LieAlgebra {
    let d = 2 * n + 1;
    let entries = (0..n).map(|j| (j, n + j, vec![(d - 1, one())]));
    LieAlgebra::new(format!("heisenberg{n}"), default_basis("e", d), entries).expect("valid")
}

/// Flat affine product on `h₃`: `e2·e1 = −e3`, `e2·e2 = e1`, others zero.
pub fn heisenberg_flat_product(algebra: Arc<LieAlgebra>) -> Product {
    Product::new(algebra, [(1, 0, vec![(2, int(-1))]), (1, 1, vec![(0, one())])]).expect("valid")
}

/// `ℝ ⋉_ρ ℝ³` with `ad_{e1} = diag(1, −1, 0)` on `(e2, e3, e4)`.
pub fn r_rho_r3() -> LieAlgebra {
    LieAlgebra::new(
        "r_rho_r3",
        default_basis("e", 4),
        [(0, 1, vec![(1, one())]), (0, 2, vec![(2, int(-1))])],
    )
    .expect("valid")
}

/// Flat affine family on `ℝ ⋉_ρ ℝ³`: `L_{e1} = diag(α, 1, −1, 0)` and
/// `L_{e2} = L_{e3} = L_{e4} = 0`.
pub fn r_rho_r3_flat_product(algebra: Arc<LieAlgebra>, alpha: &Rational) -> Product {
    Product::new(
        algebra,
        [
            (0, 0, vec![(0, alpha.clone())]),
            (0, 1, vec![(1, one())]),
            (0, 2, vec![(2, int(-1))]),
        ],
    )
    .expect("valid")
}

/// `sl₂` in the basis `(h, e, f)`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::new(
        "sl2",
        vec!["h".into(), "e".into(), "f".into()],
        [
            (0, 1, vec![(1, int(2))]),
            (0, 2, vec![(2, int(-2))]),
            (1, 2, vec![(0, one())]),
        ],
    )
    .expect("valid")
}

/// `so(3)`: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn so3() -> LieAlgebra {
    LieAlgebra::new(
        "so3",
        default_basis("e", 3),
        [
            (0, 1, vec![(2, one())]),
            (1, 2, vec![(0, one())]),
            (0, 2, vec![(1, int(-1))]),
        ],
    )
    .expect("valid")
}

/// A named algebra with its named forms and products.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub algebra: Arc<LieAlgebra>,
    pub forms: Vec<(String, ScalarProduct)>,
    pub products: Vec<(String, Product)>,
}

impl CatalogEntry {
    fn bare(algebra: LieAlgebra) -> Self {
        Self {
            algebra: Arc::new(algebra),
            forms: Vec::new(),
            products: Vec::new(),
        }
    }

    pub fn form(&self, name: &str) -> Option<&ScalarProduct> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn product(&self, name: &str) -> Option<&Product> {
        self.products.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CatalogParams {
    pub n: Option<usize>,
    pub alpha: Option<Rational>,
    pub lambda: Option<Vec<Rational>>,
}

pub const CATALOG_NAMES: [&str; 6] = ["abelian", "aff1", "heisenberg", "oscillator", "r_rho_r3", "sl2"];

/// Looks up a named example.
///
/// | name | params | forms | products |
/// |---|---|---|---|
/// | `aff1` | `alpha` (0) | `hyperbolic`, `euclidean` | `flat` |
/// | `heisenberg` | `n` (1) | `lorentz`, `lorentz_xz` when `n = 1` | `flat` when `n = 1` |
/// | `r_rho_r3` | `alpha` (0) | | `flat` |
/// | `abelian` | `n` (2) | `euclidean` | `zero` |
/// | `sl2` | | `killing` | |
/// | `oscillator` | `lambda` (`[1]`) | `mu0` | |
pub fn catalog(name: &str, params: &CatalogParams) -> Result<CatalogEntry> {
    let alpha = params.alpha.clone().unwrap_or_else(crate::rational::zero);
    match name {
        "aff1" => {
            let mut entry = CatalogEntry::bare(aff1());
            entry.forms.push(("hyperbolic".into(), ScalarProduct::hyperbolic(1)));
            entry.forms.push(("euclidean".into(), ScalarProduct::identity(2)));
            let p = aff1_flat_product(Arc::clone(&entry.algebra), &alpha);
            entry.products.push(("flat".into(), p));
            Ok(entry)
        }
        "heisenberg" => {
            let n = params.n.unwrap_or(1);
            if n == 0 {
                return Err(Error::Validation("heisenberg needs n >= 1".into()));
            }
            let mut entry = CatalogEntry::bare(heisenberg(n));
            if n == 1 {
                let lorentz = Matrix::from_int_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
                let xz = Matrix::from_int_rows(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
                entry.forms.push(("lorentz".into(), ScalarProduct::new(lorentz)?));
                entry.forms.push(("lorentz_xz".into(), ScalarProduct::new(xz)?));
                let p = heisenberg_flat_product(Arc::clone(&entry.algebra));
                entry.products.push(("flat".into(), p));
            }
            Ok(entry)
        }
        "r_rho_r3" => {
            let mut entry = CatalogEntry::bare(r_rho_r3());
            let p = r_rho_r3_flat_product(Arc::clone(&entry.algebra), &alpha);
            entry.products.push(("flat".into(), p));
            Ok(entry)
        }
        "abelian" => {
            let n = params.n.unwrap_or(2);
            let mut entry = CatalogEntry::bare(LieAlgebra::abelian(n));
            entry.forms.push(("euclidean".into(), ScalarProduct::identity(n)));
            entry
                .products
                .push(("zero".into(), Product::zero(Arc::clone(&entry.algebra))));
            Ok(entry)
        }
        "sl2" => {
            let mut entry = CatalogEntry::bare(sl2());
            let killing = ScalarProduct::new(entry.algebra.killing_form())?;
            entry.forms.push(("killing".into(), killing));
            Ok(entry)
        }
        "oscillator" => {
            let lambda = params.lambda.clone().unwrap_or_else(|| vec![one()]);
            let osc = oscillator(&lambda)?;
            Ok(CatalogEntry {
                algebra: Arc::clone(osc.algebra()),
                forms: vec![("mu0".into(), osc.form().clone())],
                products: Vec::new(),
            })
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::is_unimodular;
    use crate::metrics::is_two_nilpotent;
    use crate::rational::frac;

    fn rotation() -> Matrix {
        Matrix::from_int_rows(&[[0, -1], [1, 0]])
    }

    fn plane() -> OrthogonalAlgebra {
        OrthogonalAlgebra::new(Arc::new(LieAlgebra::abelian(2)), ScalarProduct::identity(2)).unwrap()
    }

    fn line() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::new("Re", vec!["e".into()], []).unwrap())
    }

    #[test]
    fn cotangent_of_abelian_is_abelian() {
        let t = cotangent_coadjoint(&LieAlgebra::abelian(3)).unwrap();
        assert!(t.algebra().is_abelian());
        assert_eq!(t.form(), &ScalarProduct::hyperbolic(3));
    }

    #[test]
    fn cotangent_of_h3() {
        let t = cotangent_coadjoint(&heisenberg(1)).unwrap();
        assert_eq!(t.dim(), 6);
        assert!(t.algebra().check_jacobi().passed());
        assert!(is_two_nilpotent(t.algebra()).passed());
        let s = t.form().signature();
        assert_eq!((s.index, s.plus), (3, 3));
    }

    #[test]
    fn cotangent_rejects_non_lie_input() {
        let bad = LieAlgebra::new(
            "bad",
            default_basis("e", 3),
            [(0, 1, vec![(2, one())]), (0, 2, vec![(0, one())])],
        )
        .unwrap();
        assert!(matches!(cotangent_coadjoint(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn classical_cotangent_of_aff() {
        let alg = Arc::new(aff1());
        let p = aff1_flat_product(Arc::clone(&alg), &int(0));
        let pair = classical_cotangent(&alg, &p).unwrap();
        assert!(is_flat_metric(&pair).passed());
        let s = pair.form().signature();
        assert_eq!((s.index, s.plus), (2, 2));
        let bracket = Product::scaled_bracket(Arc::clone(&alg), &one());
        assert!(matches!(
            classical_cotangent(&alg, &bracket),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn oscillator_brackets() {
        let osc = oscillator(&[one()]).unwrap();
        let a = osc.algebra();
        assert_eq!(a.basis_bracket(0, 1), &vec![int(0), int(0), int(1), int(0)]);
        assert_eq!(a.basis_bracket(0, 2), &vec![int(0), int(-1), int(0), int(0)]);
        assert_eq!(a.basis_bracket(1, 2), &vec![int(0), int(0), int(0), int(1)]);
        let osc = oscillator(&[one(), int(2)]).unwrap();
        assert!(osc.algebra().check_jacobi().passed());
        let s = osc.form().signature();
        assert_eq!((s.index, s.plus, s.zero), (1, 5, 0));
        assert!(is_unimodular(osc.algebra()).passed());
    }

    #[test]
    fn oscillator_rejects_bad_lambda() {
        assert!(matches!(oscillator(&[]), Err(Error::Validation(_))));
        assert!(matches!(oscillator(&[int(0)]), Err(Error::Validation(_))));
        assert!(matches!(oscillator(&[int(2), int(1)]), Err(Error::Validation(_))));
        assert!(matches!(oscillator(&[frac(-1, 2)]), Err(Error::Validation(_))));
        assert!(oscillator(&[frac(1, 3), frac(1, 3)]).is_ok());
    }

    #[test]
    fn double_extension_of_plane_is_oscillator() {
        let h = line();
        let psi = SkewDerivationMap::new(Arc::clone(&h), plane(), vec![rotation()]).unwrap();
        assert!(psi.validate().passed());
        let ext = double_extension(&plane(), &h, &psi).unwrap();
        let osc = oscillator(&[one()]).unwrap();
        assert!(ext.algebra().same_structure(osc.algebra()));
        assert_eq!(ext.form(), osc.form());
        assert!(central_extension(&psi).same_structure(&heisenberg(1)));
        assert!(phi_cocycle_check(&psi).passed());
        assert!(theta_derivation_check(&psi).passed());
        assert!(equivariance_check(&psi).passed());
    }

    #[test]
    fn double_extension_rejects_non_skew_psi() {
        let h = line();
        let psi = SkewDerivationMap::new(Arc::clone(&h), plane(), vec![Matrix::identity(2)]).unwrap();
        let err = double_extension(&plane(), &h, &psi).unwrap_err();
        assert_eq!(err, Error::Validation("psi fails skew_symmetric at [0, 0, 0]".into()));
    }

    #[test]
    fn double_extension_rejects_non_homomorphism() {
        // ψ on aff(ℝ) with ψ_{e1} = 0, ψ_{e2} = rotation: ψ_{[e1,e2]} = ψ_{e2} ≠ 0 = [0, ψ_{e2}].
        let h = Arc::new(aff1());
        let psi = SkewDerivationMap::new(Arc::clone(&h), plane(), vec![Matrix::zeros(2, 2), rotation()]).unwrap();
        let r = psi.validate();
        assert!(r.check("derivation").unwrap().passed());
        assert!(r.check("skew_symmetric").unwrap().passed());
        assert!(!r.check("homomorphism").unwrap().passed());
        assert!(matches!(
            double_extension(&plane(), &h, &psi),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn double_extension_over_trivial_base_is_cotangent() {
        for h in [LieAlgebra::abelian(2), aff1(), heisenberg(1)] {
            let h = Arc::new(h);
            let maps = vec![Matrix::zeros(0, 0); h.dim()];
            let psi = SkewDerivationMap::new(Arc::clone(&h), OrthogonalAlgebra::trivial(), maps).unwrap();
            let ext = double_extension(&OrthogonalAlgebra::trivial(), &h, &psi).unwrap();
            let cot = cotangent_coadjoint(&h).unwrap();
            assert!(ext.algebra().same_structure(cot.algebra()));
            assert_eq!(ext.form(), cot.form());
        }
    }

    #[test]
    fn zero_psi_on_abelian_gives_abelian() {
        let h = Arc::new(LieAlgebra::abelian(2));
        let psi = SkewDerivationMap::new(Arc::clone(&h), plane(), vec![Matrix::zeros(2, 2); 2]).unwrap();
        let ext = double_extension(&plane(), &h, &psi).unwrap();
        assert!(ext.algebra().is_abelian());
        assert_eq!(ext.dim(), 6);
    }

    #[test]
    fn intertwiner_examples() {
        let ab = Arc::new(LieAlgebra::abelian(2));
        let r = check_intertwiner(&ab, &Product::zero(Arc::clone(&ab)), &Matrix::identity(2)).unwrap();
        assert!(r.passed());
        let h = Arc::new(aff1());
        let p = aff1_flat_product(Arc::clone(&h), &int(0));
        // ad*_{e2} = −ad_{e2}ᵀ = [[0,1],[0,0]] while L*_{e2} = 0: first mismatch is column 1.
        let r = check_intertwiner(&h, &p, &Matrix::identity(2)).unwrap();
        let fail = r.first_failure().unwrap();
        assert_eq!(fail.name, "intertwiner");
        assert_eq!(fail.witness.as_ref().unwrap().indices, vec![1, 1]);
        assert!(check_intertwiner(&h, &p, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn catalog_lookup() {
        let p = CatalogParams::default();
        for name in CATALOG_NAMES {
            let entry = catalog(name, &p).unwrap();
            assert!(entry.algebra.check_jacobi().passed(), "{name}");
            for (_, prod) in &entry.products {
                assert!(is_flat_affine(prod).passed(), "{name}");
            }
        }
        assert!(matches!(catalog("nope", &p), Err(Error::UnknownName(_))));
        let r = catalog("r_rho_r3", &p).unwrap();
        let ad1 = r.algebra.ad_basis(0);
        assert_eq!(
            ad1,
            Matrix::from_int_rows(&[[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]])
        );
        let sl = catalog("sl2", &p).unwrap();
        assert!(sl.form("killing").unwrap().signature().is_nondegenerate());
        let ab = catalog(
            "abelian",
            &CatalogParams {
                n: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(ab.algebra.is_abelian() && ab.algebra.dim() == 3);
    }
}
