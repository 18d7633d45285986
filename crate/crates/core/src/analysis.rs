//! Structure detection: Milnor decomposition of flat Riemannian algebras,
//! semisimplicity and orthogonal complements of ideals.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{default_basis, LieAlgebra};
use crate::connections::left_mult;
use crate::constructions::OrthogonalAlgebra;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{in_span, nullspace, unit_vector, zero_vector, Matrix, Vector};
use crate::metrics::{is_flat_metric, levi_civita, MetricPair, ScalarProduct};
use crate::rational::Rational;
use crate::report::{Check, Report, Witness};

/// Orthogonal splitting `g = b ⊕ u` into an abelian subalgebra and an abelian
/// ideal on which `b` acts by skew maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorDecomposition {
    pub b_basis: Vec<Vector>,
    pub u_basis: Vec<Vector>,
    pub certified: Report,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilnorOutcome {
    Decomposed(MilnorDecomposition),
    /// `reason` names the first violated condition; `report` holds the checks
    /// run up to that point.
    Failure {
        reason: String,
        report: Report,
    },
}

impl MilnorOutcome {
    pub fn decomposition(&self) -> Option<&MilnorDecomposition> {
        match self {
            MilnorOutcome::Decomposed(d) => Some(d),
            MilnorOutcome::Failure { .. } => None,
        }
    }

    pub fn report(&self) -> &Report {
        match self {
            MilnorOutcome::Decomposed(d) => &d.certified,
            MilnorOutcome::Failure { report, .. } => report,
        }
    }
}

pub const NOT_FLAT: &str = "metric not flat";

/// `{v : A v = 0}` where the rows of `A` are `rows`; the whole space when
/// there are none.
fn annihilator(rows: &[Vector], dim: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..dim).map(|i| unit_vector(dim, i)).collect();
    }
    nullspace(&Matrix::from_rows(rows.to_vec()).expect("rows of equal length"))
}

fn orthogonal_complement(g: &ScalarProduct, basis: &[Vector]) -> Vec<Vector> {
    let rows: Vec<Vector> = basis.iter().map(|v| g.lower(v)).collect();
    annihilator(&rows, g.dim())
}

/// First `(i, k)` with `[e_i, basis_k] ∉ span(basis)`.
fn ideal_witness(a: &LieAlgebra, basis: &[Vector]) -> Option<Witness> {
    (0..a.dim()).find_map(|i| {
        basis.iter().enumerate().find_map(|(k, v)| {
            let w = a.bracket_basis_left(i, v);
            (!in_span(basis, &w)).then(|| Witness::with_sides(vec![i, k], w, zero_vector(a.dim())))
        })
    })
}

/// Whether `span(basis)` is an ideal.
pub fn is_ideal(a: &LieAlgebra, basis: &[Vector]) -> Report {
    Report::single(Check::from_witness("ideal", ideal_witness(a, basis)))
}

fn abelian_witness(a: &LieAlgebra, basis: &[Vector]) -> Option<Witness> {
    (0..basis.len()).find_map(|i| {
        (i + 1..basis.len()).find_map(|j| {
            let w = a.bracket(&basis[i], &basis[j]).expect("dimension");
            (!w.iter().all(Zero::is_zero)).then(|| Witness::with_sides(vec![i, j], w, zero_vector(a.dim())))
        })
    })
}

/// First `(k, i, j)` with `μ(ad_{b_k} e_i, e_j) + μ(e_i, ad_{b_k} e_j) ≠ 0`.
fn skew_action_witness(a: &LieAlgebra, g: &ScalarProduct, b: &[Vector]) -> Option<Witness> {
    b.iter().enumerate().find_map(|(k, v)| {
        let ad = a.ad_matrix(v).expect("dimension");
        let gm = g.gram() * &ad;
        let sym = &gm + &gm.transpose();
        let n = a.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !sym[(i, j)].is_zero())
            .map(|(i, j)| Witness::with_sides(vec![k, i, j], vec![sym[(i, j)].clone()], vec![Rational::zero()]))
    })
}

/// Splits a flat Riemannian algebra as `b ⊕ u` with `u = {x : L_x = 0}` for
/// the Levi-Civita product and `b = u^⊥`.
///
/// Returns `Failure` with reason [`NOT_FLAT`] when the metric has curvature,
/// or with the name of the first failed certificate otherwise.
pub fn milnor_decompose(a: &Arc<LieAlgebra>, g: &ScalarProduct) -> Result<MilnorOutcome> {
    let n = a.dim();
    check_dim(n, g.dim())?;
    if !g.is_positive_definite() {
        return Err(Error::Precondition(format!(
            "form has signature {}, not positive definite",
            g.signature()
        )));
    }
    let pair = levi_civita(a, g)?;
    let mut report = is_flat_metric(&pair);
    if !report.passed() {
        return Ok(MilnorOutcome::Failure {
            reason: NOT_FLAT.into(),
            report,
        });
    }

    // Column j is vec(L_{e_j}), so the nullspace is Ker(x ↦ L_x).
    let lefts: Vec<Matrix> = (0..n)
        .map(|j| left_mult(pair.product(), &unit_vector(n, j)).expect("dimension"))
        .collect();
    let mut stacked = Matrix::zeros(n * n, n);
    for (j, l) in lefts.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                stacked[(r * n + c, j)] = l[(r, c)].clone();
            }
        }
    }
    let u_basis = nullspace(&stacked);
    let b_basis = orthogonal_complement(g, &u_basis);

    let orth = b_basis.iter().enumerate().find_map(|(i, b)| {
        u_basis.iter().enumerate().find_map(|(j, u)| {
            let v = g.eval(b, u).expect("dimension");
            (!v.is_zero()).then(|| Witness::with_sides(vec![i, j], vec![v], vec![Rational::zero()]))
        })
    });
    report.push(Check::from_witness("orthogonal", orth));
    let mut all = b_basis.clone();
    all.extend(u_basis.iter().cloned());
    let spans = all.len() == n && (all.is_empty() || Matrix::from_rows(all).expect("rows").rank() == n);
    report.push(if spans {
        Check::pass("direct_sum")
    } else {
        Check::fail("direct_sum", None)
    });
    report.push(Check::from_witness("u_ideal", ideal_witness(a, &u_basis)));
    report.push(Check::from_witness("u_abelian", abelian_witness(a, &u_basis)));
    report.push(Check::from_witness("b_abelian", abelian_witness(a, &b_basis)));
    report.push(Check::from_witness("b_skew", skew_action_witness(a, g, &b_basis)));

    Ok(match report.first_failure() {
        Some(c) => MilnorOutcome::Failure {
            reason: c.name.clone(),
            report,
        },
        None => MilnorOutcome::Decomposed(MilnorDecomposition {
            b_basis,
            u_basis,
            certified: report,
        }),
    })
}

/// Builds `b ⋉ u` with `[b_i, u_j] = action_i(u_j)` and its Levi-Civita pair
/// for the block-diagonal form `g` (basis `b_1.., u_1..`).
pub fn milnor_assemble(
    b_dim: usize,
    u_dim: usize,
    action: &[Matrix],
    g: &ScalarProduct,
) -> Result<(Arc<LieAlgebra>, MetricPair)> {
    let n = b_dim + u_dim;
    check_dim(b_dim, action.len())?;
    check_dim(n, g.dim())?;
    for m in action {
        check_dim(u_dim, m.rows())?;
        check_dim(u_dim, m.cols())?;
    }
    if !g.is_positive_definite() {
        return Err(Error::Validation("g: not positive definite".into()));
    }
    let gram = g.gram();
    for i in 0..b_dim {
        for j in b_dim..n {
            if !gram[(i, j)].is_zero() {
                return Err(Error::Validation(format!("g: entry ({i}, {j}) couples b and u")));
            }
        }
    }
    let mut gu = Matrix::zeros(u_dim, u_dim);
    for i in 0..u_dim {
        for j in 0..u_dim {
            gu[(i, j)] = gram[(b_dim + i, b_dim + j)].clone();
        }
    }
    for (k, m) in action.iter().enumerate() {
        let gm = &gu * m;
        if !(&gm + &gm.transpose()).is_zero() {
            return Err(Error::Validation(format!("action[{k}]: not antisymmetric")));
        }
    }
    for i in 0..b_dim {
        for j in i + 1..b_dim {
            if !action[i].commutator(&action[j])?.is_zero() {
                return Err(Error::Validation(format!("action[{i}], action[{j}]: do not commute")));
            }
        }
    }
    let mut basis = default_basis("b", b_dim);
    basis.extend(default_basis("u", u_dim));
    let algebra = Arc::new(LieAlgebra::from_rule("milnor", basis, |i, j| {
        let mut v = zero_vector(n);
        if i < b_dim && j >= b_dim {
            for (k, c) in action[i].column(j - b_dim).into_iter().enumerate() {
                v[b_dim + k] = c;
            }
        }
        v
    }));
    let pair = levi_civita(&algebra, g)?;
    if !is_flat_metric(&pair).passed() {
        return Err(Error::Validation("assembled metric is not flat".into()));
    }
    Ok((algebra, pair))
}

/// Passes iff the Killing form is nondegenerate.
pub fn is_semisimple(a: &LieAlgebra) -> Report {
    let k = a.killing_form();
    let rank = k.rank();
    Report::single(if rank == a.dim() {
        Check::pass("semisimple")
    } else {
        Check::fail("semisimple", None).with_note(format!("Killing form has rank {rank} of {}", a.dim()))
    })
}

/// Basis of `span(ideal)^⊥` together with a certificate that it is an ideal.
///
/// Invariance alone makes the complement an ideal, so indefinite forms are
/// accepted; the `complementary` check then records whether the sum is direct.
pub fn orthogonal_complement_ideal(o: &OrthogonalAlgebra, ideal_basis: &[Vector]) -> Result<(Vec<Vector>, Report)> {
    let a = o.algebra();
    for v in ideal_basis {
        check_dim(a.dim(), v.len())?;
    }
    if let Some(w) = ideal_witness(a, ideal_basis) {
        return Err(Error::Validation(format!(
            "ideal_basis: not an ideal at {:?}",
            w.indices
        )));
    }
    let complement = orthogonal_complement(o.form(), ideal_basis);
    let mut report = Report::new();
    report.push(Check::from_witness("complement_ideal", ideal_witness(a, &complement)));
    let mut all = ideal_basis.to_vec();
    all.extend(complement.iter().cloned());
    let direct = all.is_empty() || Matrix::from_rows(all).expect("rows").rank() == a.dim();
    report.push(if direct {
        Check::pass("complementary")
    } else {
        Check::warn("complementary", "form is degenerate on the ideal")
    });
    Ok((complement, report))
}
