//! Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{add_vectors, axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::rational::Rational;
use crate::report::{Check, Report, Witness};

/// One stored bracket: `[e_i, e_j] = Σ coeff·e_k` with `i < j`.
pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

/// A finite-dimensional real Lie algebra in a fixed basis.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; the rest follow from
/// antisymmetry. Jacobi is not assumed; see [`LieAlgebra::check_jacobi`].
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
    // Dense `[e_i, e_j]` for all ordered pairs, row-major.
    table: Vec<Vector>,
}

impl LieAlgebra {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = BracketEntry>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (pos, (i, j, coeffs)) in entries.into_iter().enumerate() {
            if i >= n || j >= n {
                return Err(Error::Validation(format!(
                    "brackets[{pos}]: index out of range for dimension {n}"
                )));
            }
            if i >= j {
                return Err(Error::Validation(format!("brackets[{pos}]: i<j required")));
            }
            if brackets.contains_key(&(i, j)) {
                return Err(Error::Validation(format!(
                    "brackets[{pos}]: duplicate entry for ({i}, {j})"
                )));
            }
            let mut row = BTreeMap::new();
            for (k, c) in coeffs {
                if k >= n {
                    return Err(Error::Validation(format!(
                        "brackets[{pos}]: index out of range for dimension {n}"
                    )));
                }
                let slot: &mut Rational = row.entry(k).or_default();
                *slot += c;
            }
            row.retain(|_, c: &mut Rational| !c.is_zero());
            if !row.is_empty() {
                brackets.insert((i, j), row);
            }
        }
        let mut table = vec![zero_vector(n); n * n];
        for (&(i, j), row) in &brackets {
            for (&k, c) in row {
                table[i * n + j][k] = c.clone();
                table[j * n + i][k] = -c.clone();
            }
        }
        Ok(Self {
            name: name.into(),
            basis,
            brackets,
            table,
        })
    }

    /// Builds an algebra from a rule giving `[e_i, e_j]` for `i < j`.
    pub fn from_rule(
        name: impl Into<String>,
        basis: Vec<String>,
        mut rule: impl FnMut(usize, usize) -> Vector,
    ) -> Self {
        let n = basis.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = rule(i, j);
                assert_eq!(v.len(), n, "bracket rule returned a vector of the wrong length");
                let coeffs: Vec<_> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !coeffs.is_empty() {
                    entries.push((i, j, coeffs));
                }
            }
        }
        Self::new(name, basis, entries).expect("rule produces well-formed entries")
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(format!("abelian{n}"), default_basis("e", n), []).expect("no brackets")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// Nonzero stored brackets, ordered by `(i, j)` then `k`.
    pub fn bracket_entries(&self) -> Vec<BracketEntry> {
        self.brackets
            .iter()
            .map(|(&(i, j), row)| (i, j, row.iter().map(|(&k, c)| (k, c.clone())).collect()))
            .collect()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[i * self.dim() + j][k]
    }

    /// `[e_i, e_j]`
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        check_dim(n, x.len())?;
        check_dim(n, y.len())?;
        let mut out = zero_vector(n);
        for (&(i, j), row) in &self.brackets {
            // x^i y^j − x^j y^i
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (&k, s) in row {
                out[k] += &c * s;
            }
        }
        Ok(out)
    }

    /// Bracket of a basis vector with an arbitrary vector.
    pub fn bracket_basis_left(&self, i: usize, y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut out, yj, self.basis_bracket(i, j));
        }
        out
    }

    /// Matrix of `ad_x = [x, ·]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        let n = self.dim();
        check_dim(n, x.len())?;
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let mut col = zero_vector(n);
                for (i, xi) in x.iter().enumerate() {
                    axpy(&mut col, xi, self.basis_bracket(i, j));
                }
                col
            })
            .collect();
        Ok(Matrix::from_columns(n, &cols))
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad_matrix(&unit_vector(self.dim(), i))
            .expect("basis vector has the right length")
    }

    /// Verifies the Jacobi identity on every basis triple `i < j < k`.
    ///
    /// The reported witness is the first failing triple in lexicographic order.
    pub fn check_jacobi(&self) -> Report {
        let n = self.dim();
        let witness = (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .find_map(|(i, j, k)| {
                let a = self.bracket_basis_right(self.basis_bracket(i, j), k);
                let b = self.bracket_basis_right(self.basis_bracket(j, k), i);
                let c = self.bracket_basis_right(self.basis_bracket(k, i), j);
                let sum = add_vectors(&add_vectors(&a, &b), &c);
                (!is_zero_vector(&sum)).then(|| Witness::with_sides(vec![i, j, k], sum, zero_vector(n)))
            });
        Report::single(Check::from_witness("jacobi", witness))
    }

    /// `[x, e_k]`
    fn bracket_basis_right(&self, x: &[Rational], k: usize) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.basis_bracket(i, k));
        }
        out
    }

    /// Killing form `K_ij = tr(ad_{e_i} ∘ ad_{e_j})`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = (&ads[i] * &ads[j]).trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    /// The same algebra written in the basis `f_j = Σ_i S_ij e_i`, i.e. the
    /// columns of `change` are the new basis vectors.
    pub fn change_basis(&self, change: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim();
        check_dim(n, change.rows())?;
        check_dim(n, change.cols())?;
        let inverse = change.inverse()?;
        let cols: Vec<Vector> = (0..n).map(|j| change.column(j)).collect();
        let mut failure = None;
        let out = LieAlgebra::from_rule(self.name.clone(), self.basis.clone(), |i, j| {
            match self.bracket(&cols[i], &cols[j]).and_then(|b| inverse.apply(&b)) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    zero_vector(n)
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Direct sum `self ⊕ other`, with `self`'s basis first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut entries = self.bracket_entries();
        entries.extend(
            other
                .bracket_entries()
                .into_iter()
                .map(|(i, j, row)| (i + n, j + n, row.into_iter().map(|(k, c)| (k + n, c)).collect())),
        );
        LieAlgebra::new(format!("{}+{}", self.name, other.name), basis, entries)
            .expect("shifted entries stay well-formed")
    }

    /// Whether two algebras have identical structure constants (names ignored).
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim() && self.brackets == other.brackets
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?}, dim {}", self.name, self.dim())?;
        for (&(i, j), row) in &self.brackets {
            let terms: Vec<String> = row.iter().map(|(k, c)| format!("{c}·{}", self.basis[*k])).collect();
            write!(f, ", [{},{}]={}", self.basis[i], self.basis[j], terms.join("+"))?;
        }
        write!(f, ")")
    }
}

/// `prefix1, prefix2, ..., prefixN`
pub fn default_basis(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}
