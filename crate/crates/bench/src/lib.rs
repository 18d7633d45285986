//! Inputs shared by the benchmarks.

use std::sync::Arc;

use flatlie::constructions::oscillator;
use flatlie::rational::int;
use flatlie::{LieAlgebra, Matrix, OrthogonalAlgebra};

/// Oscillator algebra with `λ = (1, 2, …, n)`, dimension `2n + 2`.
pub fn oscillator_of_rank(n: usize) -> OrthogonalAlgebra {
    let lambda: Vec<_> = (1..=n as i64).map(int).collect();
    oscillator(&lambda).expect("increasing positive lambda")
}

/// `planes` commuting rotations, one per plane of `R^{2·planes}`.
pub fn plane_rotations(planes: usize) -> Vec<Matrix> {
    let n = 2 * planes;
    (0..planes)
        .map(|p| {
            let mut m = Matrix::zeros(n, n);
            m[(2 * p + 1, 2 * p)] = int(p as i64 + 1);
            m[(2 * p, 2 * p + 1)] = int(-(p as i64) - 1);
            m
        })
        .collect()
}

pub fn shared(a: LieAlgebra) -> Arc<LieAlgebra> {
    Arc::new(a)
}
