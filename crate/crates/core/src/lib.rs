//! Exact computations on finite-dimensional real Lie algebras given by
//! structure constants: left-invariant connections and their flatness,
//! Levi-Civita products of scalar products, invariant (orthogonal) structures,
//! and constructions that produce new orthogonal and flat pseudo-Riemannian
//! Lie algebras.
//!
//! Every scalar is an exact rational, so identities are checked with `==`.

pub mod algebra;
pub mod analysis;
pub mod connections;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod rational;
pub mod report;

pub use algebra::LieAlgebra;
pub use analysis::{MilnorDecomposition, MilnorOutcome};
pub use connections::Product;
pub use constructions::{OrthogonalAlgebra, SkewDerivationMap};
pub use error::{Error, Result};
pub use linalg::{LinearMap, Matrix, Signature, Vector};
pub use metrics::{MetricPair, ScalarProduct};
pub use rational::Rational;
pub use report::{Check, Report, Verdict, Witness};
