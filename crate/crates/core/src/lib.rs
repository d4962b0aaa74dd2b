//! Exact computation with Lie conformal algebras: λ-brackets, axiom checks,
//! conformal second cohomology with rank-one coefficients, classification of
//! filtered deformations of gr gc1, and triviality checks for small modules.

pub mod algebra;
pub mod classify;
pub mod dsl;
pub mod cohomology;
pub mod zoo;
pub mod error;
pub mod linsolve;
pub mod matrix;
pub mod poly;
pub mod repcheck;
pub mod scalar;

pub use algebra::{Check, ConformalAlgebra, ConformalModule, Element, Gen, LambdaExpr, LinComb};
pub use error::{Error, MathError, Result};
pub use matrix::{ExactMatrix, SolutionSpace};
pub use poly::{Monomial, MultiPoly, Var};
pub use scalar::{binom, Scalar};
