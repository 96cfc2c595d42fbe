//! Exact computer algebra for the rational homotopy of the moduli space `N_X`
//! of rank-2, odd-degree, fixed-determinant stable bundles over a genus-`g`
//! curve.
//!
//! The pipeline is:
//!
//! 1. [`moduli`] presents `H*(N_X, Q)` as a quotient of the free graded
//!    commutative algebra on `α, γ_1..γ_{2g}, β` and cross-checks its Betti
//!    numbers two independent ways.
//! 2. [`sullivan`] runs the inductive minimal-model construction against the
//!    target `(H*, 0)`, one torus weight block at a time, so every stage `V^n`
//!    carries an `Sp(2g)` character.
//! 3. [`sp`] decomposes those characters into irreducible `Sp(2g, C)` modules.
//!
//! All arithmetic is exact. The linear algebra, free algebras and models are
//! generic over an exact field [`Field`]; the crate-root aliases pin the
//! arbitrary-precision rationals used everywhere in practice.

pub mod dga;
pub mod gca;
pub mod linalg;
pub mod moduli;
pub mod scalar;
pub mod sp;
pub mod sullivan;
pub mod weight;

pub use scalar::Field;

/// Arbitrary-precision rationals, the scalar used by every public entry point.
pub type Rational = num_rational::BigRational;

pub type RationalMatrix = linalg::Matrix<Rational>;
pub type RationalVector = linalg::SparseVec<Rational>;
pub type Element = gca::Element<Rational>;
pub type Dga = dga::Dga<Rational>;
pub type GradedQuotient = dga::GradedQuotient<Rational>;
pub type TargetAlgebra = sullivan::TargetAlgebra<Rational>;
pub type MinimalModel = sullivan::MinimalModel<Rational>;
pub type ModuliRing = moduli::ModuliRing<Rational>;
pub type QTriple = moduli::QTriple<Rational>;
