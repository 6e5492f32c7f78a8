//! Exact bisector geometry for polyhedral norms.
//!
//! A full-dimensional centrally symmetric polytope `P` with the origin in its
//! interior induces a norm whose unit ball is `P`. The bisector of two sites
//! under such a norm is a polyhedral complex whose maximal cells are labelled
//! by ordered pairs of facets `(F, G)`. This crate computes, in exact rational
//! arithmetic:
//!
//! * gauge values, face cones and (weak) general position ([`polytope`]),
//! * bisection cones `B_{F,G}` — the sets of site directions for which the
//!   labelled cell is present — via vertex-difference generators,
//!   homogenization LPs and per-family closed forms ([`biscone`]),
//! * the set of nonempty maximal cells of a bisector, cell counts and the
//!   induced equivalence of bisectors ([`bisector`]),
//! * fan location: the combinatorial signature of the maximal fan cone
//!   containing a generic site, for polygons, the cube, the cross-polytope
//!   and the discrete Wasserstein norm ([`fanlocate`]),
//! * an exact LP feasibility oracle used as ground truth ([`lp`]),
//! * 3D cone-complex meshes `B_{F,G} ∩ P` for export ([`export`]).
//!
//! All core math is generic over an exact [`Scalar`]; the concrete aliases
//! [`Rat`], [`QVec`] and [`QMat`] fix arbitrary-precision rationals.
//!
//! Every type is an immutable value and every operation a pure function, so
//! anything here can be shared across threads and evaluated in parallel
//! (cell enumeration parallelizes naturally over facet pairs).

pub mod biscone;
pub mod bisector;
mod error;
pub mod export;
pub mod fanlocate;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod sample;
pub mod scalar;

pub use error::Error;
pub use linalg::{solve_linear, LinearSolution, QMatrix, QVector};
pub use scalar::{Scalar, Sign};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// The exact scalar used by the CLI, fixtures and tests.
pub type Rat = BigRational;
/// Vector of [`Rat`] coordinates.
pub type QVec = QVector<Rat>;
/// Matrix with [`Rat`] entries.
pub type QMat = QMatrix<Rat>;

/// The reduced fraction `num/den` with positive denominator.
pub fn rat(num: i64, den: i64) -> Result<Rat, Error> {
    Rat::from_fraction(num, den).ok_or(Error::ZeroDenominator)
}
