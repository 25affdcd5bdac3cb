//! Exact approximation algorithms for Matroid Center on the real line and
//! Robust Euclidean k-Supplier, with the matching, matroid and LP machinery
//! they rest on, reference baselines, and brute-force oracles.
//!
//! Every algorithm is generic over an [`ExactField`] scalar; the aliases below
//! fix it to arbitrary-precision rationals, which is what the JSON formats
//! and the CLI use.

pub mod baselines;
pub mod error;
pub mod gen;
pub mod geometry;
pub mod instance;
pub mod line_center;
pub mod lp;
pub mod matching;
pub mod matroid;
pub mod oracles;
pub mod scalar;
pub mod supplier;

pub use error::{Error, Result};
pub use geometry::{sq_dist, SqRadius};
pub use instance::{AnyInstance, LineInstance, Solution, SupplierInstance};
pub use line_center::{either_or_line, solve_matroid_center_line, EitherOr};
pub use matching::{solve_max_k_edge_cover, CoverEdge, CoverGraph};
pub use matroid::{IndependenceOracle, MatroidSpec};
pub use scalar::{ExactField, Rational};
pub use supplier::{round_or_cut, solve_robust_supplier};

/// The default scalar.
pub type Scalar = Rational;
pub type RationalLineInstance = LineInstance<Rational>;
pub type RationalSupplierInstance = SupplierInstance<Rational>;
pub type RationalSolution = Solution<Rational>;
pub type RationalSqRadius = SqRadius<Rational>;
