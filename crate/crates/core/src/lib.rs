//! Multi-point algebraic-geometry codes on Hermitian curves, their
//! Weierstrass semigroups, and the near-weight lower bound on the minimum
//! distance of the dual code.

pub mod bounds;
pub mod codes;
pub mod curve;
pub mod error;
pub mod field;
pub mod function;
pub mod linalg;
pub mod near_weights;
pub mod riemann_roch;
pub mod series;
pub mod tables;
pub mod weierstrass;

pub use curve::{BranchExpansion, HermitianCurve, PlaceKind, RationalPlace};
pub use error::{Error, Result};
pub use field::{Elem, FieldElement, FieldSpec};
pub use function::{CurvePoly, FunctionElement};
pub use riemann_roch::{DivisorVector, RRBasis, RiemannRoch};
pub use weierstrass::{BoxTable, NumericalSemigroup, Semigroup};
pub use near_weights::{NearWeights, Rho};
pub use bounds::{BoundEngine, BoundReport, ChainMode, ChainRule, PairChain, Path, PathChoice};
pub use codes::{build_code, dual_min_distance_upto, DualDistance, EvaluationCode};
