//! Linear positions of polytopes that optimize the isodiametric and
//! isominwidth quotients, certified through decompositions of the identity,
//! together with Dvoretzky–Rogers-type simplex volume constants.
//!
//! The crate is organized bottom-up:
//!
//! - [`polytope`], [`bodies`], [`angle`], [`map`]: polytope primitives.
//! - [`ellipsoid`]: minimal-volume enclosing and maximal inscribed ellipsoids.
//! - [`decomposition`]: identity decompositions, Cauchy–Binet sums, NNLS fitting.
//! - [`positions`]: Behrend and isominwidth normalization with certificates.
//! - [`dr`]: Dvoretzky–Rogers bounds, witnesses and the minimax search.
//! - [`claims`]: the acceptance checks, shared by the test suite and the CLI.

pub mod angle;
pub mod bodies;
pub mod claims;
pub mod decomposition;
pub mod dr;
pub mod ellipsoid;
pub mod error;
mod hull;
pub mod io;
pub mod linalg;
pub mod map;
pub mod nnls;
pub mod polytope;
pub mod positions;
pub mod random;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::Point;
pub use map::LinearMap;
pub use polytope::{DirectionSet, Facet, Polytope};
