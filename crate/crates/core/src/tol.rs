//! Tolerances used across the crate, collected in one place.
//!
//! Geometry predicates run on data normalized to circumradius about 1, so the
//! hull tolerance is an absolute one on that scale.

/// Hull visibility/coplanarity threshold on normalized coordinates.
pub const HULL: f64 = 1e-10;

/// Relative rank threshold for affine-span and basis rank checks.
pub const RANK: f64 = 1e-9;

/// Facets whose normals and offsets agree to this are merged into one.
pub const FACET_MERGE: f64 = 1e-8;

/// Angular tolerance for deduplicating unit directions.
pub const DIRECTION_DEDUP: f64 = 1e-8;

/// Default relative slack admitting a vertex pair as diametrical.
pub const DIAMETER_REL: f64 = 1e-9;

/// Relative slack admitting a direction as a minimum-width direction.
pub const MIN_WIDTH_REL: f64 = 1e-7;

/// Default accuracy of the minimal-volume ellipsoid solver.
pub const MVEE_EPS: f64 = 1e-8;

/// Iteration cap of the minimal-volume ellipsoid solver.
pub const MVEE_MAX_ITER: usize = 1_000_000;

/// Weights below this are pruned from contact data.
pub const WEIGHT_PRUNE: f64 = 1e-9;

/// Optimality (gradient) tolerance of the NNLS active-set solver.
pub const NNLS_GRADIENT: f64 = 1e-12;

/// Cap on the number of subsets enumerated by any exhaustive routine.
pub const SUBSET_CAP: u128 = 10_000_000;

/// Diametrical slack used when certifying Behrend position.
pub const BEHREND_DIAMETER_REL: f64 = 1e-6;

/// Residual accepted for a Behrend certificate.
pub const BEHREND_RESIDUAL: f64 = 1e-4;

/// Residual accepted for an isominwidth certificate.
pub const ISOMINWIDTH_RESIDUAL: f64 = 1e-3;
