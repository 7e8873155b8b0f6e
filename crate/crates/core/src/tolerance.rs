//! Numerical tolerances shared by every module.
//!
//! Geometry predicates (containment, emptiness of an intersection, point
//! deduplication) use the absolute [`GEOMETRY`] tolerance. Audit thresholds
//! used by the iteration and verification layers live next to it so that a
//! report can echo every constant it was checked against.

/// Absolute tolerance for geometry predicates.
pub const GEOMETRY: f64 = 1e-12;

/// Points closer than this are treated as one orbit point.
pub const DEDUP: f64 = 1e-12;

/// Slack allowed on inequality audits (contraction ratios, lemma bounds).
pub const AUDIT: f64 = 1e-9;

/// Maximum homomorphism deviation accepted by action verification.
pub const HOMOMORPHISM: f64 = 1e-9;

/// Maximum slack between a sampled Lipschitz estimate and a declared bound.
pub const DECLARED_LIPSCHITZ: f64 = 1e-6;

/// Default termination tolerance on the orbit diameter.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 200;

/// Default grid step for brute-force oracles.
pub const GRID_STEP: f64 = 1e-3;
