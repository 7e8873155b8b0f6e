//! Constructive common fixed points of uniformly Lipschitz finite group
//! actions on two exactly computable spaces: `(ℝ^d, ℓ∞)`, where every
//! admissible set is a box, and the geodesic circle, where admissible sets
//! are finite unions of arcs.

pub mod box_space;
pub mod circle_space;
pub mod error;
pub mod fixpoint;
pub mod group_action;
pub mod harness;
pub mod model;
pub mod report;
pub mod retraction;
pub mod tolerance;

pub use error::{Error, Result};
