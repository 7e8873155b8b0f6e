//! Finite groups, evaluable maps and the actions built from them.

pub mod action;
pub mod group;
pub mod mapping;
pub mod words;

pub use action::{Action, ActionReport, LipschitzInfo, OrbitStats};
pub use group::{verify_group, FiniteGroup, GroupReport};
pub use mapping::{BoxMap, BoxMapKind, CircleMap, CircleMapKind, LipschitzBound, LipschitzKind, Map, PiecewiseLinear};
pub use words::{word_ball_orbit, WordBall, DEFAULT_WORD_CAP};
