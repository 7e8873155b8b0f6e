//! The two concrete spaces behind a common interface, so that orbits,
//! iterations and audits are written once.

use std::f64::consts::PI;
use std::fmt::Debug;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::box_space::{self, Cuboid, Point};
use crate::circle_space::{self, ArcSet, CirclePoint};
use crate::error::{Error, Result};
use crate::group_action::mapping::{BoxMap, CircleMap, Map};
use crate::tolerance;

/// Deterministic generator used by every sampling routine.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub trait MetricModel: Clone + Debug + Send + Sync {
    type Point: Clone + Debug + PartialEq + Send + Sync;
    type Map: Map<Self::Point>;
    /// Admissible sets, with a distinguished empty value.
    type Set: Clone + Debug + PartialEq + Send + Sync;

    fn name(&self) -> &'static str;

    fn dist(&self, p: &Self::Point, q: &Self::Point) -> f64;

    fn diameter(&self, points: &[Self::Point]) -> f64 {
        let mut best: f64 = 0.0;
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                best = best.max(self.dist(p, q));
            }
        }
        best
    }

    /// Chebyshev radius `inf_y sup_{x∈K} d(y, x)` of a nonempty finite set.
    fn radius(&self, points: &[Self::Point]) -> f64;

    fn dedup(&self, points: &[Self::Point]) -> Vec<Self::Point> {
        let mut out: Vec<Self::Point> = Vec::with_capacity(points.len());
        for p in points {
            if !out.iter().any(|q| self.dist(p, q) <= tolerance::DEDUP) {
                out.push(p.clone());
            }
        }
        out
    }

    /// `⋂ B(c, r)` over a nonempty list of centers.
    fn balls_meet(&self, centers: &[Self::Point], r: f64) -> Result<Self::Set>;

    /// `S ∩ ⋂_{y∈S} B(y, r)`.
    fn within_of_all(&self, set: &Self::Set, r: f64) -> Self::Set;

    fn is_empty(&self, set: &Self::Set) -> bool;

    /// Deterministic choice of a point of `set`; `previous` is the last
    /// iterate, used as a preference where the model needs one.
    fn select(&self, set: &Self::Set, previous: &Self::Point) -> Result<Self::Point>;

    fn set_contains(&self, set: &Self::Set, p: &Self::Point, tol: f64) -> bool;

    fn set_hausdorff(&self, a: &Self::Set, b: &Self::Set) -> Result<f64>;

    fn identity_map(&self) -> Self::Map;

    /// Uniform sample from the model's sampling domain.
    fn sample(&self, rng: &mut SeededRng) -> Self::Point;

    /// A point at distance exactly `scale` (up to rounding) from `p`.
    fn sample_at_distance(&self, p: &Self::Point, scale: f64, rng: &mut SeededRng) -> Self::Point;

    fn coords(&self, p: &Self::Point) -> Vec<f64>;

    fn format_point(&self, p: &Self::Point) -> String;
}

/// `(ℝ^d, ℓ∞)`; `domain` bounds the sampling region only.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpace {
    pub domain: Cuboid,
}

impl BoxSpace {
    pub fn new(domain: Cuboid) -> Self {
        BoxSpace { domain }
    }

    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Ok(BoxSpace {
            domain: Cuboid::cube(dim, lo, hi)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }
}

impl MetricModel for BoxSpace {
    type Point = Point;
    type Map = BoxMap;
    type Set = Option<Cuboid>;

    fn name(&self) -> &'static str {
        "box"
    }

    fn dist(&self, p: &Point, q: &Point) -> f64 {
        p.dist(q)
    }

    /// In the max norm the diameter of a finite set is the longest side of
    /// its bounding box.
    fn diameter(&self, points: &[Point]) -> f64 {
        box_space::bounding_box(points).diameter()
    }

    fn radius(&self, points: &[Point]) -> f64 {
        self.diameter(points) / 2.0
    }

    fn dedup(&self, points: &[Point]) -> Vec<Point> {
        box_space::dedup_points(points, tolerance::DEDUP)
    }

    fn balls_meet(&self, centers: &[Point], r: f64) -> Result<Option<Cuboid>> {
        let balls = centers
            .iter()
            .map(|c| box_space::ball(c, r))
            .collect::<Result<Vec<_>>>()?;
        box_space::intersect(&balls)
    }

    fn within_of_all(&self, set: &Option<Cuboid>, r: f64) -> Option<Cuboid> {
        let c = set.as_ref()?;
        let hull = box_space::shrink_hull(c, r)?;
        box_space::intersect(&[hull, c.clone()]).ok().flatten()
    }

    fn is_empty(&self, set: &Option<Cuboid>) -> bool {
        set.is_none()
    }

    fn select(&self, set: &Option<Cuboid>, _previous: &Point) -> Result<Point> {
        set.as_ref()
            .map(box_space::midpoint)
            .ok_or(Error::EmptySet("selection from an empty box"))
    }

    fn set_contains(&self, set: &Option<Cuboid>, p: &Point, tol: f64) -> bool {
        set.as_ref().is_some_and(|c| c.contains(p, tol))
    }

    fn set_hausdorff(&self, a: &Option<Cuboid>, b: &Option<Cuboid>) -> Result<f64> {
        match (a, b) {
            (Some(a), Some(b)) => box_space::box_hausdorff(a, b),
            _ => Err(Error::EmptySet("box in Hausdorff distance")),
        }
    }

    fn identity_map(&self) -> BoxMap {
        BoxMap::identity()
    }

    fn sample(&self, rng: &mut SeededRng) -> Point {
        Point::from_vec(
            self.domain
                .lo()
                .iter()
                .zip(self.domain.hi())
                .map(|(l, h)| if l < h { rng.random_range(*l..=*h) } else { *l })
                .collect(),
        )
    }

    /// Mixes three displacement shapes: a single coordinate, a sign vector
    /// and a uniform direction rescaled to unit max norm. Each attains the
    /// Lipschitz ratio of a different class of map.
    fn sample_at_distance(&self, p: &Point, scale: f64, rng: &mut SeededRng) -> Point {
        let d = p.dim();
        let mut u: Vec<f64> = match rng.random_range(0..3) {
            0 => {
                let mut u = vec![0.0; d];
                u[rng.random_range(0..d)] = if rng.random::<bool>() { 1.0 } else { -1.0 };
                u
            }
            1 => (0..d).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect(),
            _ => (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect(),
        };
        let norm = u.iter().map(|x: &f64| x.abs()).fold(0.0, f64::max);
        if norm == 0.0 {
            u[0] = 1.0;
        } else {
            u.iter_mut().for_each(|x| *x /= norm);
        }
        Point::from_vec(p.coords().iter().zip(&u).map(|(x, v)| x + scale * v).collect())
    }

    fn coords(&self, p: &Point) -> Vec<f64> {
        p.coords().to_vec()
    }

    fn format_point(&self, p: &Point) -> String {
        p.to_string()
    }
}

/// The geodesic circle.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CircleSpace;

impl MetricModel for CircleSpace {
    type Point = CirclePoint;
    type Map = CircleMap;
    type Set = ArcSet;

    fn name(&self) -> &'static str {
        "circle"
    }

    fn dist(&self, p: &CirclePoint, q: &CirclePoint) -> f64 {
        p.dist(*q)
    }

    fn radius(&self, points: &[CirclePoint]) -> f64 {
        circle_space::circle_chebyshev(points).map(|(r, _)| r).unwrap_or(0.0)
    }

    fn balls_meet(&self, centers: &[CirclePoint], r: f64) -> Result<ArcSet> {
        let balls = centers
            .iter()
            .map(|c| circle_space::circle_ball(*c, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(circle_space::arcset_intersect(&balls))
    }

    fn within_of_all(&self, set: &ArcSet, r: f64) -> ArcSet {
        circle_space::within_radius_of_all(set, r)
    }

    fn is_empty(&self, set: &ArcSet) -> bool {
        set.is_empty()
    }

    fn select(&self, set: &ArcSet, previous: &CirclePoint) -> Result<CirclePoint> {
        circle_space::select_in(set, *previous)
    }

    fn set_contains(&self, set: &ArcSet, p: &CirclePoint, tol: f64) -> bool {
        set.contains(*p, tol)
    }

    fn set_hausdorff(&self, a: &ArcSet, b: &ArcSet) -> Result<f64> {
        circle_space::arcset_hausdorff(a, b)
    }

    fn identity_map(&self) -> CircleMap {
        CircleMap::identity()
    }

    fn sample(&self, rng: &mut SeededRng) -> CirclePoint {
        CirclePoint::new(rng.random_range(0.0..2.0 * PI))
    }

    fn sample_at_distance(&self, p: &CirclePoint, scale: f64, rng: &mut SeededRng) -> CirclePoint {
        let s = scale.min(PI);
        p.rotated(if rng.random::<bool>() { s } else { -s })
    }

    fn coords(&self, p: &CirclePoint) -> Vec<f64> {
        vec![p.angle()]
    }

    fn format_point(&self, p: &CirclePoint) -> String {
        p.to_string()
    }
}
