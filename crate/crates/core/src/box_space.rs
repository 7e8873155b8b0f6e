//! The hyperconvex model `(ℝ^d, ℓ∞)`.
//!
//! Closed balls of the max norm are axis-aligned boxes and so is every
//! intersection of balls. All admissible sets of this model are therefore
//! represented by [`Cuboid`], and the center calculus (Chebyshev radius and
//! center, double centers, Hausdorff distances) is closed-form.
//!
//! An empty intersection is returned as `None` rather than as an error: the
//! iterations need to branch on it.

use std::fmt;

use crate::error::{Error, Result};
use crate::tolerance;

/// A point of `ℝ^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("point coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("point coordinates"));
        }
        Ok(Point(coords))
    }

    /// Builds a point without validation. Coordinates must be finite.
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    /// Max-norm distance. Panics on dimension mismatch; use [`linf_dist`]
    /// for a checked version.
    pub fn dist(&self, other: &Point) -> f64 {
        assert_eq!(self.dim(), other.dim(), "point dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl From<&[f64]> for Point {
    fn from(c: &[f64]) -> Self {
        Point::new(c.to_vec()).expect("finite, nonempty coordinates")
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(c: [f64; N]) -> Self {
        Point::new(c.to_vec()).expect("finite, nonempty coordinates")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Checked max-norm distance.
pub fn linf_dist(p: &Point, q: &Point) -> Result<f64> {
    p.check_dim(q)?;
    Ok(p.dist(q))
}

/// A nonempty axis-aligned box `∏ [lo_i, hi_i]`.
///
/// Degenerate boxes (some `lo_i == hi_i`) are valid; a single point is the
/// box with `lo == hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cuboid {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl Cuboid {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        lo.check_dim(&hi)?;
        if lo.0.iter().zip(&hi.0).any(|(l, h)| l > h) {
            return Err(Error::EmptySet("box with lo > hi"));
        }
        Ok(Cuboid { lo: lo.0, hi: hi.0 })
    }

    /// Builds the box from per-coordinate bounds, snapping coordinates whose
    /// bounds cross by at most `tol` to their midpoint. Returns `None` when
    /// some coordinate is genuinely empty.
    pub(crate) fn from_bounds(lo: Vec<f64>, hi: Vec<f64>, tol: f64) -> Option<Self> {
        let mut lo = lo;
        let mut hi = hi;
        for i in 0..lo.len() {
            if lo[i] > hi[i] {
                if lo[i] - hi[i] > tol {
                    return None;
                }
                let m = 0.5 * (lo[i] + hi[i]);
                lo[i] = m;
                hi[i] = m;
            }
        }
        Some(Cuboid { lo, hi })
    }

    pub fn singleton(p: &Point) -> Self {
        Cuboid {
            lo: p.0.clone(),
            hi: p.0.clone(),
        }
    }

    /// The box `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Cuboid::new(Point::new(vec![lo; dim])?, Point::new(vec![hi; dim])?)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l)
    }

    /// Largest side length, which is also the ℓ∞ diameter of the box.
    pub fn diameter(&self) -> f64 {
        self.widths().fold(0.0, f64::max)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        p.dim() == self.dim()
            && p.0
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| *x >= l - tol && *x <= h + tol)
    }

    /// Max-norm distance from `p` to the nearest point of the box.
    pub fn dist_to(&self, p: &Point) -> f64 {
        p.0.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(x, (l, h))| (l - x).max(x - h).max(0.0))
            .fold(0.0, f64::max)
    }

    /// Max-norm distance from `p` to the farthest point of the box.
    pub fn farthest_from(&self, p: &Point) -> f64 {
        p.0.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(x, (l, h))| (x - l).abs().max((h - x).abs()))
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &Cuboid) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Cuboid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, h)) in self.lo.iter().zip(&self.hi).enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            if l == h {
                write!(f, "{{{l}}}")?;
            } else {
                write!(f, "[{l}, {h}]")?;
            }
        }
        Ok(())
    }
}

/// A finite nonempty set of points of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet(Vec<Point>);

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("point set"))?;
        for p in &points[1..] {
            first.check_dim(p)?;
        }
        Ok(PointSet(points))
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Smallest box containing the set.
    pub fn bounding_box(&self) -> Cuboid {
        bounding_box(&self.0)
    }

    /// ℓ∞ diameter, the largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        self.bounding_box().diameter()
    }

    /// Removes points within `tol` of an earlier point.
    pub fn dedup(&self, tol: f64) -> PointSet {
        PointSet(dedup_points(&self.0, tol))
    }
}

pub(crate) fn bounding_box(points: &[Point]) -> Cuboid {
    let dim = points[0].dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for (i, x) in p.0.iter().enumerate() {
            lo[i] = lo[i].min(*x);
            hi[i] = hi[i].max(*x);
        }
    }
    Cuboid { lo, hi }
}

pub(crate) fn dedup_points(points: &[Point], tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.dist(p) <= tol) {
            out.push(p.clone());
        }
    }
    out
}

/// Closed ℓ∞ ball `B(c, r)`.
pub fn ball(c: &Point, r: f64) -> Result<Cuboid> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    if !r.is_finite() {
        return Err(Error::NonFinite("ball radius"));
    }
    Ok(Cuboid {
        lo: c.0.iter().map(|x| x - r).collect(),
        hi: c.0.iter().map(|x| x + r).collect(),
    })
}

/// Intersection of a nonempty list of boxes, `None` when empty.
pub fn intersect(boxes: &[Cuboid]) -> Result<Option<Cuboid>> {
    intersect_with_tol(boxes, tolerance::GEOMETRY)
}

/// [`intersect`] with an explicit emptiness tolerance: coordinates whose
/// bounds cross by at most `tol` collapse to a single value.
pub fn intersect_with_tol(boxes: &[Cuboid], tol: f64) -> Result<Option<Cuboid>> {
    let first = boxes.first().ok_or(Error::EmptyInput("box list"))?;
    let mut lo = first.lo.clone();
    let mut hi = first.hi.clone();
    for b in &boxes[1..] {
        first.check_dim(b)?;
        for i in 0..lo.len() {
            lo[i] = lo[i].max(b.lo[i]);
            hi[i] = hi[i].min(b.hi[i]);
        }
    }
    Ok(Cuboid::from_bounds(lo, hi, tol))
}

/// Hausdorff distance between two boxes.
///
/// For products of intervals under the max norm the directed distances
/// split by coordinate, and for intervals the Hausdorff distance is the
/// larger endpoint displacement.
pub fn box_hausdorff(a: &Cuboid, b: &Cuboid) -> Result<f64> {
    a.check_dim(b)?;
    Ok(a.lo
        .iter()
        .zip(&b.lo)
        .zip(a.hi.iter().zip(&b.hi))
        .map(|((al, bl), (ah, bh))| (al - bl).abs().max((ah - bh).abs()))
        .fold(0.0, f64::max))
}

/// Directed distance `sup_{x∈from} inf_{y∈to} d(x, y)` between finite sets.
fn directed(from: &[Point], to: &[Point]) -> f64 {
    from.iter()
        .map(|x| to.iter().map(|y| x.dist(y)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between finite sets.
pub fn set_hausdorff(k: &PointSet, l: &PointSet) -> Result<f64> {
    k.0[0].check_dim(&l.0[0])?;
    Ok(directed(&k.0, &l.0).max(directed(&l.0, &k.0)))
}

/// Chebyshev radius and center of a finite set.
///
/// With `[lo, hi]` the bounding box, the radius is half the largest side
/// and the center is `∏ [hi_i − r, lo_i + r]`, the set of points whose
/// farthest point of `K` is exactly `r` away.
pub fn chebyshev(k: &PointSet) -> (f64, Cuboid) {
    let bbox = k.bounding_box();
    let r = bbox.diameter() / 2.0;
    let center = shrink_hull(&bbox, r).expect("bounding box of width 2r fits a radius-r hull");
    (r, center)
}

/// `⋂_{y∈C} B(y, r)`: the points within `r` of every point of `C`.
///
/// Empty when some side of `C` is longer than `2r`.
pub fn shrink_hull(c: &Cuboid, r: f64) -> Option<Cuboid> {
    if r.is_nan() || r < 0.0 {
        return None;
    }
    let lo = c.hi.iter().map(|h| h - r).collect();
    let hi = c.lo.iter().map(|l| l + r).collect();
    Cuboid::from_bounds(lo, hi, tolerance::GEOMETRY)
}

/// Componentwise midpoint. As a map from boxes (with the Hausdorff metric)
/// to points it is 1-Lipschitz.
pub fn midpoint(b: &Cuboid) -> Point {
    Point::from_vec(b.lo.iter().zip(&b.hi).map(|(l, h)| 0.5 * (l + h)).collect())
}
