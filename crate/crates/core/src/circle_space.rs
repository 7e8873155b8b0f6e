//! The unit circle with its geodesic (arc-length) metric.
//!
//! This space is 2-hyperconvex but not hyperconvex: intersections of balls
//! can be disconnected, and the Chebyshev center of a finite set can be a
//! pair of antipodal points. Admissible sets are unions of closed arcs,
//! held in canonical form by [`ArcSet`].
//!
//! Every set operation here is computed by the same scheme: collect the
//! angles at which membership can change ("cuts"), then classify each cut
//! point and each open segment between consecutive cuts by a membership
//! test at the cut or at the segment's midpoint.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::tolerance;

/// Maps any finite angle into `[0, 2π)`.
pub fn normalize(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// A point `e^{iθ}` of the circle, stored by its angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CirclePoint(f64);

impl CirclePoint {
    /// Panics on a non-finite angle.
    pub fn new(angle: f64) -> Self {
        assert!(angle.is_finite(), "circle angle must be finite");
        CirclePoint(normalize(angle))
    }

    pub fn try_new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFinite("circle angle"));
        }
        Ok(CirclePoint(normalize(angle)))
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn rotated(self, by: f64) -> Self {
        CirclePoint::new(self.0 + by)
    }

    pub fn antipode(self) -> Self {
        self.rotated(PI)
    }

    pub fn dist(self, other: CirclePoint) -> f64 {
        circle_dist(self, other)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Geodesic distance, in `[0, π]`.
pub fn circle_dist(a: CirclePoint, b: CirclePoint) -> f64 {
    angle_dist(a.0, b.0)
}

fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(TAU);
    if d > PI {
        TAU - d
    } else {
        d
    }
}

/// A closed arc traversed counterclockwise from `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: f64,
    length: f64,
}

impl Arc {
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !start.is_finite() || !length.is_finite() {
            return Err(Error::NonFinite("arc"));
        }
        if !(0.0..=TAU).contains(&length) {
            return Err(Error::OutOfRange {
                name: "arc length",
                value: length,
                range: "[0, 2π]",
            });
        }
        Ok(Arc {
            start: normalize(start),
            length,
        })
    }

    pub fn full() -> Self {
        Arc {
            start: 0.0,
            length: TAU,
        }
    }

    pub fn point(p: CirclePoint) -> Self {
        Arc {
            start: p.0,
            length: 0.0,
        }
    }

    pub fn start(&self) -> CirclePoint {
        CirclePoint(self.start)
    }

    pub fn end(&self) -> CirclePoint {
        CirclePoint::new(self.start + self.length)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_full(&self) -> bool {
        self.length >= TAU
    }

    pub fn contains(&self, p: CirclePoint, tol: f64) -> bool {
        contains_angle(self.start, self.length, p.0, tol)
    }

    /// Distance from `p` to the nearest point of the arc.
    pub fn dist_to(&self, p: CirclePoint) -> f64 {
        if self.contains(p, 0.0) {
            0.0
        } else {
            angle_dist(p.0, self.start).min(angle_dist(p.0, self.start + self.length))
        }
    }
}

fn contains_angle(start: f64, length: f64, theta: f64, tol: f64) -> bool {
    let offset = (theta - start).rem_euclid(TAU);
    offset <= length + tol || offset >= TAU - tol
}

/// A finite union of pairwise-disjoint closed arcs, sorted by start angle.
///
/// The empty set has no arcs; the full circle is the single arc of length
/// `2π` starting at angle 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        ArcSet {
            arcs: vec![Arc::full()],
        }
    }

    /// Canonical form of an arbitrary list of arcs (their union).
    pub fn from_arcs(arcs: &[Arc]) -> Self {
        if arcs.iter().any(Arc::is_full) {
            return ArcSet::full();
        }
        let cuts = arcs.iter().flat_map(|a| [a.start, a.start + a.length]).collect();
        assemble(cuts, |t| {
            arcs.iter()
                .any(|a| contains_angle(a.start, a.length, t, tolerance::GEOMETRY))
        })
    }

    /// The finite set of the given points as degenerate arcs.
    pub fn from_points(points: &[CirclePoint]) -> Self {
        let arcs: Vec<Arc> = points.iter().copied().map(Arc::point).collect();
        ArcSet::from_arcs(&arcs)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    /// Total arc length.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|a| a.length).sum()
    }

    pub fn contains(&self, p: CirclePoint, tol: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(p, tol))
    }

    /// Distance from `p` to the set; infinite for the empty set.
    pub fn dist_to(&self, p: CirclePoint) -> f64 {
        self.arcs.iter().map(|a| a.dist_to(p)).fold(f64::INFINITY, f64::min)
    }

    /// Distance from `p` to the farthest point of the set.
    pub fn farthest_from(&self, p: CirclePoint) -> f64 {
        PI - self.dist_to(p.antipode())
    }

    /// Start and end angles of every arc.
    pub fn endpoints(&self) -> Vec<CirclePoint> {
        self.arcs.iter().flat_map(|a| [a.start(), a.end()]).collect()
    }

    /// Midpoints of the gaps between consecutive arcs: the local maximizers
    /// of the distance to the set.
    pub fn gap_midpoints(&self) -> Vec<CirclePoint> {
        if self.is_empty() || self.is_full() {
            return Vec::new();
        }
        let n = self.arcs.len();
        (0..n)
            .map(|i| {
                let end = self.arcs[i].start + self.arcs[i].length;
                let next = if i + 1 < n {
                    self.arcs[i + 1].start
                } else {
                    self.arcs[0].start + TAU
                };
                CirclePoint::new(0.5 * (end + next))
            })
            .collect()
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.is_full() {
            return write!(f, "S¹");
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            if a.length == 0.0 {
                write!(f, "{{{}}}", a.start)?;
            } else {
                write!(f, "[{}, {}]", a.start, a.start + a.length)?;
            }
        }
        Ok(())
    }
}

/// Builds the closed set described by `inside` whose boundary lies in
/// `cuts`.
fn assemble(cuts: Vec<f64>, inside: impl Fn(f64) -> bool) -> ArcSet {
    let tol = tolerance::GEOMETRY;
    let mut sorted: Vec<f64> = cuts.into_iter().map(normalize).collect();
    sorted.sort_by(f64::total_cmp);
    let mut cuts: Vec<f64> = Vec::with_capacity(sorted.len());
    for c in sorted {
        if cuts.last().is_none_or(|&u| c - u > tol) {
            cuts.push(c);
        }
    }
    if cuts.len() > 1 && cuts[0] + TAU - cuts[cuts.len() - 1] <= tol {
        cuts.pop();
    }
    if cuts.is_empty() {
        return if inside(0.0) { ArcSet::full() } else { ArcSet::empty() };
    }

    let m = cuts.len();
    let seg_end = |i: usize| if i + 1 < m { cuts[i + 1] } else { cuts[0] + TAU };
    // Piece 2i is the cut point i, piece 2i+1 the open segment after it.
    let included: Vec<bool> = (0..2 * m)
        .map(|k| {
            let i = k / 2;
            if k % 2 == 0 {
                inside(cuts[i])
            } else {
                inside(normalize(0.5 * (cuts[i] + seg_end(i))))
            }
        })
        .collect();
    let Some(gap) = included.iter().position(|inc| !inc) else {
        return ArcSet::full();
    };

    let mut arcs = Vec::new();
    let mut run: Option<(f64, f64)> = None;
    for step in 1..=2 * m {
        let k = (gap + step) % (2 * m);
        let i = k / 2;
        if included[k] {
            let piece_len = if k.is_multiple_of(2) { 0.0 } else { seg_end(i) - cuts[i] };
            run = Some(match run {
                Some((start, len)) => (start, len + piece_len),
                None => (cuts[i], piece_len),
            });
        } else if let Some((start, len)) = run.take() {
            arcs.push((start, len));
        }
    }
    if let Some((start, len)) = run {
        arcs.push((start, len));
    }
    if arcs.iter().any(|&(_, len)| len >= TAU - tol) {
        return ArcSet::full();
    }
    let mut arcs: Vec<Arc> = arcs
        .into_iter()
        .map(|(start, length)| Arc {
            start: normalize(start),
            length,
        })
        .collect();
    arcs.sort_by(|a, b| a.start.total_cmp(&b.start));
    ArcSet { arcs }
}

/// Closed ball: the arc of length `2r` centered at `c`, or the whole circle
/// once `r ≥ π`.
pub fn circle_ball(c: CirclePoint, r: f64) -> Result<ArcSet> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    if r >= PI {
        return Ok(ArcSet::full());
    }
    Ok(ArcSet {
        arcs: vec![Arc {
            start: normalize(c.0 - r),
            length: 2.0 * r,
        }],
    })
}

/// Exact intersection. The intersection of an empty list is the full
/// circle.
pub fn arcset_intersect(sets: &[ArcSet]) -> ArcSet {
    if sets.iter().any(ArcSet::is_empty) {
        return ArcSet::empty();
    }
    let cuts = sets
        .iter()
        .filter(|s| !s.is_full())
        .flat_map(|s| s.arcs.iter().flat_map(|a| [a.start, a.start + a.length]))
        .collect();
    assemble(cuts, |t| {
        sets.iter().all(|s| s.contains(CirclePoint(t), tolerance::GEOMETRY))
    })
}

/// `sup_{x∈K} d(y, x)`.
pub fn relative_radius(y: CirclePoint, k: &[CirclePoint]) -> f64 {
    k.iter().map(|x| circle_dist(y, *x)).fold(0.0, f64::max)
}

/// Chebyshev radius and the full (possibly disconnected) center of a finite
/// set.
///
/// `y ↦ sup_{x∈K} d(y, x)` is piecewise linear with slopes ±1, so its
/// minimizers are isolated points among the breakpoints: the points of `K`,
/// their antipodes, and the two midpoints of every pair.
pub fn circle_chebyshev(k: &[CirclePoint]) -> Result<(f64, ArcSet)> {
    if k.is_empty() {
        return Err(Error::EmptyInput("circle point set"));
    }
    let mut candidates = Vec::with_capacity(2 * k.len() * k.len());
    for (i, a) in k.iter().enumerate() {
        candidates.push(*a);
        candidates.push(a.antipode());
        for b in &k[i + 1..] {
            let mid = CirclePoint::new(a.0 + 0.5 * (b.0 - a.0));
            candidates.push(mid);
            candidates.push(mid.antipode());
        }
    }
    let values: Vec<f64> = candidates.iter().map(|c| relative_radius(*c, k)).collect();
    let r = values.iter().copied().fold(f64::INFINITY, f64::min);
    let centers: Vec<CirclePoint> = candidates
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v <= r + tolerance::GEOMETRY)
        .map(|(c, _)| *c)
        .collect();
    Ok((r, ArcSet::from_points(&centers)))
}

/// Hausdorff distance between nonempty arc sets.
pub fn arcset_hausdorff(a: &ArcSet, b: &ArcSet) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("arc set in Hausdorff distance"));
    }
    Ok(directed_arc(a, b).max(directed_arc(b, a)))
}

/// `sup_{x∈from} dist(x, to)`, attained at an endpoint of `from` or at a
/// gap midpoint of `to` lying in `from`.
fn directed_arc(from: &ArcSet, to: &ArcSet) -> f64 {
    let endpoint_max = from.endpoints().into_iter().map(|p| to.dist_to(p)).fold(0.0, f64::max);
    to.gap_midpoints()
        .into_iter()
        .filter(|m| from.contains(*m, 0.0))
        .map(|m| to.dist_to(m))
        .fold(endpoint_max, f64::max)
}

/// `A ∩ ⋂_{y∈A} B(y, r)`: the points of `A` within `r` of all of `A`.
///
/// Uses `sup_{y∈A} d(z, y) = π − dist(−z, A)`; the boundary of the result
/// lies among the endpoints of `A` shifted inward by `r`.
pub fn within_radius_of_all(a: &ArcSet, r: f64) -> ArcSet {
    if a.is_empty() || r.is_nan() || r < 0.0 {
        return ArcSet::empty();
    }
    if r >= PI {
        return a.clone();
    }
    let mut cuts = Vec::with_capacity(4 * a.arcs.len());
    for arc in &a.arcs {
        let end = arc.start + arc.length;
        cuts.extend([arc.start, end, arc.start + r, end - r]);
    }
    assemble(cuts, |t| {
        let z = CirclePoint(t);
        a.contains(z, tolerance::GEOMETRY) && a.farthest_from(z) <= r + tolerance::GEOMETRY
    })
}

/// The point of `s` nearest to `preference`, ties broken by the smaller
/// angle.
pub fn select_in(s: &ArcSet, preference: CirclePoint) -> Result<CirclePoint> {
    if s.is_empty() {
        return Err(Error::EmptySet("selection from an empty arc set"));
    }
    if s.contains(preference, 0.0) {
        return Ok(preference);
    }
    let candidates = s.endpoints();
    let best = candidates
        .iter()
        .map(|c| circle_dist(*c, preference))
        .fold(f64::INFINITY, f64::min);
    Ok(candidates
        .into_iter()
        .filter(|c| circle_dist(*c, preference) <= best + tolerance::GEOMETRY)
        .fold(CirclePoint(TAU), |acc, c| if c.0 < acc.0 { c } else { acc }))
}

/// A sampled instance of the λ-hyperconvexity condition: balls whose
/// centers lie in the admissible set `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallFamily {
    pub domain: ArcSet,
    pub balls: Vec<(CirclePoint, f64)>,
}

impl BallFamily {
    /// Reason the family does not satisfy the hypotheses, if any.
    pub fn malformed(&self) -> Option<String> {
        if self.domain.is_empty() {
            return Some("empty domain".into());
        }
        if self.balls.is_empty() {
            return Some("no balls".into());
        }
        for (i, (c, r)) in self.balls.iter().enumerate() {
            if !(r.is_finite() && *r >= 0.0) {
                return Some(format!("ball {i} has invalid radius {r}"));
            }
            if !self.domain.contains(*c, tolerance::GEOMETRY) {
                return Some(format!("center {i} = {c} lies outside the domain"));
            }
        }
        for (i, (ci, ri)) in self.balls.iter().enumerate() {
            for (j, (cj, rj)) in self.balls.iter().enumerate().skip(i + 1) {
                let d = circle_dist(*ci, *cj);
                if d > ri + rj + tolerance::GEOMETRY {
                    return Some(format!("balls {i} and {j} are too far apart: d = {d} > {}", ri + rj));
                }
            }
        }
        None
    }

    /// `D ∩ ⋂ B(x_α, λ r_α)`.
    pub fn inflated_meet(&self, lambda: f64) -> Result<ArcSet> {
        let mut sets = Vec::with_capacity(self.balls.len() + 1);
        sets.push(self.domain.clone());
        for (c, r) in &self.balls {
            sets.push(circle_ball(*c, lambda * r)?);
        }
        Ok(arcset_intersect(&sets))
    }
}

/// Outcome of [`check_lambda_hyperconvex`].
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaReport {
    pub lambda: f64,
    pub checked: usize,
    /// Indices of well-formed families whose inflated intersection is empty.
    pub violations: Vec<usize>,
    /// Families rejected because they violate the hypotheses.
    pub malformed: Vec<(usize, String)>,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.malformed.is_empty()
    }
}

/// Checks `D ∩ ⋂ B(x_α, λ r_α) ≠ ∅` on every family.
pub fn check_lambda_hyperconvex(families: &[BallFamily], lambda: f64) -> LambdaReport {
    let mut report = LambdaReport {
        lambda,
        checked: 0,
        violations: Vec::new(),
        malformed: Vec::new(),
    };
    for (i, family) in families.iter().enumerate() {
        if let Some(reason) = family.malformed() {
            report.malformed.push((i, reason));
            continue;
        }
        report.checked += 1;
        match family.inflated_meet(lambda) {
            Ok(meet) if !meet.is_empty() => {}
            Ok(_) => report.violations.push(i),
            Err(e) => report.malformed.push((i, e.to_string())),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn cp(a: f64) -> CirclePoint {
        CirclePoint::new(a)
    }

    fn close(a: f64, b: f64) -> bool {
        angle_dist(a, b) <= 1e-12
    }

    #[test]
    fn circle_dist_examples() {
        assert_eq!(circle_dist(cp(0.0), cp(PI)), PI);
        assert_eq!(circle_dist(cp(1.3), cp(1.3)), 0.0);
        assert!((circle_dist(cp(0.1), cp(TAU - 0.1)) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn normalization() {
        assert_eq!(cp(-FRAC_PI_2).angle(), 3.0 * FRAC_PI_2);
        assert_eq!(cp(TAU).angle(), 0.0);
        assert!(cp(-1e-20).angle() < TAU);
        assert!(CirclePoint::try_new(f64::NAN).is_err());
    }

    #[test]
    fn ball_examples() {
        let b = circle_ball(cp(0.0), FRAC_PI_2).unwrap();
        assert_eq!(b.arcs().len(), 1);
        assert!(close(b.arcs()[0].start().angle(), 3.0 * FRAC_PI_2));
        assert!((b.arcs()[0].length() - PI).abs() < 1e-15);

        let c = cp(2.0);
        let point = circle_ball(c, 0.0).unwrap();
        assert_eq!(point.arcs(), &[Arc::point(c)]);

        assert!(circle_ball(c, PI).unwrap().is_full());
        assert!(circle_ball(c, -0.1).is_err());
    }

    #[test]
    fn intersect_antipodal_half_balls_is_two_points() {
        let a = circle_ball(cp(0.0), FRAC_PI_2).unwrap();
        let b = circle_ball(cp(PI), FRAC_PI_2).unwrap();
        let meet = arcset_intersect(&[a, b]);
        assert_eq!(meet.arcs().len(), 2);
        assert!(meet.arcs().iter().all(|arc| arc.length() < 1e-12));
        assert!(close(meet.arcs()[0].start().angle(), FRAC_PI_2));
        assert!(close(meet.arcs()[1].start().angle(), 3.0 * FRAC_PI_2));
    }

    #[test]
    fn intersect_identities() {
        let s = ArcSet::from_arcs(&[Arc::new(1.0, 0.5).unwrap(), Arc::new(4.0, 1.0).unwrap()]);
        assert_eq!(arcset_intersect(&[s.clone(), ArcSet::full()]), s);
        let a = ArcSet::from_arcs(&[Arc::new(0.0, 0.3).unwrap()]);
        let b = ArcSet::from_arcs(&[Arc::new(1.0, 0.3).unwrap()]);
        assert!(arcset_intersect(&[a, b]).is_empty());
        assert!(arcset_intersect(&[]).is_full());
    }

    #[test]
    fn from_arcs_merges_wrapping_overlaps() {
        let s = ArcSet::from_arcs(&[Arc::new(TAU - 0.5, 1.0).unwrap(), Arc::new(0.25, 0.5).unwrap()]);
        assert_eq!(s.arcs().len(), 1);
        assert!(close(s.arcs()[0].start().angle(), TAU - 0.5));
        assert!((s.arcs()[0].length() - 1.25).abs() < 1e-12);
        let cover = ArcSet::from_arcs(&[Arc::new(0.0, PI).unwrap(), Arc::new(PI, PI).unwrap()]);
        assert!(cover.is_full());
    }

    #[test]
    fn chebyshev_examples() {
        let (r, c) = circle_chebyshev(&[cp(0.0), cp(PI)]).unwrap();
        assert!((r - FRAC_PI_2).abs() < 1e-15);
        let pts = c.endpoints();
        assert_eq!(c.arcs().len(), 2);
        assert!(close(pts[0].angle(), FRAC_PI_2));
        assert!(close(pts[2].angle(), 3.0 * FRAC_PI_2));

        let eps = 0.1;
        let (r, c) = circle_chebyshev(&[cp(0.0), cp(PI - eps)]).unwrap();
        assert!((r - (PI - eps) / 2.0).abs() < 1e-15);
        assert_eq!(c.arcs().len(), 1);
        assert!(close(c.arcs()[0].start().angle(), (PI - eps) / 2.0));

        let (r, c) = circle_chebyshev(&[cp(4.0)]).unwrap();
        assert_eq!(r, 0.0);
        assert_eq!(c, ArcSet::from_points(&[cp(4.0)]));

        assert!(circle_chebyshev(&[]).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let eps = 0.1;
        let ck = ArcSet::from_points(&[cp(FRAC_PI_2), cp(3.0 * FRAC_PI_2)]);
        let cl = ArcSet::from_points(&[cp((PI - eps) / 2.0)]);
        let d = arcset_hausdorff(&ck, &cl).unwrap();
        assert!((d - (PI - eps / 2.0)).abs() < 1e-12);
        assert_eq!(arcset_hausdorff(&ck, &ck).unwrap(), 0.0);
        let d = arcset_hausdorff(&ArcSet::from_points(&[cp(0.0)]), &ArcSet::from_points(&[cp(PI)]));
        assert_eq!(d.unwrap(), PI);
        assert!(arcset_hausdorff(&ArcSet::empty(), &ck).is_err());
    }

    #[test]
    fn hausdorff_to_full_circle_uses_gap_midpoints() {
        let arc = ArcSet::from_arcs(&[Arc::new(0.0, 1.0).unwrap()]);
        let d = arcset_hausdorff(&ArcSet::full(), &arc).unwrap();
        assert!((d - (TAU - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn select_examples() {
        assert_eq!(select_in(&ArcSet::full(), cp(2.5)).unwrap(), cp(2.5));
        let two = ArcSet::from_points(&[cp(FRAC_PI_2), cp(3.0 * FRAC_PI_2)]);
        assert!(close(select_in(&two, cp(0.1)).unwrap().angle(), FRAC_PI_2));
        let arc = ArcSet::from_arcs(&[Arc::new(1.0, 1.0).unwrap()]);
        assert_eq!(select_in(&arc, cp(0.0)).unwrap(), cp(1.0));
        assert!(select_in(&ArcSet::empty(), cp(0.0)).is_err());
    }

    #[test]
    fn select_tie_prefers_smaller_angle() {
        let two = ArcSet::from_points(&[cp(1.0), cp(3.0)]);
        assert_eq!(select_in(&two, cp(2.0)).unwrap(), cp(1.0));
    }

    #[test]
    fn within_radius_of_all_on_an_arc() {
        let arc = ArcSet::from_arcs(&[Arc::new(1.0, 1.0).unwrap()]);
        let hull = within_radius_of_all(&arc, 0.75);
        assert_eq!(hull.arcs().len(), 1);
        assert!(close(hull.arcs()[0].start().angle(), 1.25));
        assert!((hull.arcs()[0].length() - 0.5).abs() < 1e-12);
        assert!(within_radius_of_all(&arc, 0.25).is_empty());
        assert_eq!(within_radius_of_all(&arc, PI), arc);
    }

    #[test]
    fn within_radius_of_all_on_antipodal_points() {
        let two = ArcSet::from_points(&[cp(FRAC_PI_2), cp(3.0 * FRAC_PI_2)]);
        assert!(within_radius_of_all(&two, 1.0).is_empty());
        assert_eq!(within_radius_of_all(&two, PI), two);
    }

    #[test]
    fn lambda_check_reports_malformed_families() {
        let bad = BallFamily {
            domain: ArcSet::full(),
            balls: vec![(cp(0.0), 0.1), (cp(PI), 0.1)],
        };
        let report = check_lambda_hyperconvex(&[bad], 2.0);
        assert_eq!(report.checked, 0);
        assert_eq!(report.malformed.len(), 1);
        assert!(!report.passed());
    }

    #[test]
    fn lambda_check_antipodal_pair() {
        let fam = BallFamily {
            domain: ArcSet::full(),
            balls: vec![(cp(0.0), FRAC_PI_2), (cp(PI), FRAC_PI_2)],
        };
        assert!(fam.inflated_meet(2.0).unwrap().is_full());
        assert!(check_lambda_hyperconvex(&[fam], 2.0).passed());
    }

    #[test]
    fn three_tangent_balls_break_plain_hyperconvexity() {
        let third = TAU / 3.0;
        let fam = BallFamily {
            domain: ArcSet::full(),
            balls: (0..3).map(|k| (cp(k as f64 * third), PI / 3.0)).collect(),
        };
        assert_eq!(fam.malformed(), None);
        assert_eq!(
            check_lambda_hyperconvex(std::slice::from_ref(&fam), 1.0).violations,
            vec![0]
        );
        assert!(check_lambda_hyperconvex(&[fam], 2.0).passed());
    }
}
