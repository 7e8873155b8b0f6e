//! Evaluable self-maps of the two model spaces.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::box_space::Point;
use crate::circle_space::CirclePoint;
use crate::error::{Error, Result};

/// How a Lipschitz constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LipschitzKind {
    /// Exact slope analysis (operator norm, piecewise slopes, isometry).
    Exact,
    /// A certified upper bound, e.g. the product over a composition.
    UpperBound,
    /// A user-declared bound that survived sampling.
    Declared,
    /// Sampled lower estimate only.
    Estimate,
}

impl fmt::Display for LipschitzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LipschitzKind::Exact => "exact",
            LipschitzKind::UpperBound => "upper bound",
            LipschitzKind::Declared => "declared",
            LipschitzKind::Estimate => "estimate only",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzBound {
    pub value: f64,
    pub kind: LipschitzKind,
}

impl LipschitzBound {
    pub fn exact(value: f64) -> Self {
        LipschitzBound {
            value,
            kind: LipschitzKind::Exact,
        }
    }
}

/// A self-map of a model space.
pub trait Map<P>: Clone + fmt::Debug + Send + Sync {
    fn apply(&self, p: &P) -> P;

    /// Analytic Lipschitz constant, when the map's form allows one.
    fn lipschitz_bound(&self) -> Option<LipschitzBound>;

    fn declared_lipschitz(&self) -> Option<f64>;

    fn inverse(&self) -> Option<Self>;

    /// Dimension the map acts on, if it is fixed.
    fn dim(&self) -> Option<usize> {
        None
    }
}

/// A continuous piecewise-linear function of one variable, extended
/// linearly beyond its outer knots.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    /// Knots must have strictly increasing abscissae; at least two.
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidMapping(
                "piecewise-linear map needs at least two knots".into(),
            ));
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::NonFinite("piecewise-linear knots"));
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidMapping("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewiseLinear { knots })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    fn segment(&self, t: f64) -> usize {
        let last = self.knots.len() - 2;
        // First segment whose right knot is at or beyond t.
        self.knots[1..=last].iter().position(|(x, _)| t <= *x).unwrap_or(last)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let (x0, y0) = self.knots[i];
        let (x1, y1) = self.knots[i + 1];
        y0 + (t - x0) * (y1 - y0) / (x1 - x0)
    }

    pub fn slopes(&self) -> impl Iterator<Item = f64> + '_ {
        self.knots.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
    }

    /// Largest absolute slope, which is the exact Lipschitz constant.
    pub fn lipschitz(&self) -> f64 {
        self.slopes().map(f64::abs).fold(0.0, f64::max)
    }

    /// Solutions of `f(t) = t` in `[lo, hi]`. Segments lying on the
    /// diagonal contribute their endpoints.
    pub fn fixed_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        let n = self.knots.len();
        let mut out: Vec<f64> = Vec::new();
        for i in 0..n - 1 {
            let (x0, y0) = self.knots[i];
            let (x1, y1) = self.knots[i + 1];
            let slope = (y1 - y0) / (x1 - x0);
            let seg_lo = if i == 0 { f64::NEG_INFINITY } else { x0 };
            let seg_hi = if i == n - 2 { f64::INFINITY } else { x1 };
            let a = seg_lo.max(lo);
            let b = seg_hi.min(hi);
            if a > b {
                continue;
            }
            // g(t) = f(t) - t = (y0 - x0) + (slope - 1)(t - x0)
            let g0 = y0 - x0;
            let candidates: Vec<f64> = if slope == 1.0 {
                if g0 == 0.0 {
                    vec![a, b]
                } else {
                    vec![]
                }
            } else {
                vec![x0 - g0 / (slope - 1.0)]
            };
            for t in candidates {
                if t >= a - 1e-12 && t <= b + 1e-12 && !out.iter().any(|u| (u - t).abs() <= 1e-12) {
                    out.push(t.clamp(a, b));
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// Inverse of a strictly monotone function.
    pub fn inverse(&self) -> Option<Self> {
        let increasing = self.slopes().all(|s| s > 0.0);
        let decreasing = self.slopes().all(|s| s < 0.0);
        if !increasing && !decreasing {
            return None;
        }
        let mut knots: Vec<(f64, f64)> = self.knots.iter().map(|(x, y)| (*y, *x)).collect();
        if decreasing {
            knots.reverse();
        }
        PiecewiseLinear::new(knots).ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoxMapKind {
    Identity,
    /// `x ↦ Mx + t`.
    Affine {
        matrix: DMatrix<f64>,
        translation: DVector<f64>,
    },
    /// `x ↦ (f_1(x_1), …, f_d(x_d))`.
    Coordinatewise(Vec<PiecewiseLinear>),
    /// Applied first to last.
    Composite(Vec<BoxMap>),
}

/// A self-map of `(ℝ^d, ℓ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxMap {
    pub kind: BoxMapKind,
    pub declared_lipschitz: Option<f64>,
}

impl BoxMap {
    fn from_kind(kind: BoxMapKind) -> Self {
        BoxMap {
            kind,
            declared_lipschitz: None,
        }
    }

    pub fn identity() -> Self {
        Self::from_kind(BoxMapKind::Identity)
    }

    pub fn affine(rows: Vec<Vec<f64>>, translation: Vec<f64>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidMapping(
                "affine matrix must be square and nonempty".into(),
            ));
        }
        if translation.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: translation.len(),
            });
        }
        if rows.iter().flatten().chain(&translation).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("affine map"));
        }
        let matrix = DMatrix::from_fn(d, d, |i, j| rows[i][j]);
        Ok(Self::from_kind(BoxMapKind::Affine {
            matrix,
            translation: DVector::from_vec(translation),
        }))
    }

    /// Rotation of the plane by `quarter_turns · π/2` about `center`. The
    /// matrix entries are exact integers.
    pub fn rotation2d(center: [f64; 2], quarter_turns: i32) -> Self {
        let (c, s) = match quarter_turns.rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
        let [px, py] = center;
        let rows = vec![vec![c, -s], vec![s, c]];
        // t = p - R p
        let t = vec![px - (c * px - s * py), py - (s * px + c * py)];
        Self::affine(rows, t).expect("well-formed rotation")
    }

    /// Swaps coordinates `i` and `j` of `ℝ^dim`.
    pub fn swap(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim {
            return Err(Error::InvalidMapping(format!(
                "swap({i}, {j}) out of range for dimension {dim}"
            )));
        }
        let rows = (0..dim)
            .map(|r| {
                let src = if r == i {
                    j
                } else if r == j {
                    i
                } else {
                    r
                };
                (0..dim).map(|c| if c == src { 1.0 } else { 0.0 }).collect()
            })
            .collect();
        Self::affine(rows, vec![0.0; dim])
    }

    pub fn coordinatewise(fs: Vec<PiecewiseLinear>) -> Result<Self> {
        if fs.is_empty() {
            return Err(Error::InvalidMapping(
                "coordinatewise map needs at least one coordinate".into(),
            ));
        }
        Ok(Self::from_kind(BoxMapKind::Coordinatewise(fs)))
    }

    pub fn compose(parts: Vec<BoxMap>) -> Self {
        Self::from_kind(BoxMapKind::Composite(parts))
    }

    pub fn with_declared_lipschitz(mut self, l: f64) -> Self {
        self.declared_lipschitz = Some(l);
        self
    }
}

impl Map<Point> for BoxMap {
    fn apply(&self, p: &Point) -> Point {
        match &self.kind {
            BoxMapKind::Identity => p.clone(),
            BoxMapKind::Affine { matrix, translation } => {
                let v = DVector::from_column_slice(p.coords());
                Point::from_vec((matrix * v + translation).as_slice().to_vec())
            }
            BoxMapKind::Coordinatewise(fs) => {
                Point::from_vec(p.coords().iter().zip(fs).map(|(x, f)| f.eval(*x)).collect())
            }
            BoxMapKind::Composite(parts) => parts.iter().fold(p.clone(), |acc, m| m.apply(&acc)),
        }
    }

    fn lipschitz_bound(&self) -> Option<LipschitzBound> {
        match &self.kind {
            BoxMapKind::Identity => Some(LipschitzBound::exact(1.0)),
            BoxMapKind::Affine { matrix, .. } => {
                // ℓ∞ operator norm: largest absolute row sum.
                let norm = matrix
                    .row_iter()
                    .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
                    .fold(0.0, f64::max);
                Some(LipschitzBound::exact(norm))
            }
            BoxMapKind::Coordinatewise(fs) => Some(LipschitzBound::exact(
                fs.iter().map(PiecewiseLinear::lipschitz).fold(0.0, f64::max),
            )),
            BoxMapKind::Composite(parts) => {
                let mut value = 1.0;
                let mut kind = LipschitzKind::Exact;
                for p in parts {
                    let b = p.lipschitz_bound()?;
                    value *= b.value;
                    kind = kind.max(b.kind);
                }
                if parts.len() > 1 {
                    kind = kind.max(LipschitzKind::UpperBound);
                }
                Some(LipschitzBound { value, kind })
            }
        }
    }

    fn declared_lipschitz(&self) -> Option<f64> {
        self.declared_lipschitz
    }

    fn inverse(&self) -> Option<Self> {
        let kind = match &self.kind {
            BoxMapKind::Identity => BoxMapKind::Identity,
            BoxMapKind::Affine { matrix, translation } => {
                let inv = matrix.clone().try_inverse()?;
                let t = -(&inv * translation);
                BoxMapKind::Affine {
                    matrix: inv,
                    translation: t,
                }
            }
            BoxMapKind::Coordinatewise(fs) => {
                BoxMapKind::Coordinatewise(fs.iter().map(PiecewiseLinear::inverse).collect::<Option<_>>()?)
            }
            BoxMapKind::Composite(parts) => {
                BoxMapKind::Composite(parts.iter().rev().map(Map::inverse).collect::<Option<_>>()?)
            }
        };
        Some(BoxMap::from_kind(kind))
    }

    fn dim(&self) -> Option<usize> {
        match &self.kind {
            BoxMapKind::Identity => None,
            BoxMapKind::Affine { matrix, .. } => Some(matrix.nrows()),
            BoxMapKind::Coordinatewise(fs) => Some(fs.len()),
            BoxMapKind::Composite(parts) => parts.iter().find_map(Map::dim),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircleMapKind {
    /// `θ ↦ θ + angle`.
    Rotation(f64),
    /// `θ ↦ 2·axis − θ`.
    Reflection(f64),
    /// Applied first to last.
    Composite(Vec<CircleMap>),
}

/// An isometry of the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMap {
    pub kind: CircleMapKind,
    pub declared_lipschitz: Option<f64>,
}

impl CircleMap {
    pub fn rotation(angle: f64) -> Self {
        CircleMap {
            kind: CircleMapKind::Rotation(angle),
            declared_lipschitz: None,
        }
    }

    pub fn reflection(axis: f64) -> Self {
        CircleMap {
            kind: CircleMapKind::Reflection(axis),
            declared_lipschitz: None,
        }
    }

    pub fn identity() -> Self {
        Self::rotation(0.0)
    }

    pub fn compose(parts: Vec<CircleMap>) -> Self {
        CircleMap {
            kind: CircleMapKind::Composite(parts),
            declared_lipschitz: None,
        }
    }
}

impl Map<CirclePoint> for CircleMap {
    fn apply(&self, p: &CirclePoint) -> CirclePoint {
        match &self.kind {
            CircleMapKind::Rotation(a) => p.rotated(*a),
            CircleMapKind::Reflection(axis) => CirclePoint::new((2.0 * axis - p.angle()).rem_euclid(TAU)),
            CircleMapKind::Composite(parts) => parts.iter().fold(*p, |acc, m| m.apply(&acc)),
        }
    }

    fn lipschitz_bound(&self) -> Option<LipschitzBound> {
        Some(LipschitzBound::exact(1.0))
    }

    fn declared_lipschitz(&self) -> Option<f64> {
        self.declared_lipschitz
    }

    fn inverse(&self) -> Option<Self> {
        let kind = match &self.kind {
            CircleMapKind::Rotation(a) => CircleMapKind::Rotation(-a),
            CircleMapKind::Reflection(axis) => CircleMapKind::Reflection(*axis),
            CircleMapKind::Composite(parts) => {
                CircleMapKind::Composite(parts.iter().rev().map(Map::inverse).collect::<Option<_>>()?)
            }
        };
        Some(CircleMap {
            kind,
            declared_lipschitz: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involution(c: f64) -> PiecewiseLinear {
        PiecewiseLinear::new(vec![(0.0, 1.0), (c, c), (1.0, 0.0)]).unwrap()
    }

    #[test]
    fn piecewise_linear_evaluation_and_slopes() {
        let f = involution(0.4);
        assert_eq!(f.eval(0.0), 1.0);
        assert!((f.eval(0.4) - 0.4).abs() < 1e-15);
        assert!((f.eval(0.5) - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.lipschitz() - 1.5).abs() < 1e-15);
        for t in [0.0, 0.1, 0.25, 0.4, 0.7, 1.0] {
            assert!((f.eval(f.eval(t)) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn extrapolates_with_end_slopes() {
        let f = PiecewiseLinear::new(vec![(0.0, 0.0), (1.0, 2.0)]).unwrap();
        assert_eq!(f.eval(-1.0), -2.0);
        assert_eq!(f.eval(3.0), 6.0);
    }

    #[test]
    fn rejects_unsorted_breakpoints() {
        assert!(PiecewiseLinear::new(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(PiecewiseLinear::new(vec![(0.0, 0.0)]).is_err());
    }

    #[test]
    fn f_a_fixed_points() {
        let a = 0.25;
        let f = PiecewiseLinear::new(vec![(-1.0, -1.0), (0.0, a), (1.0, 1.0)]).unwrap();
        assert_eq!(f.fixed_points(-1.0, 1.0), vec![-1.0, 1.0]);
        assert!((f.lipschitz() - 1.25).abs() < 1e-15);
        assert_eq!(f.eval(0.0), a);
    }

    #[test]
    fn affine_norm_and_inverse() {
        let r = BoxMap::rotation2d([1.0, 0.0], 1);
        assert_eq!(r.apply(&Point::from([1.0, 0.0])), Point::from([1.0, 0.0]));
        assert_eq!(r.apply(&Point::from([0.0, 0.0])), Point::from([1.0, -1.0]));
        assert_eq!(r.lipschitz_bound(), Some(LipschitzBound::exact(1.0)));
        let inv = r.inverse().unwrap();
        let p = Point::from([0.3, -2.0]);
        assert!(inv.apply(&r.apply(&p)).dist(&p) < 1e-15);
    }

    #[test]
    fn composite_bound_is_product() {
        let scale = BoxMap::affine(vec![vec![2.0]], vec![0.0]).unwrap();
        let m = BoxMap::compose(vec![scale.clone(), scale]);
        let b = m.lipschitz_bound().unwrap();
        assert_eq!(b.value, 4.0);
        assert_eq!(b.kind, LipschitzKind::UpperBound);
        assert_eq!(m.apply(&Point::from([1.0])), Point::from([4.0]));
    }

    #[test]
    fn swap_coordinates() {
        let s = BoxMap::swap(3, 0, 1).unwrap();
        assert_eq!(s.apply(&Point::from([1.0, 3.0, 5.0])), Point::from([3.0, 1.0, 5.0]));
        assert!(BoxMap::swap(2, 0, 2).is_err());
    }

    #[test]
    fn circle_maps() {
        let p = CirclePoint::new(1.0);
        let refl = CircleMap::reflection(0.5);
        assert!((refl.apply(&p).angle() - 0.0).abs() < 1e-15);
        assert!(refl.apply(&refl.apply(&p)).dist(p) < 1e-15);
        let rot = CircleMap::rotation(2.0);
        assert!(rot.inverse().unwrap().apply(&rot.apply(&p)).dist(p) < 1e-15);
    }
}
