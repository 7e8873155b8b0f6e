//! Random instances for the verification suites.

use std::f64::consts::{PI, TAU};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::box_space::{self, Cuboid, Point, PointSet};
use crate::circle_space::{self, Arc, ArcSet, BallFamily, CirclePoint};
use crate::group_action::{Action, BoxMap, FiniteGroup};
use crate::model::{BoxSpace, SeededRng};

pub fn point(rng: &mut SeededRng, dim: usize, scale: f64) -> Point {
    Point::new((0..dim).map(|_| rng.random_range(-scale..=scale)).collect()).expect("finite coordinates")
}

/// A set of 1 to `max_len` points in `[-scale, scale]^dim`.
pub fn point_set(rng: &mut SeededRng, dim: usize, max_len: usize, scale: f64) -> PointSet {
    let n = rng.random_range(1..=max_len);
    PointSet::new((0..n).map(|_| point(rng, dim, scale)).collect()).expect("nonempty")
}

/// A set close to `k`: every point moved a little, some dropped, some
/// added, so that Hausdorff distances cover small and moderate values.
pub fn nearby_set(rng: &mut SeededRng, k: &PointSet, scale: f64) -> PointSet {
    let dim = k.dim();
    let jitter = scale * 10f64.powi(-rng.random_range(0..4));
    let mut pts: Vec<Point> = k
        .points()
        .iter()
        .map(|p| {
            Point::new(
                p.coords()
                    .iter()
                    .map(|x| x + rng.random_range(-jitter..=jitter))
                    .collect(),
            )
            .expect("finite")
        })
        .collect();
    if pts.len() > 1 && rng.random_bool(0.3) {
        pts.pop();
    }
    if rng.random_bool(0.3) {
        pts.push(point(rng, dim, scale));
    }
    PointSet::new(pts).expect("nonempty")
}

pub fn cuboid(rng: &mut SeededRng, dim: usize, scale: f64) -> Cuboid {
    let (lo, hi): (Vec<f64>, Vec<f64>) = (0..dim)
        .map(|_| {
            let a = rng.random_range(-scale..=scale);
            let b = if rng.random_bool(0.2) {
                a
            } else {
                rng.random_range(-scale..=scale)
            };
            (a.min(b), a.max(b))
        })
        .unzip();
    Cuboid::new(Point::new(lo).expect("finite"), Point::new(hi).expect("finite")).expect("ordered bounds")
}

/// Enlarges radii until every pair of balls satisfies `d ≤ r_a + r_b`.
fn bump_radii(dist: impl Fn(usize, usize) -> f64, radii: &mut [f64]) {
    let n = radii.len();
    for a in 0..n {
        for b in a + 1..n {
            let gap = dist(a, b) - radii[a] - radii[b];
            if gap > 0.0 {
                radii[a] += gap / 2.0;
                radii[b] += gap / 2.0;
                // Rounding can leave a residue of one ulp.
                while dist(a, b) > radii[a] + radii[b] {
                    radii[a] = f64::from_bits(radii[a].to_bits() + 1);
                }
            }
        }
    }
}

/// Up to `max_balls` ℓ∞ balls that pairwise intersect.
pub fn ball_family(rng: &mut SeededRng, dim: usize, max_balls: usize, scale: f64) -> Vec<Cuboid> {
    let n = rng.random_range(1..=max_balls);
    let centers: Vec<Point> = (0..n).map(|_| point(rng, dim, scale)).collect();
    let mut radii: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=scale / 2.0)).collect();
    bump_radii(|a, b| centers[a].dist(&centers[b]), &mut radii);
    centers
        .iter()
        .zip(&radii)
        .map(|(c, r)| box_space::ball(c, *r).expect("nonnegative radius"))
        .collect()
}

/// A signed permutation: `(Sx)_i = sign_i · x_{perm_i}`.
type SignedPerm = Vec<(usize, i8)>;

fn compose_signed(a: &SignedPerm, b: &SignedPerm) -> SignedPerm {
    a.iter().map(|&(pa, sa)| (b[pa].0, sa * b[pa].1)).collect()
}

fn random_signed(rng: &mut SeededRng, dim: usize) -> SignedPerm {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    perm.into_iter()
        .map(|p| (p, if rng.random_bool(0.5) { -1 } else { 1 }))
        .collect()
}

/// A finite group of `ℓ∞` isometries of `ℝ^dim`: signed permutations
/// conjugated by a translation, so the common fixed point is a random `p`.
/// The group has at most `cap` elements; returns the action and `p`.
pub fn isometry_action(rng: &mut SeededRng, max_dim: usize, cap: usize) -> (Action<BoxSpace>, Point) {
    let dim = rng.random_range(1..=max_dim);
    let identity: SignedPerm = (0..dim).map(|i| (i, 1)).collect();
    let (group, elements) = loop {
        let n_gens = rng.random_range(1..=2);
        let gens: Vec<SignedPerm> = (0..n_gens).map(|_| random_signed(rng, dim)).collect();
        if let Some(found) = FiniteGroup::generate(&gens, identity.clone(), compose_signed, cap) {
            break found;
        }
    };
    let p = point(rng, dim, 2.0);
    let maps = elements
        .iter()
        .map(|s| {
            let rows: Vec<Vec<f64>> = s
                .iter()
                .map(|&(col, sign)| (0..dim).map(|c| if c == col { f64::from(sign) } else { 0.0 }).collect())
                .collect();
            // x ↦ S(x − p) + p
            let t = (0..dim)
                .map(|i| p.coords()[i] - f64::from(s[i].1) * p.coords()[s[i].0])
                .collect();
            BoxMap::affine(rows, t).expect("square matrix")
        })
        .collect();
    let space = BoxSpace::cube(dim, -3.0, 3.0).expect("valid cube");
    (Action::new(group, maps, space).expect("one map per element"), p)
}

pub fn circle_points(rng: &mut SeededRng, max_len: usize) -> Vec<CirclePoint> {
    let n = rng.random_range(1..=max_len);
    (0..n).map(|_| CirclePoint::new(rng.random_range(0.0..TAU))).collect()
}

fn point_in(rng: &mut SeededRng, set: &ArcSet) -> CirclePoint {
    let arc: &Arc = &set.arcs()[rng.random_range(0..set.arcs().len())];
    arc.start().rotated(rng.random_range(0.0..=arc.length()))
}

/// A nonempty admissible domain (an intersection of up to three balls,
/// or the whole circle) and up to `max_balls` balls centered in it that
/// pairwise intersect.
pub fn circle_family(rng: &mut SeededRng, max_balls: usize) -> BallFamily {
    let domain = loop {
        if rng.random_bool(0.25) {
            break ArcSet::full();
        }
        let k = rng.random_range(1..=3);
        let balls: Vec<ArcSet> = (0..k)
            .map(|_| {
                circle_space::circle_ball(CirclePoint::new(rng.random_range(0.0..TAU)), rng.random_range(0.2..=PI))
                    .expect("positive radius")
            })
            .collect();
        let meet = circle_space::arcset_intersect(&balls);
        if !meet.is_empty() {
            break meet;
        }
    };
    let n = rng.random_range(1..=max_balls);
    let centers: Vec<CirclePoint> = (0..n).map(|_| point_in(rng, &domain)).collect();
    let mut radii: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=PI / 2.0)).collect();
    bump_radii(|a, b| centers[a].dist(centers[b]), &mut radii);
    BallFamily {
        domain,
        balls: centers.into_iter().zip(radii).collect(),
    }
}

/// Three balls on the whole circle with radii just large enough to meet
/// pairwise; such families often have an empty common intersection.
pub fn tight_triple(rng: &mut SeededRng) -> BallFamily {
    let centers: Vec<CirclePoint> = (0..3).map(|_| CirclePoint::new(rng.random_range(0.0..TAU))).collect();
    let mut radii = vec![0.0; 3];
    bump_radii(|a, b| centers[a].dist(centers[b]), &mut radii);
    BallFamily {
        domain: ArcSet::full(),
        balls: centers.into_iter().zip(radii).collect(),
    }
}
