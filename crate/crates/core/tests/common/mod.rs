//! Brute-force grid oracles shared by the integration tests.
//!
//! Nothing here calls the closed forms under test; the oracles only use
//! coordinates and raw distance formulas.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use hyperfix::box_space::{Cuboid, Point, PointSet};
use hyperfix::circle_space::CirclePoint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const H: f64 = 1e-3;
pub const CIRCLE_H: f64 = 1e-4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `lo, lo + h, …` up to and including `hi`.
pub fn grid(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let n = ((hi - lo) / h).floor() as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + k as f64 * h).filter(|x| *x <= hi).collect();
    if g.last().is_none_or(|x| *x < hi) {
        g.push(hi);
    }
    g
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn circle_d(a: f64, b: f64) -> f64 {
    let t = (a - b).rem_euclid(TAU);
    t.min(TAU - t)
}

/// `sup_{s∈S} min_{t∈T} |s − t|` over two finite lists.
fn directed_1d(s: &[f64], t: &[f64]) -> f64 {
    s.iter()
        .map(|a| t.iter().map(|b| (a - b).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between the step-`h` grids of two boxes.
///
/// Grids of boxes are product sets, and for product sets both the inner
/// minimum and the outer supremum of the ℓ∞ distance split by coordinate,
/// so the brute force runs over one axis at a time.
pub fn box_hausdorff_grid(a: &Cuboid, b: &Cuboid, h: f64) -> f64 {
    (0..a.dim())
        .map(|i| {
            let ga = grid(a.lo()[i], a.hi()[i], h);
            let gb = grid(b.lo()[i], b.hi()[i], h);
            directed_1d(&ga, &gb).max(directed_1d(&gb, &ga))
        })
        .fold(0.0, f64::max)
}

fn grid_2d(b: &Cuboid, h: f64) -> Vec<[f64; 2]> {
    let xs = grid(b.lo()[0], b.hi()[0], h);
    let ys = grid(b.lo()[1], b.hi()[1], h);
    xs.iter().flat_map(|x| ys.iter().map(move |y| [*x, *y])).collect()
}

/// Full pairwise brute force over planar grids, no splitting.
pub fn box_hausdorff_grid_2d(a: &Cuboid, b: &Cuboid, h: f64) -> f64 {
    let ga = grid_2d(a, h);
    let gb = grid_2d(b, h);
    let directed = |s: &[[f64; 2]], t: &[[f64; 2]]| {
        s.iter()
            .map(|p| t.iter().map(|q| linf(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(&ga, &gb).max(directed(&gb, &ga))
}

fn sup_to(y: &[f64], k: &PointSet) -> f64 {
    k.points().iter().map(|p| linf(y, p.coords())).fold(0.0, f64::max)
}

fn bbox(k: &PointSet) -> (Vec<f64>, Vec<f64>) {
    let d = k.dim();
    let lo = (0..d)
        .map(|i| k.points().iter().map(|p| p.coords()[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let hi = (0..d)
        .map(|i| {
            k.points()
                .iter()
                .map(|p| p.coords()[i])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    (lo, hi)
}

/// Chebyshev radius of `k` by minimizing the sup-distance over a grid of
/// the bounding box widened by its diameter, one axis at a time; also returns, per axis, the
/// smallest and largest grid value whose axis sup-distance is at most that
/// radius.
pub fn chebyshev_grid(k: &PointSet, h: f64) -> (f64, Vec<(f64, f64)>) {
    let (lo, hi) = bbox(k);
    let pad = (0..k.dim()).map(|i| hi[i] - lo[i]).fold(0.0, f64::max);
    let axes: Vec<(Vec<f64>, Vec<f64>)> = (0..k.dim())
        .map(|i| {
            let g = grid(lo[i] - pad, hi[i] + pad, h);
            let f = g
                .iter()
                .map(|y| k.points().iter().map(|p| (y - p.coords()[i]).abs()).fold(0.0, f64::max))
                .collect();
            (g, f)
        })
        .collect();
    let r = axes
        .iter()
        .map(|(_, f)| f.iter().copied().fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let hulls = axes
        .iter()
        .map(|(g, f)| {
            let inside: Vec<f64> = g.iter().zip(f).filter(|(_, v)| **v <= r).map(|(y, _)| *y).collect();
            (inside[0], inside[inside.len() - 1])
        })
        .collect();
    (r, hulls)
}

/// Chebyshev radius of a planar set by a full scan of the bounding-box grid.
pub fn chebyshev_grid_2d(k: &PointSet, h: f64) -> (f64, Vec<[f64; 2]>) {
    let (lo, hi) = bbox(k);
    let b = Cuboid::new(Point::new(lo).unwrap(), Point::new(hi).unwrap()).unwrap();
    let pts = grid_2d(&b, h);
    let r = pts.iter().map(|y| sup_to(y, k)).fold(f64::INFINITY, f64::min);
    let argmin = pts.into_iter().filter(|y| sup_to(y, k) <= r + 1e-12).collect();
    (r, argmin)
}

/// Chebyshev radius on the circle by scanning angles with step `h`; also
/// returns the grid angles attaining the minimum up to `h`.
pub fn circle_chebyshev_grid(k: &[CirclePoint], h: f64) -> (f64, Vec<f64>) {
    let g = grid(0.0, TAU - h, h);
    let f = |y: f64| k.iter().map(|p| circle_d(y, p.angle())).fold(0.0, f64::max);
    let r = g.iter().map(|y| f(*y)).fold(f64::INFINITY, f64::min);
    let near = g.into_iter().filter(|y| f(*y) <= r + h).collect();
    (r, near)
}

/// Membership of every grid angle in `A = ⋂ B(o, ρ)` and
/// `AA = A ∩ ⋂_{y∈A} B(y, σ)`, with the inner supremum over grid points of
/// `A`.
pub fn circle_aa_grid(orbit: &[CirclePoint], rho: f64, sigma: f64, h: f64) -> Vec<(f64, bool, bool)> {
    let g = grid(0.0, TAU - h, h);
    let in_a: Vec<bool> = g
        .iter()
        .map(|y| orbit.iter().all(|o| circle_d(*y, o.angle()) <= rho))
        .collect();
    let a_pts: Vec<f64> = g.iter().zip(&in_a).filter(|(_, a)| **a).map(|(y, _)| *y).collect();
    g.iter()
        .zip(&in_a)
        .map(|(y, a)| {
            let aa = *a && a_pts.iter().all(|z| circle_d(*y, *z) <= sigma);
            (*y, *a, aa)
        })
        .collect()
}

pub fn random_cuboid(rng: &mut ChaCha8Rng, dim: usize, center_scale: f64, max_side: f64) -> Cuboid {
    let (lo, hi): (Vec<f64>, Vec<f64>) = (0..dim)
        .map(|_| {
            let c = rng.random_range(-center_scale..=center_scale);
            let w = rng.random_range(0.0..=max_side);
            (c - w / 2.0, c + w / 2.0)
        })
        .unzip();
    Cuboid::new(Point::new(lo).unwrap(), Point::new(hi).unwrap()).unwrap()
}

pub fn random_set(rng: &mut ChaCha8Rng, dim: usize, max_len: usize, scale: f64) -> PointSet {
    let n = rng.random_range(1..=max_len);
    PointSet::new(
        (0..n)
            .map(|_| Point::new((0..dim).map(|_| rng.random_range(-scale..=scale)).collect()).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn random_circle_set(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<CirclePoint> {
    let n = rng.random_range(1..=max_len);
    (0..n).map(|_| CirclePoint::new(rng.random_range(0.0..TAU))).collect()
}

/// Distance from an angle to the nearest of `ends`.
pub fn near_any(y: f64, ends: &[f64]) -> f64 {
    ends.iter().map(|e| circle_d(y, *e)).fold(PI, f64::min)
}
