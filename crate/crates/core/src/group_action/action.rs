use rand::Rng;

use super::group::FiniteGroup;
use super::mapping::{LipschitzKind, Map};
use crate::error::{Error, Result};
use crate::model::{seeded_rng, MetricModel};
use crate::tolerance;

/// Local displacement scales used when sampling Lipschitz ratios, on top of
/// pairs drawn independently from the domain.
const LOCAL_SCALES: [f64; 3] = [1e-1, 1e-3, 1e-6];

/// A finite group acting on a model space, one map per element.
#[derive(Debug, Clone)]
pub struct Action<M: MetricModel> {
    group: FiniteGroup,
    maps: Vec<M::Map>,
    model: M,
}

/// Uniform Lipschitz constant of an action together with where the value came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzInfo {
    pub value: f64,
    pub kind: LipschitzKind,
    /// Sampled lower estimate, always computed.
    pub sampled: f64,
    /// Elements whose declared bound is beaten by a sampled ratio.
    pub declared_violations: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionReport {
    pub samples: usize,
    pub seed: u64,
    /// `max d(T_a T_b x, T_{ab} x)` over the samples.
    pub max_deviation: f64,
    /// Worst `(a, b)` pair and the formatted sample point.
    pub worst: Option<(usize, usize, String)>,
    /// `max d(T_e x, x)`.
    pub identity_deviation: f64,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= tolerance::HOMOMORPHISM && self.identity_deviation <= tolerance::HOMOMORPHISM
    }
}

/// Orbit diameter and Chebyshev radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitStats {
    pub delta: f64,
    pub radius: f64,
}

impl<M: MetricModel> Action<M> {
    pub fn new(group: FiniteGroup, maps: Vec<M::Map>, model: M) -> Result<Self> {
        if maps.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} maps for a group of order {}",
                maps.len(),
                group.order()
            )));
        }
        Ok(Action { group, maps, model })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn maps(&self) -> &[M::Map] {
        &self.maps
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn apply(&self, a: usize, x: &M::Point) -> M::Point {
        self.maps[a].apply(x)
    }

    /// `T_a x` for every element, in element order.
    pub fn orbit(&self, x: &M::Point) -> Vec<M::Point> {
        self.maps.iter().map(|m| m.apply(x)).collect()
    }

    /// The orbit as a set, duplicates merged.
    pub fn orbit_points(&self, x: &M::Point) -> Vec<M::Point> {
        self.model.dedup(&self.orbit(x))
    }

    pub fn orbit_stats(&self, x: &M::Point) -> OrbitStats {
        let pts = self.orbit_points(x);
        OrbitStats {
            delta: self.model.diameter(&pts),
            radius: self.model.radius(&pts),
        }
    }

    /// `r(y, x) = sup_a d(y, T_a x)`.
    pub fn relative_radius(&self, y: &M::Point, x: &M::Point) -> f64 {
        self.maps
            .iter()
            .map(|m| self.model.dist(y, &m.apply(x)))
            .fold(0.0, f64::max)
    }

    /// `d_G(x, y) = max_a d(T_a x, T_a y)`.
    pub fn d_g(&self, x: &M::Point, y: &M::Point) -> f64 {
        self.maps
            .iter()
            .map(|m| self.model.dist(&m.apply(x), &m.apply(y)))
            .fold(0.0, f64::max)
    }

    /// `max_a d(T_a x, x)`; zero exactly on common fixed points.
    pub fn residual(&self, x: &M::Point) -> f64 {
        self.relative_radius(x, x)
    }

    /// Sampled `max d(T_a x, T_a y) / d(x, y)` for one element.
    fn sampled_ratio(&self, a: usize, samples: usize, seed: u64) -> f64 {
        let mut rng = seeded_rng(seed ^ (a as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let map = &self.maps[a];
        let mut best: f64 = 0.0;
        for i in 0..samples {
            let x = self.model.sample(&mut rng);
            let y = if i % 4 == 0 {
                self.model.sample(&mut rng)
            } else {
                let scale = LOCAL_SCALES[i % LOCAL_SCALES.len()];
                self.model.sample_at_distance(&x, scale, &mut rng)
            };
            let d = self.model.dist(&x, &y);
            if d > 0.0 {
                best = best.max(self.model.dist(&map.apply(&x), &map.apply(&y)) / d);
            }
        }
        best
    }

    /// Sampled lower estimate of the uniform Lipschitz constant.
    pub fn estimate_lipschitz(&self, samples: usize, seed: u64) -> f64 {
        (0..self.maps.len())
            .map(|a| self.sampled_ratio(a, samples, seed))
            .fold(0.0, f64::max)
    }

    /// The uniform constant used by audits. Per element, an analytic bound
    /// wins over a declared one, which wins over the sampled estimate.
    pub fn lipschitz(&self, samples: usize, seed: u64) -> LipschitzInfo {
        let mut value: f64 = 0.0;
        let mut kind = LipschitzKind::Exact;
        let mut sampled: f64 = 0.0;
        let mut declared_violations = Vec::new();
        for (a, map) in self.maps.iter().enumerate() {
            let est = self.sampled_ratio(a, samples, seed);
            sampled = sampled.max(est);
            if let Some(dl) = map.declared_lipschitz() {
                if est > dl + tolerance::DECLARED_LIPSCHITZ {
                    declared_violations.push(a);
                }
            }
            let (v, k) = match (map.lipschitz_bound(), map.declared_lipschitz()) {
                (Some(b), _) => (b.value, b.kind),
                (None, Some(dl)) => (dl, LipschitzKind::Declared),
                (None, None) => (est, LipschitzKind::Estimate),
            };
            value = value.max(v);
            kind = kind.max(k);
        }
        LipschitzInfo {
            value,
            kind,
            sampled,
            declared_violations,
            samples,
            seed,
        }
    }

    /// Samples `(a, b, x)` and measures `d(T_a T_b x, T_{ab} x)`.
    pub fn verify(&self, samples: usize, seed: u64) -> ActionReport {
        let mut rng = seeded_rng(seed);
        let n = self.group.order();
        let e = self.group.identity();
        let mut report = ActionReport {
            samples,
            seed,
            max_deviation: 0.0,
            worst: None,
            identity_deviation: 0.0,
        };
        for _ in 0..samples {
            let x = self.model.sample(&mut rng);
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            let lhs = self.apply(a, &self.apply(b, &x));
            let rhs = self.apply(self.group.mul(a, b), &x);
            let dev = self.model.dist(&lhs, &rhs);
            if dev > report.max_deviation || report.worst.is_none() {
                report.max_deviation = report.max_deviation.max(dev);
                report.worst = Some((a, b, self.model.format_point(&x)));
            }
            report.identity_deviation = report.identity_deviation.max(self.model.dist(&self.apply(e, &x), &x));
        }
        report
    }

    /// `δ(y) ≤ 2L·d(x, y) + δ(x)`.
    pub fn lemma_bounded_check(&self, x: &M::Point, y: &M::Point, lipschitz: f64) -> bool {
        let dx = self.orbit_stats(x).delta;
        let dy = self.orbit_stats(y).delta;
        dy <= 2.0 * lipschitz * self.model.dist(x, y) + dx + tolerance::AUDIT
    }
}
