//! Property suites run by `verify`.
//!
//! Each suite draws its own deterministic random instances from a seed
//! derived from the run seed and the suite's position, checks one family
//! of inequalities, and reports the largest observed `lhs − bound` as its
//! slack. A suite passes when it records no violations.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::catalog;
use super::random;
use super::scenario::{box_action, circle_action, fixed_set_analysis};
use crate::box_space::{self, Cuboid, Point, PointSet};
use crate::circle_space::{self, CirclePoint};
use crate::fixpoint::{self, IterationConfig, Mode, Outcome};
use crate::group_action::{verify_group, word_ball_orbit, Action, BoxMap, FiniteGroup, PiecewiseLinear};
use crate::model::{seeded_rng, BoxSpace, MetricModel, SeededRng};
use crate::report::sig17;
use crate::retraction;
use crate::tolerance;

use rand::Rng;

/// Default number of cases for the pair-based suites.
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Largest dimension used by random instances.
pub const MAX_DIM: usize = 6;
/// Largest random isometry group.
pub const MAX_GROUP: usize = 48;
/// Stored violation descriptions per suite; the count is always exact.
const MAX_LISTED: usize = 25;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub violation_count: usize,
    /// Descriptions of the first violations, with their inputs.
    pub violations: Vec<String>,
    /// Largest `lhs − bound` over all checks; negative when every check
    /// holds with room to spare.
    pub max_slack: f64,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// `name,cases,violations,max_slack,seed`.
    pub fn report_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.name,
            self.cases,
            self.violation_count,
            sig17(self.max_slack),
            self.seed
        )
    }
}

/// Accumulates checks for one suite.
struct Tally {
    result: SuiteResult,
}

impl Tally {
    fn new(name: &'static str, seed: u64) -> Self {
        Tally {
            result: SuiteResult {
                name,
                cases: 0,
                violation_count: 0,
                violations: Vec::new(),
                max_slack: f64::NEG_INFINITY,
                seed,
                notes: Vec::new(),
            },
        }
    }

    fn case(&mut self) {
        self.result.cases += 1;
    }

    /// Records `lhs ≤ bound`; `describe` is only called on failure.
    fn check(&mut self, lhs: f64, bound: f64, describe: impl FnOnce() -> String) {
        let slack = lhs - bound;
        self.result.max_slack = self.result.max_slack.max(slack);
        if slack > 0.0 || slack.is_nan() {
            self.fail(describe());
        }
    }

    /// Records a boolean requirement with zero slack.
    fn require(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.check(if ok { 0.0 } else { 1.0 }, 0.0, describe);
    }

    fn fail(&mut self, message: String) {
        self.result.violation_count += 1;
        if self.result.violations.len() < MAX_LISTED {
            self.result.violations.push(message);
        }
    }

    fn note(&mut self, note: String) {
        self.result.notes.push(note);
    }

    fn finish(mut self) -> SuiteResult {
        if self.result.max_slack == f64::NEG_INFINITY {
            self.result.max_slack = 0.0;
        }
        self.result
    }
}

type SuiteFn = fn(u64, usize) -> SuiteResult;

/// Every suite, in report order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("box_metric_axioms", box_metric_axioms),
    ("box_hyperconvexity", box_hyperconvexity),
    ("box_hausdorff_vertices", box_hausdorff_vertices),
    ("box_chebyshev", box_chebyshev),
    ("box_shrink_hull", box_shrink_hull),
    ("lemma_radius", lemma_radius),
    ("lemma_center", lemma_center),
    ("corollary_est", corollary_est),
    ("midpoint_lipschitz", midpoint_lipschitz),
    ("circle_metric_axioms", circle_metric_axioms),
    ("circle_radius_sandwich", circle_radius_sandwich),
    ("circle_lemma_radius", circle_lemma_radius),
    ("circle_lemma_center_counterexample", circle_lemma_center_counterexample),
    ("circle_lambda_hyperconvexity", circle_lambda_hyperconvexity),
    ("group_laws", group_laws),
    ("action_homomorphism", action_homomorphism),
    ("dg_sandwich", dg_sandwich),
    ("lemma_bounded", lemma_bounded),
    ("lipschitz_constants", lipschitz_constants),
    ("theorem1_contraction", theorem1_contraction),
    ("theorem2_contraction", theorem2_contraction),
    ("theorem2_reduction", theorem2_reduction),
    ("theorem3_involution", theorem3_involution),
    ("circle_negative_runs", circle_negative_runs),
    ("chain_check", chain_check),
    ("retraction_laws", retraction_laws),
    ("word_ball_growth", word_ball_growth),
    ("fixed_set_fa", fixed_set_fa),
];

fn suite_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Runs every suite in parallel; results come back in [`SUITES`] order.
pub fn verify_all(seed: u64, samples: usize) -> Vec<SuiteResult> {
    SUITES
        .par_iter()
        .enumerate()
        .map(|(i, (_, f))| f(suite_seed(seed, i), samples.max(1)))
        .collect()
}

/// Runs a single suite by name.
pub fn run_suite(name: &str, seed: u64, samples: usize) -> Option<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .find(|(_, (n, _))| *n == name)
        .map(|(i, (_, f))| f(suite_seed(seed, i), samples.max(1)))
}

pub fn report(results: &[SuiteResult]) -> String {
    let mut out = String::from("name,cases,violations,max_slack,seed\n");
    for r in results {
        out.push_str(&r.report_line());
        out.push('\n');
    }
    out
}

fn scaled(samples: usize, divisor: usize) -> usize {
    (samples / divisor).max(1)
}

fn dim(rng: &mut SeededRng) -> usize {
    rng.random_range(1..=MAX_DIM)
}

fn shipped_box(name: &str) -> Action<BoxSpace> {
    box_action(&catalog::load(name).expect("shipped config")).expect("shipped action")
}

fn swap3() -> Action<BoxSpace> {
    Action::new(
        FiniteGroup::cyclic(2).expect("order 2"),
        vec![BoxMap::identity(), BoxMap::swap(3, 0, 1).expect("in range")],
        BoxSpace::cube(3, -5.0, 5.0).expect("valid cube"),
    )
    .expect("two maps")
}

fn involution(c: f64) -> BoxMap {
    BoxMap::coordinatewise(vec![
        PiecewiseLinear::new(vec![(0.0, 1.0), (c, c), (1.0, 0.0)]).expect("valid knots")
    ])
    .expect("one coordinate")
}

fn box_metric_axioms(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("box_metric_axioms", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let d = dim(&mut rng);
        let [x, y, z] = [0, 1, 2].map(|_| random::point(&mut rng, d, 10.0));
        t.case();
        t.check(x.dist(&x), 0.0, || format!("d(x, x) > 0 at {x}"));
        t.check((x.dist(&y) - y.dist(&x)).abs(), 0.0, || {
            format!("asymmetric at {x}, {y}")
        });
        t.check(x.dist(&z), x.dist(&y) + y.dist(&z) + tolerance::GEOMETRY, || {
            format!("triangle inequality fails at {x}, {y}, {z}")
        });
    }
    t.finish()
}

fn box_hyperconvexity(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("box_hyperconvexity", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let d = dim(&mut rng);
        let fam = random::ball_family(&mut rng, d, 8, 5.0);
        t.case();
        let margin = (0..d)
            .map(|i| {
                let lo = fam.iter().map(|b| b.lo()[i]).fold(f64::NEG_INFINITY, f64::max);
                let hi = fam.iter().map(|b| b.hi()[i]).fold(f64::INFINITY, f64::min);
                lo - hi
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let meet = box_space::intersect(&fam).ok().flatten();
        t.check(margin, tolerance::GEOMETRY, || {
            format!("{} pairwise-meeting balls with empty intersection", fam.len())
        });
        t.require(meet.is_some(), || {
            "intersect returned empty for a pairwise-meeting family".into()
        });
    }
    t.finish()
}

fn vertices(b: &Cuboid) -> Vec<Point> {
    let d = b.dim();
    (0..1usize << d)
        .map(|mask| {
            Point::new(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { b.hi()[i] } else { b.lo()[i] })
                    .collect(),
            )
            .expect("finite")
        })
        .collect()
}

/// `sup_{a∈A} dist(a, B)` is a maximum of a convex function, attained at a
/// vertex of `A`.
fn directed_by_vertices(a: &Cuboid, b: &Cuboid) -> f64 {
    vertices(a).iter().map(|v| b.dist_to(v)).fold(0.0, f64::max)
}

fn box_hausdorff_vertices(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("box_hausdorff_vertices", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..scaled(samples, 10) {
        let d = dim(&mut rng);
        let a = random::cuboid(&mut rng, d, 3.0);
        let b = random::cuboid(&mut rng, d, 3.0);
        t.case();
        let closed = box_space::box_hausdorff(&a, &b).expect("same dimension");
        let oracle = directed_by_vertices(&a, &b).max(directed_by_vertices(&b, &a));
        t.check((closed - oracle).abs(), tolerance::GEOMETRY, || {
            format!("box_hausdorff({a}, {b}) = {closed} but vertex evaluation gives {oracle}")
        });
    }
    t.finish()
}

fn sup_dist(p: &Point, k: &PointSet) -> f64 {
    k.points().iter().map(|q| p.dist(q)).fold(0.0, f64::max)
}

fn box_chebyshev(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("box_chebyshev", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..scaled(samples, 10) {
        let d = dim(&mut rng);
        let k = random::point_set(&mut rng, d, 8, 3.0);
        t.case();
        let (r, center) = box_space::chebyshev(&k);
        t.check((r - k.diameter() / 2.0).abs(), tolerance::GEOMETRY, || {
            format!("radius {r} differs from half the diameter {}", k.diameter())
        });
        for v in vertices(&center) {
            t.check((sup_dist(&v, &k) - r).abs(), tolerance::GEOMETRY, || {
                format!("center vertex {v} has sup-distance {} instead of {r}", sup_dist(&v, &k))
            });
        }
        // Every point of K is within r of the whole center.
        for p in k.points() {
            t.check(center.farthest_from(p), r + tolerance::GEOMETRY, || {
                format!("center point farther than r from {p}")
            });
        }
    }
    t.finish()
}

fn box_shrink_hull(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("box_shrink_hull", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..scaled(samples, 10) {
        let d = dim(&mut rng);
        let c = random::cuboid(&mut rng, d, 2.0);
        let r = rng.random_range(0.0..=3.0);
        t.case();
        let widest = c.diameter();
        match box_space::shrink_hull(&c, r) {
            Some(h) => {
                t.check(widest, 2.0 * r + tolerance::GEOMETRY, || {
                    format!("hull of {c} at r = {r} should be empty")
                });
                for v in vertices(&h) {
                    t.check(c.farthest_from(&v), r + tolerance::GEOMETRY, || {
                        format!("hull vertex {v} is farther than {r} from part of {c}")
                    });
                }
            }
            None => t.check(2.0 * r, widest, || format!("hull of {c} at r = {r} should be nonempty")),
        }
    }
    t.finish()
}

fn set_pair(rng: &mut SeededRng) -> (PointSet, PointSet) {
    let d = dim(rng);
    let k = random::point_set(rng, d, 8, 2.0);
    let l = if rng.random_bool(0.5) {
        random::nearby_set(rng, &k, 2.0)
    } else {
        random::point_set(rng, d, 8, 2.0)
    };
    (k, l)
}

fn lemma_radius(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("lemma_radius", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let (k, l) = set_pair(&mut rng);
        t.case();
        let dkl = box_space::set_hausdorff(&k, &l).expect("same dimension");
        let (rk, _) = box_space::chebyshev(&k);
        let (rl, _) = box_space::chebyshev(&l);
        t.check((rk - rl).abs(), dkl + tolerance::AUDIT, || {
            format!("|r(K) − r(L)| = {} > D = {dkl}", (rk - rl).abs())
        });
    }
    t.finish()
}

fn lemma_center(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("lemma_center", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let (k, l) = set_pair(&mut rng);
        t.case();
        let dkl = box_space::set_hausdorff(&k, &l).expect("same dimension");
        let (rk, ck) = box_space::chebyshev(&k);
        let (rl, cl) = box_space::chebyshev(&l);
        let dc = box_space::box_hausdorff(&ck, &cl).expect("same dimension");
        let bound = dkl + (rk - rl).abs();
        t.check(dc, bound + tolerance::AUDIT, || {
            format!("D(C(K), C(L)) = {dc} > {bound}")
        });
    }
    t.finish()
}

fn corollary_est(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("corollary_est", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let (k, l) = set_pair(&mut rng);
        t.case();
        let dkl = box_space::set_hausdorff(&k, &l).expect("same dimension");
        let (_, ck) = box_space::chebyshev(&k);
        let (_, cl) = box_space::chebyshev(&l);
        let dc = box_space::box_hausdorff(&ck, &cl).expect("same dimension");
        t.check(dc, 2.0 * dkl + tolerance::AUDIT, || {
            format!("D(C(K), C(L)) = {dc} > 2·{dkl}")
        });
    }
    let k = PointSet::new(vec![Point::from([0.0, 0.0])]).expect("nonempty");
    let l = PointSet::new(vec![Point::from([-1.0, 1.0]), Point::from([1.0, 1.0])]).expect("nonempty");
    let dkl = box_space::set_hausdorff(&k, &l).expect("same dimension");
    let dc =
        box_space::box_hausdorff(&box_space::chebyshev(&k).1, &box_space::chebyshev(&l).1).expect("same dimension");
    t.case();
    t.require(dkl == 1.0 && dc == 2.0, || {
        format!("sharpness pair gives D = {dkl}, D(C) = {dc}")
    });
    t.note(format!(
        "sharpness pair: D(K, L) = {}, D(C(K), C(L)) = {}",
        sig17(dkl),
        sig17(dc)
    ));
    t.finish()
}

fn midpoint_lipschitz(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("midpoint_lipschitz", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let d = dim(&mut rng);
        let a = random::cuboid(&mut rng, d, 3.0);
        let b = random::cuboid(&mut rng, d, 3.0);
        t.case();
        let lhs = box_space::midpoint(&a).dist(&box_space::midpoint(&b));
        let h = box_space::box_hausdorff(&a, &b).expect("same dimension");
        t.check(lhs, h + tolerance::GEOMETRY, || {
            format!("midpoints of {a} and {b} are {lhs} apart, D = {h}")
        });
    }
    t.finish()
}

fn circle_metric_axioms(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("circle_metric_axioms", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..samples {
        let [x, y, z] = [0, 1, 2].map(|_| circle_sample(&mut rng));
        t.case();
        t.check(x.dist(x), 0.0, || format!("d(x, x) > 0 at {x}"));
        t.check((x.dist(y) - y.dist(x)).abs(), 0.0, || format!("asymmetric at {x}, {y}"));
        t.check(x.dist(y), PI, || format!("distance above π at {x}, {y}"));
        t.check(x.dist(z), x.dist(y) + y.dist(z) + tolerance::GEOMETRY, || {
            format!("triangle inequality fails at {x}, {y}, {z}")
        });
    }
    t.finish()
}

fn circle_sample(rng: &mut SeededRng) -> CirclePoint {
    crate::model::CircleSpace.sample(rng)
}

fn circle_diameter(k: &[CirclePoint]) -> f64 {
    crate::model::CircleSpace.diameter(k)
}

fn circle_radius_sandwich(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("circle_radius_sandwich", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..scaled(samples, 10) {
        let k = random::circle_points(&mut rng, 8);
        t.case();
        let (r, _) = circle_space::circle_chebyshev(&k).expect("nonempty");
        let delta = circle_diameter(&k);
        t.check(delta / 2.0, r + tolerance::GEOMETRY, || {
            format!("r = {r} below δ/2 = {}", delta / 2.0)
        });
        t.check(r, 2.0 * delta / 2.0 + tolerance::GEOMETRY, || {
            format!("r = {r} above λδ/2 = {delta}")
        });
    }
    t.finish()
}

fn circle_lemma_radius(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("circle_lemma_radius", seed);
    let mut rng = seeded_rng(seed);
    for _ in 0..scaled(samples, 10) {
        let k = random::circle_points(&mut rng, 6);
        let l: Vec<CirclePoint> = if rng.random_bool(0.5) {
            k.iter().map(|p| p.rotated(rng.random_range(-0.1..=0.1))).collect()
        } else {
            random::circle_points(&mut rng, 6)
        };
        t.case();
        let dkl = circle_space::arcset_hausdorff(
            &circle_space::ArcSet::from_points(&k),
            &circle_space::ArcSet::from_points(&l),
        )
        .expect("nonempty");
        let rk = circle_space::circle_chebyshev(&k).expect("nonempty").0;
        let rl = circle_space::circle_chebyshev(&l).expect("nonempty").0;
        t.check((rk - rl).abs(), dkl + tolerance::AUDIT, || {
            format!("|r(K) − r(L)| = {} > D = {dkl}", (rk - rl).abs())
        });
    }
    t.finish()
}

/// `K = {0, π}`, `L = {0, π − ε}`; the center of `K` is `{π/2, 3π/2}` and
/// that of `L` is the single midpoint, so centers move by about `π` while
/// the sets move by `ε`.
pub fn circle_counterexample(eps: f64) -> (f64, f64, f64) {
    let k = [CirclePoint::new(0.0), CirclePoint::new(PI)];
    let l = [CirclePoint::new(0.0), CirclePoint::new(PI - eps)];
    let dkl = circle_space::arcset_hausdorff(
        &circle_space::ArcSet::from_points(&k),
        &circle_space::ArcSet::from_points(&l),
    )
    .expect("nonempty");
    let (rk, ck) = circle_space::circle_chebyshev(&k).expect("nonempty");
    let (rl, cl) = circle_space::circle_chebyshev(&l).expect("nonempty");
    let dc = circle_space::arcset_hausdorff(&ck, &cl).expect("nonempty");
    (dkl, dc, dkl + (rk - rl).abs())
}

fn circle_lemma_center_counterexample(seed: u64, _samples: usize) -> SuiteResult {
    let mut t = Tally::new("circle_lemma_center_counterexample", seed);
    for eps in [0.1, 0.05, 0.01, 0.001] {
        t.case();
        let (dkl, dc, bound) = circle_counterexample(eps);
        t.check((dkl - eps).abs(), tolerance::AUDIT, || {
            format!("ε = {eps}: D(K, L) = {dkl}")
        });
        t.check((dc - (PI - eps / 2.0)).abs(), tolerance::AUDIT, || {
            format!("ε = {eps}: D(C(K), C(L)) = {dc}")
        });
        t.require(dc > bound, || {
            format!("ε = {eps}: the center inequality was not violated ({dc} ≤ {bound})")
        });
        t.note(format!(
            "ε = {eps}: D(K, L) = {}, D(C(K), C(L)) = {} exceeds D(K, L) + |r(K) − r(L)| = {}",
            sig17(dkl),
            sig17(dc),
            sig17(bound)
        ));
    }
    t.finish()
}

fn circle_lambda_hyperconvexity(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("circle_lambda_hyperconvexity", seed);
    let mut rng = seeded_rng(seed);
    let families: Vec<_> = (0..scaled(samples, 10))
        .map(|_| random::circle_family(&mut rng, 5))
        .collect();
    let report = circle_space::check_lambda_hyperconvex(&families, 2.0);
    t.result.cases = report.checked;
    for i in &report.violations {
        t.fail(format!("family {i}: inflated intersection is empty at λ = 2"));
    }
    for (i, why) in &report.malformed {
        t.fail(format!("family {i} is malformed: {why}"));
    }
    t.result.max_slack = if report.passed() { 0.0 } else { 1.0 };

    let triples: Vec<_> = (0..scaled(samples, 10))
        .map(|_| random::tight_triple(&mut rng))
        .collect();
    let unscaled = circle_space::check_lambda_hyperconvex(&triples, 1.0);
    t.note(format!(
        "λ = 1: {} of {} tight three-ball families have an empty intersection",
        unscaled.violations.len(),
        unscaled.checked
    ));
    t.require(!unscaled.violations.is_empty(), || {
        "no λ = 1 counterexample found".into()
    });
    t.finish()
}

fn group_laws(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("group_laws", seed);
    for cfg in catalog::all().expect("shipped configs") {
        if let Some(order) = cfg.group_order() {
            t.case();
            let g = cfg.group().expect("validated group");
            let r = verify_group(&g);
            t.require(r.is_valid() && g.order() == order, || {
                format!("{}: {}", cfg.name, r.summary())
            });
        }
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..scaled(samples, 100) {
        let (act, _) = random::isometry_action(&mut rng, MAX_DIM, MAX_GROUP);
        t.case();
        let r = verify_group(act.group());
        t.require(r.is_valid(), || {
            format!("generated group of order {}: {}", act.group().order(), r.summary())
        });
    }
    let mut table = FiniteGroup::cyclic(4).expect("order 4").table();
    table[1][1] = 3;
    let corrupted = FiniteGroup::from_table_unchecked(table).expect("well-formed table");
    let r = verify_group(&corrupted);
    t.case();
    t.require(!r.associativity.is_empty(), || {
        "corrupted Z_4 table passed the associativity check".into()
    });
    t.note(format!("corrupted Z_4 table with [1][1] = 3: {}", r.summary()));
    t.finish()
}

fn action_homomorphism(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("action_homomorphism", seed);
    let per_action = scaled(samples, 10);
    let check = |t: &mut Tally, name: &str, dev: f64, id_dev: f64| {
        t.case();
        t.check(dev.max(id_dev), tolerance::HOMOMORPHISM, || {
            format!("{name}: deviation {dev:e}, identity {id_dev:e}")
        });
    };
    for cfg in catalog::all().expect("shipped configs") {
        if cfg.group_order().is_none() {
            continue;
        }
        let (dev, id_dev) = match cfg.space.kind {
            super::config::SpaceKind::Box => {
                let r = box_action(&cfg).expect("shipped action").verify(per_action, seed);
                (r.max_deviation, r.identity_deviation)
            }
            super::config::SpaceKind::Circle => {
                let r = circle_action(&cfg).expect("shipped action").verify(per_action, seed);
                (r.max_deviation, r.identity_deviation)
            }
        };
        check(&mut t, &cfg.name, dev, id_dev);
    }
    let r = swap3().verify(per_action, seed);
    check(&mut t, "swap3", r.max_deviation, r.identity_deviation);
    let mut rng = seeded_rng(seed);
    for i in 0..scaled(samples, 100) {
        let (act, _) = random::isometry_action(&mut rng, MAX_DIM, MAX_GROUP);
        let r = act.verify(100, seed.wrapping_add(i as u64));
        check(&mut t, "random isometry group", r.max_deviation, r.identity_deviation);
    }
    t.finish()
}

/// Actions with known uniform constants used by several suites.
fn audit_actions(rng: &mut SeededRng, random_count: usize) -> Vec<(String, Action<BoxSpace>)> {
    let mut out = vec![
        ("s1_rotation".to_string(), shipped_box("s1_rotation")),
        ("s2_periodic".to_string(), shipped_box("s2_periodic")),
        ("s3_involution".to_string(), shipped_box("s3_involution")),
        ("swap3".to_string(), swap3()),
    ];
    for i in 0..random_count {
        out.push((
            format!("isometry group {i}"),
            random::isometry_action(rng, MAX_DIM, MAX_GROUP).0,
        ));
    }
    out
}

fn dg_sandwich(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("dg_sandwich", seed);
    let mut rng = seeded_rng(seed);
    let actions = audit_actions(&mut rng, 6);
    let per_action = scaled(samples, actions.len());
    for (name, act) in &actions {
        let l = act.lipschitz(200, seed).value;
        let space = act.model();
        for _ in 0..per_action {
            let x = space.sample(&mut rng);
            let y = space.sample(&mut rng);
            let d = x.dist(&y);
            let dg = act.d_g(&x, &y);
            t.case();
            t.check(d, dg + tolerance::AUDIT, || format!("{name}: d = {d} > d_G = {dg}"));
            t.check(dg, l * d + tolerance::AUDIT, || {
                format!("{name}: d_G = {dg} > L·d = {}", l * d)
            });
            let a = rng.random_range(0..act.group().order());
            let moved = act.d_g(&act.apply(a, &x), &act.apply(a, &y));
            t.check((moved - dg).abs(), tolerance::AUDIT, || {
                format!("{name}: T_{a} is not a d_G-isometry ({moved} vs {dg})")
            });
        }
    }
    t.finish()
}

fn lemma_bounded(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("lemma_bounded", seed);
    let mut rng = seeded_rng(seed);
    let actions = audit_actions(&mut rng, 10);
    let per_action = scaled(scaled(samples, 10), actions.len());
    for (name, act) in &actions {
        let l = act.lipschitz(200, seed).value;
        let space = act.model();
        for _ in 0..per_action {
            let x = space.sample(&mut rng);
            let y = space.sample(&mut rng);
            let dx = act.orbit_stats(&x).delta;
            let dy = act.orbit_stats(&y).delta;
            let bound = 2.0 * l * x.dist(&y) + dx;
            t.case();
            t.check(dy, bound + tolerance::AUDIT, || {
                format!("{name}: δ(y) = {dy} > {bound}")
            });
            t.require(act.lemma_bounded_check(&x, &y, l), || {
                format!("{name}: lemma_bounded_check rejected {x}, {y}")
            });
        }
    }
    t.finish()
}

fn lipschitz_constants(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("lipschitz_constants", seed);
    let per_map = scaled(samples, 2);
    for (name, act, expected) in [
        ("s1_rotation", shipped_box("s1_rotation"), 1.0),
        ("s2_periodic", shipped_box("s2_periodic"), 1.25),
        ("s3_involution", shipped_box("s3_involution"), 1.5),
    ] {
        let info = act.lipschitz(per_map, seed);
        t.case();
        t.check((info.value - expected).abs(), tolerance::GEOMETRY, || {
            format!("{name}: exact L = {} ≠ {expected}", info.value)
        });
        t.check(info.sampled, info.value + tolerance::DECLARED_LIPSCHITZ, || {
            format!("{name}: sampled {} exceeds exact {}", info.sampled, info.value)
        });
        t.note(format!(
            "{name}: exact {} sampled {}",
            sig17(info.value),
            sig17(info.sampled)
        ));
    }
    t.finish()
}

fn theorem1_contraction(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("theorem1_contraction", seed);
    let mut rng = seeded_rng(seed);
    let mut actions = vec![
        (
            "s1_rotation".to_string(),
            shipped_box("s1_rotation"),
            Point::from([1.0, 0.0]),
        ),
        (
            "s2_periodic".to_string(),
            shipped_box("s2_periodic"),
            Point::from([2.0, 0.0, -1.0]),
        ),
    ];
    for i in 0..scaled(samples, 100) {
        let (act, _) = random::isometry_action(&mut rng, MAX_DIM, MAX_GROUP);
        let x = act.model().sample(&mut rng);
        actions.push((format!("isometry group {i}"), act, x));
    }
    for (name, act, x) in &actions {
        t.case();
        let cfg = IterationConfig::new(x.clone(), Mode::Theorem1).with_seed(seed);
        match fixpoint::iterate_theorem1(act, &cfg) {
            Ok(trace) => {
                let bound = trace.ratio_bound + tolerance::AUDIT;
                for r in trace.ratios() {
                    t.check(r, bound, || format!("{name}: ratio {r} > {bound}"));
                }
                t.require(trace.outcome == Outcome::Converged, || {
                    format!("{name}: outcome {}", trace.outcome)
                });
                t.check(trace.final_residual(), 1e-8, || {
                    format!("{name}: residual {}", trace.final_residual())
                });
                t.require(trace.audit_failures.is_empty(), || {
                    format!("{name}: {:?}", trace.audit_failures)
                });
                t.require(trace.limit_audit == Some(true), || {
                    format!("{name}: limit audit failed")
                });
            }
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
    t.finish()
}

fn theorem2_contraction(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("theorem2_contraction", seed);
    let mut rng = seeded_rng(seed);
    for i in 0..scaled(samples, 100) {
        let (act, _) = random::isometry_action(&mut rng, MAX_DIM, MAX_GROUP);
        let x = act.model().sample(&mut rng);
        let cfg = IterationConfig::new(x, Mode::Theorem2).with_lambda(1.2).with_seed(seed);
        t.case();
        match fixpoint::iterate_theorem2(&act, &cfg) {
            Ok(trace) => {
                let bound = trace.ratio_bound + tolerance::AUDIT;
                for r in trace.ratios() {
                    t.check(r, bound, || format!("group {i}: ratio {r} > {bound}"));
                }
                t.require(
                    trace.outcome == Outcome::Converged && trace.audit_failures.is_empty(),
                    || format!("group {i}: {} {:?}", trace.outcome, trace.audit_failures),
                );
            }
            Err(e) => t.fail(format!("group {i}: {e}")),
        }
    }
    t.finish()
}

fn theorem2_reduction(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("theorem2_reduction", seed);
    let mut rng = seeded_rng(seed);
    let actions = audit_actions(&mut rng, scaled(samples, 200));
    for (name, act) in &actions {
        let x = act.model().sample(&mut rng);
        t.case();
        let a = fixpoint::iterate_theorem1(act, &IterationConfig::new(x.clone(), Mode::Theorem1).with_seed(seed));
        let b = fixpoint::iterate_theorem2(act, &IterationConfig::new(x, Mode::Theorem2).with_seed(seed));
        match (a, b) {
            (Ok(a), Ok(b)) => t.require(a.steps == b.steps, || {
                format!("{name}: theorem2 with λ = 1 differs from theorem1")
            }),
            (a, b) => t.fail(format!("{name}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    t.finish()
}

fn theorem3_involution(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("theorem3_involution", seed);
    let mut rng = seeded_rng(seed);
    let space = BoxSpace::cube(1, 0.0, 1.0).expect("unit interval");
    let mut cases = vec![(0.4, 0.0)];
    for _ in 0..scaled(samples, 100) {
        cases.push((rng.random_range(0.35..=0.65), rng.random_range(0.0..=1.0)));
    }
    for (c, x1) in cases {
        t.case();
        let cfg = IterationConfig::new(Point::from([x1]), Mode::Theorem3).with_seed(seed);
        match fixpoint::iterate_involution(&space, &involution(c), &cfg) {
            Ok(trace) => {
                let bound = trace.ratio_bound + tolerance::AUDIT;
                for r in trace.ratios() {
                    t.check(r, bound, || format!("c = {c}, x1 = {x1}: ratio {r} > {bound}"));
                }
                let end = trace.final_point.coords()[0];
                t.check((end - c).abs(), 1e-8, || format!("c = {c}, x1 = {x1}: limit {end}"));
                t.require(trace.outcome == Outcome::Converged, || {
                    format!("c = {c}: outcome {}", trace.outcome)
                });
            }
            Err(e) => t.fail(format!("c = {c}: {e}")),
        }
    }
    t.finish()
}

fn circle_negative_runs(seed: u64, _samples: usize) -> SuiteResult {
    let mut t = Tally::new("circle_negative_runs", seed);
    for (name, floor) in [("s6a_circle_rotation", 1.0), ("s6b_antipodal", PI - 1e-9)] {
        t.case();
        let cfg = catalog::load(name).expect("shipped config");
        let act = circle_action(&cfg).expect("shipped action");
        let icfg = IterationConfig::new(
            cfg.circle_start().expect("valid start"),
            cfg.iteration.mode.iteration_mode().expect("iterative"),
        )
        .with_lambda(cfg.iteration.lambda)
        .with_seed(seed);
        match fixpoint::iterate(&act, &icfg) {
            Ok(trace) => {
                t.require(trace.outcome == Outcome::HypothesisViolated, || {
                    format!("{name}: outcome {}", trace.outcome)
                });
                let min_res = trace.steps.iter().map(|s| s.residual).fold(f64::INFINITY, f64::min);
                t.check(floor, min_res, || format!("{name}: residual dropped to {min_res}"));
                t.note(format!(
                    "{name}: {} after {} steps, minimum residual {}",
                    trace.outcome,
                    trace.steps.len(),
                    sig17(min_res)
                ));
            }
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
    t.finish()
}

fn chain_check(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("chain_check", seed);
    let mut rng = seeded_rng(seed);
    let mut actions = audit_actions(&mut rng, 6);
    actions.retain(|(name, _)| name != "s3_involution");
    let per_action = scaled(scaled(samples, 10), actions.len());
    for (name, act) in &actions {
        let l = act.lipschitz(200, seed).value;
        let space = act.model();
        let pairs: Vec<(Point, Point)> = (0..per_action)
            .map(|i| {
                let x = space.sample(&mut rng);
                let y = if i % 2 == 0 {
                    space.sample(&mut rng)
                } else {
                    space.sample_at_distance(&x, 10f64.powi(-rng.random_range(0..4)), &mut rng)
                };
                (x, y)
            })
            .collect();
        match retraction::chain_check(act, &pairs, l) {
            Ok(report) => {
                t.result.cases += report.pairs;
                for v in &report.violations {
                    t.fail(format!("{name}: {v}"));
                }
                t.check(report.orbit_constant, l + tolerance::AUDIT, || {
                    format!("{name}: orbit constant")
                });
                t.check(report.center_constant, 2.0 * l + tolerance::AUDIT, || {
                    format!("{name}: center constant")
                });
                t.check(report.double_center_constant, 4.0 * l + tolerance::AUDIT, || {
                    format!("{name}: double center constant")
                });
                t.note(format!(
                    "{name}: L = {}, observed constants {} {} {} selection {}",
                    sig17(l),
                    sig17(report.orbit_constant),
                    sig17(report.center_constant),
                    sig17(report.double_center_constant),
                    sig17(report.selection_constant)
                ));
            }
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
    t.finish()
}

fn retraction_laws(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("retraction_laws", seed);
    let points = scaled(samples, 100);
    for (name, act, fixed) in [
        ("s1_rotation", shipped_box("s1_rotation"), vec![Point::from([0.0, 0.0])]),
        (
            "s2_periodic",
            shipped_box("s2_periodic"),
            vec![Point::from([0.5, -1.0, 2.5])],
        ),
        (
            "swap3",
            swap3(),
            vec![Point::from([1.0, 1.0, -2.0]), Point::from([-0.5, -0.5, 4.0])],
        ),
    ] {
        t.case();
        match retraction::retraction_report(&act, points, points, &fixed, seed) {
            Ok(r) => {
                t.check(r.laws.idempotence, retraction::LAW_TOL, || format!("{name}: R∘R ≠ R"));
                t.check(r.laws.invariance, retraction::LAW_TOL, || format!("{name}: T_a∘R ≠ R"));
                t.check(r.laws.identity_on_fix, retraction::LAW_TOL, || {
                    format!("{name}: R ≠ id on Fix")
                });
                t.require(r.contraction_failures == 0, || {
                    format!("{name}: {} contraction failures", r.contraction_failures)
                });
                t.require(r.chain.passed(), || format!("{name}: chain {:?}", r.chain.violations));
                t.require(r.holder.passed(), || {
                    format!("{name}: Hölder ratios {:?}", r.holder.decades)
                });
                let ratios: Vec<String> = r.holder.decades.iter().map(|d| sig17(d.max_ratio)).collect();
                t.note(format!(
                    "{name}: α = {}, per-decade max ratios [{}]",
                    sig17(r.holder.alpha),
                    ratios.join(", ")
                ));
            }
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
    t.finish()
}

fn word_ball_growth(seed: u64, _samples: usize) -> SuiteResult {
    let mut t = Tally::new("word_ball_growth", seed);
    let cfg = catalog::load("s5_word_ball").expect("shipped config");
    let gens = super::scenario::box_maps(&cfg).expect("shipped maps");
    let space = cfg.box_space().expect("box space");
    let x = cfg.box_start().expect("start point");
    match word_ball_orbit(&space, &gens, 16, &x, cfg.group.word_cap.expect("normalized")) {
        Ok(wb) => {
            for k in 1..=8 {
                t.case();
                let d = wb.diameters[2 * k];
                t.check(k as f64, d, || format!("diameter at length {} is {d} < {k}", 2 * k));
            }
        }
        Err(e) => t.fail(e.to_string()),
    }
    t.finish()
}

/// `f_a` applied in every coordinate of `[-1, 1]^d`.
pub fn fa_map(a: f64, d: usize) -> BoxMap {
    let f = PiecewiseLinear::new(vec![(-1.0, -1.0), (0.0, a), (1.0, 1.0)]).expect("valid knots");
    BoxMap::coordinatewise(vec![f; d]).expect("nonempty")
}

fn fixed_set_fa(seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new("fixed_set_fa", seed);
    let d = 4;
    let domain = Cuboid::cube(d, -1.0, 1.0).expect("valid cube");
    for a in [0.1, 0.25, 0.5] {
        t.case();
        match fixed_set_analysis(&fa_map(a, d), &domain, &[0.0, 1.0], scaled(samples, 2), seed) {
            Ok(r) => {
                t.check(
                    (r.lipschitz_exact - (1.0 + a)).abs(),
                    tolerance::DECLARED_LIPSCHITZ,
                    || format!("a = {a}: exact L = {}", r.lipschitz_exact),
                );
                t.check(
                    (r.lipschitz_sampled - (1.0 + a)).abs(),
                    tolerance::DECLARED_LIPSCHITZ,
                    || format!("a = {a}: sampled L = {}", r.lipschitz_sampled),
                );
                t.require(r.count == 1 << d && r.verified, || {
                    format!("a = {a}: {} fixed points", r.count)
                });
                t.require(r.min_distance == Some(2.0), || {
                    format!("a = {a}: min distance {:?}", r.min_distance)
                });
                let mut note = String::new();
                write!(
                    note,
                    "a = {a}: {} fixed points, min distance {}",
                    r.count,
                    r.min_distance.map_or("none".into(), sig17)
                )
                .expect("string write");
                for n in &r.notes {
                    write!(note, "; {n}").expect("string write");
                }
                t.note(note);
            }
            Err(e) => t.fail(format!("a = {a}: {e}")),
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_scale() {
        for r in verify_all(DEFAULT_SEED, 300) {
            assert!(r.passed(), "{}: {:?}", r.name, r.violations);
            assert!(r.cases > 0, "{}", r.name);
        }
    }

    #[test]
    fn results_are_deterministic() {
        let a = report(&verify_all(9, 200));
        let b = report(&verify_all(9, 200));
        assert_eq!(a, b);
    }

    #[test]
    fn counterexample_values() {
        let (dkl, dc, bound) = circle_counterexample(0.1);
        assert!((dkl - 0.1).abs() < 1e-9);
        assert!((dc - (PI - 0.05)).abs() < 1e-9);
        assert!((bound - 0.15).abs() < 1e-9);
    }
}
