use std::f64::consts::PI;

use hyperfix::box_space::{self, Cuboid, Point, PointSet};
use hyperfix::circle_space::{self, CirclePoint};
use hyperfix::fixpoint::{self, IterationConfig, Mode, Outcome};
use hyperfix::group_action::{BoxMap, Map, PiecewiseLinear};
use hyperfix::harness::{catalog, parse_config, random};
use hyperfix::model::{seeded_rng, BoxSpace, MetricModel};
use hyperfix::report::sig17;
use proptest::prelude::*;

const SLACK: f64 = 1e-9;

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-5.0..5.0f64, dim).prop_map(|c| Point::new(c).unwrap())
}

fn point_set(dim: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(point(dim), 1..8).prop_map(|p| PointSet::new(p).unwrap())
}

fn cuboid(dim: usize) -> impl Strategy<Value = Cuboid> {
    (point(dim), point(dim)).prop_map(|(a, b)| {
        let lo: Vec<f64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x.min(*y)).collect();
        let hi: Vec<f64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x.max(*y)).collect();
        Cuboid::new(Point::new(lo).unwrap(), Point::new(hi).unwrap()).unwrap()
    })
}

fn set_pair() -> impl Strategy<Value = (PointSet, PointSet)> {
    (1..=6usize).prop_flat_map(|d| (point_set(d), point_set(d)))
}

fn circle_points() -> impl Strategy<Value = Vec<CirclePoint>> {
    prop::collection::vec((0.0..std::f64::consts::TAU).prop_map(CirclePoint::new), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn box_metric_axioms(d in 1..=6usize, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let [x, y, z] = [0, 1, 2].map(|_| random::point(&mut rng, d, 5.0));
        prop_assert_eq!(x.dist(&x), 0.0);
        prop_assert_eq!(x.dist(&y), y.dist(&x));
        prop_assert!(x.dist(&z) <= x.dist(&y) + y.dist(&z) + 1e-12);
    }

    #[test]
    fn pairwise_meeting_balls_have_common_point(
        centers in (1..=6usize).prop_flat_map(|d| prop::collection::vec(point(d), 1..8)),
        extra in prop::collection::vec(0.0..2.0f64, 8),
    ) {
        let n = centers.len();
        // Radii r_a = extra_a + max_b d(c_a, c_b) / 2 meet pairwise.
        let radii: Vec<f64> = (0..n)
            .map(|a| extra[a] + centers.iter().map(|c| centers[a].dist(c)).fold(0.0, f64::max) / 2.0)
            .collect();
        let balls: Vec<Cuboid> = centers.iter().zip(&radii).map(|(c, r)| box_space::ball(c, *r).unwrap()).collect();
        let meet = box_space::intersect(&balls).unwrap();
        prop_assert!(meet.is_some());
        let p = box_space::midpoint(meet.as_ref().unwrap());
        for (c, r) in centers.iter().zip(&radii) {
            prop_assert!(p.dist(c) <= r + 1e-12);
        }
    }

    #[test]
    fn lemma_radius((k, l) in set_pair()) {
        let dkl = box_space::set_hausdorff(&k, &l).unwrap();
        let (rk, _) = box_space::chebyshev(&k);
        let (rl, _) = box_space::chebyshev(&l);
        prop_assert!((rk - rl).abs() <= dkl + SLACK);
    }

    #[test]
    fn lemma_center_and_corollary((k, l) in set_pair()) {
        let dkl = box_space::set_hausdorff(&k, &l).unwrap();
        let (rk, ck) = box_space::chebyshev(&k);
        let (rl, cl) = box_space::chebyshev(&l);
        let dc = box_space::box_hausdorff(&ck, &cl).unwrap();
        prop_assert!(dc <= dkl + (rk - rl).abs() + SLACK);
        prop_assert!(dc <= 2.0 * dkl + SLACK);
    }

    #[test]
    fn chebyshev_center_points_attain_radius(k in (1..=6usize).prop_flat_map(point_set)) {
        let (r, c) = box_space::chebyshev(&k);
        let m = box_space::midpoint(&c);
        let sup = k.points().iter().map(|p| p.dist(&m)).fold(0.0, f64::max);
        prop_assert!((sup - r).abs() <= 1e-12);
        prop_assert!((2.0 * r - k.diameter()).abs() <= 1e-12);
    }

    #[test]
    fn midpoint_is_nonexpansive((a, b) in (1..=6usize).prop_flat_map(|d| (cuboid(d), cuboid(d)))) {
        let h = box_space::box_hausdorff(&a, &b).unwrap();
        prop_assert!(box_space::midpoint(&a).dist(&box_space::midpoint(&b)) <= h + 1e-12);
    }

    #[test]
    fn shrink_hull_stays_within_radius(c in (1..=6usize).prop_flat_map(cuboid), r in 0.0..10.0f64) {
        match box_space::shrink_hull(&c, r) {
            Some(h) => {
                let m = box_space::midpoint(&h);
                prop_assert!(c.farthest_from(&m) <= r + 1e-12);
                prop_assert!(box_space::midpoint(&c).dist(&m) <= 1e-12 + r);
            }
            None => prop_assert!(c.diameter() > 2.0 * r),
        }
    }

    #[test]
    fn circle_radius_sandwich(k in circle_points()) {
        let (r, center) = circle_space::circle_chebyshev(&k).unwrap();
        let delta = k.iter().flat_map(|a| k.iter().map(move |b| a.dist(*b))).fold(0.0, f64::max);
        prop_assert!(delta / 2.0 <= r + 1e-12);
        prop_assert!(r <= delta + 1e-12);
        prop_assert!(!center.is_empty());
        for e in center.endpoints() {
            prop_assert!((circle_space::relative_radius(e, &k) - r).abs() <= 1e-9);
        }
    }

    #[test]
    fn circle_within_all_is_subset(k in circle_points(), rho in 0.0..PI, sigma in 0.0..PI) {
        let balls: Vec<_> = k.iter().map(|p| circle_space::circle_ball(*p, rho).unwrap()).collect();
        let a = circle_space::arcset_intersect(&balls);
        let aa = circle_space::within_radius_of_all(&a, sigma);
        for e in aa.endpoints() {
            prop_assert!(a.contains(e, 1e-9));
            prop_assert!(a.farthest_from(e) <= sigma + 1e-9);
        }
    }

    #[test]
    fn isometry_groups_contract_at_half(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let (act, p) = random::isometry_action(&mut rng, 6, 48);
        prop_assert!(act.verify(50, seed).passed());
        let x = act.model().sample(&mut rng);
        let trace = fixpoint::iterate_theorem1(&act, &IterationConfig::new(x.clone(), Mode::Theorem1)).unwrap();
        prop_assert_eq!(trace.outcome, Outcome::Converged);
        for r in trace.ratios() {
            prop_assert!(r <= 0.5 + SLACK);
        }
        prop_assert!(act.residual(&trace.final_point) <= 1e-8);
        let y = act.model().sample(&mut rng);
        let dg = act.d_g(&x, &y);
        prop_assert!(x.dist(&y) <= dg + SLACK && dg <= x.dist(&y) + SLACK);
        prop_assert!(act.residual(&p) <= 1e-12);
    }

    #[test]
    fn involutions_converge_to_the_kink(c in 0.35..0.65f64, x1 in 0.0..=1.0f64) {
        let t = BoxMap::coordinatewise(vec![PiecewiseLinear::new(vec![(0.0, 1.0), (c, c), (1.0, 0.0)]).unwrap()]).unwrap();
        let space = BoxSpace::cube(1, 0.0, 1.0).unwrap();
        let trace = fixpoint::iterate_involution(&space, &t, &IterationConfig::new(Point::from([x1]), Mode::Theorem3)).unwrap();
        prop_assert_eq!(trace.outcome, Outcome::Converged);
        prop_assert!((trace.final_point.coords()[0] - c).abs() <= 1e-8);
        for r in trace.ratios() {
            prop_assert!(r <= trace.ratio_bound + SLACK);
        }
    }

    #[test]
    fn pwl_fixed_points_and_inverse(ys in prop::collection::vec(-3.0..3.0f64, 2..6)) {
        let n = ys.len();
        let knots: Vec<(f64, f64)> = ys.iter().enumerate().map(|(i, y)| (i as f64 / (n - 1) as f64, *y)).collect();
        let f = PiecewiseLinear::new(knots).unwrap();
        for t in f.fixed_points(0.0, 1.0) {
            prop_assert!((f.eval(t) - t).abs() <= 1e-9);
        }
        let mut sorted = ys.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        if sorted.len() == n {
            let g = PiecewiseLinear::new(sorted.iter().enumerate().map(|(i, y)| (i as f64, *y)).collect()).unwrap();
            let inv = g.inverse().unwrap();
            for i in 0..n {
                prop_assert!((inv.eval(g.eval(i as f64 + 0.25)) - (i as f64 + 0.25)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn box_map_bound_dominates_sampled_ratio(
        rows in prop::collection::vec(prop::collection::vec(-2.0..2.0f64, 3), 3),
        x in point(3),
        y in point(3),
    ) {
        let m = BoxMap::affine(rows, vec![0.5, -0.5, 1.0]).unwrap();
        let bound = m.lipschitz_bound().unwrap().value;
        prop_assert!(m.apply(&x).dist(&m.apply(&y)) <= bound * x.dist(&y) + 1e-9);
    }

    #[test]
    fn sig17_round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        let s = sig17(v);
        prop_assert_eq!(s.parse::<f64>().unwrap(), v, "{}", s);
    }

    #[test]
    fn config_edits_round_trip(seed in any::<u64>(), samples in 1..100_000usize, tol in 1e-14..1e-2f64, max_iter in 1..10_000usize) {
        for name in catalog::names() {
            let mut cfg = catalog::load(name).unwrap();
            cfg.sampling.seed = seed;
            cfg.sampling.samples = samples;
            cfg.iteration.tol = tol;
            cfg.iteration.max_iter = max_iter;
            prop_assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
        }
    }
}
