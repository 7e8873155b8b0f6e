//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperfix::box_space::{self, Cuboid, Point, PointSet};
use hyperfix::fixpoint::{self, IterationConfig, Mode, Outcome};
use hyperfix::group_action::{word_ball_orbit, Action, BoxMap, PiecewiseLinear};
use hyperfix::harness::scenario::{box_action, box_maps, circle_action, fixed_set_analysis};
use hyperfix::harness::{catalog, random, suites};
use hyperfix::model::{seeded_rng, BoxSpace, MetricModel};
use hyperfix::retraction;
use rand::Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn sharpness() -> Verdict {
    let start = Instant::now();
    let k = PointSet::new(vec![Point::from([0.0, 0.0])]).unwrap();
    let l = PointSet::new(vec![Point::from([-1.0, 1.0]), Point::from([1.0, 1.0])]).unwrap();
    let dkl = box_space::set_hausdorff(&k, &l).unwrap();
    let dc = box_space::box_hausdorff(&box_space::chebyshev(&k).1, &box_space::chebyshev(&l).1).unwrap();
    let elapsed = start.elapsed();
    ensure((dkl - 1.0).abs() <= 1e-12, || format!("D(K, L) = {dkl}"))?;
    ensure((dc - 2.0).abs() <= 1e-12, || format!("D(C(K), C(L)) = {dc}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("D(K,L) = {dkl}, D(C(K),C(L)) = {dc}, {elapsed:?}"))
}

fn circle_counterexample() -> Verdict {
    let start = Instant::now();
    let (dkl, dc, bound) = suites::circle_counterexample(0.1);
    let elapsed = start.elapsed();
    ensure((dkl - 0.1).abs() <= 1e-9, || format!("D(K, L) = {dkl}"))?;
    ensure((dc - (PI - 0.05)).abs() <= 1e-9, || format!("D(C(K), C(L)) = {dc}"))?;
    ensure(dc > bound, || format!("center bound {bound} not violated by {dc}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!(
        "D(K,L) = {dkl:.12}, D(C,C) = {dc:.12} > bound {bound:.12}, {elapsed:?}"
    ))
}

fn theorem1() -> Verdict {
    let start = Instant::now();
    let mut cases: Vec<(String, Action<BoxSpace>, Point)> = vec![
        (
            "s1".into(),
            box_action(&catalog::load("s1_rotation").unwrap()).unwrap(),
            Point::from([1.0, 0.0]),
        ),
        (
            "s2".into(),
            box_action(&catalog::load("s2_periodic").unwrap()).unwrap(),
            Point::from([2.0, 0.0, -1.0]),
        ),
    ];
    let mut rng = seeded_rng(31);
    for i in 0..100 {
        let (act, _) = random::isometry_action(&mut rng, 6, 48);
        let x = act.model().sample(&mut rng);
        cases.push((format!("random group {i}"), act, x));
    }
    let mut worst: f64 = 0.0;
    for (name, act, x) in &cases {
        let trace = fixpoint::iterate_theorem1(act, &IterationConfig::new(x.clone(), Mode::Theorem1))
            .map_err(|e| format!("{name}: {e}"))?;
        let bound = trace.lipschitz.value * trace.lipschitz.value / 2.0;
        for r in trace.ratios() {
            ensure(r <= bound + 1e-9, || format!("{name}: ratio {r} > {bound}"))?;
            worst = worst.max(r / bound);
        }
        ensure(trace.final_residual() <= 1e-8, || {
            format!("{name}: residual {}", trace.final_residual())
        })?;
        ensure(trace.outcome == Outcome::Converged, || {
            format!("{name}: {}", trace.outcome)
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "{} actions, max ratio / (L²/2) = {worst:.6}, {elapsed:?}",
        cases.len()
    ))
}

fn involution() -> Verdict {
    let t = BoxMap::coordinatewise(vec![
        PiecewiseLinear::new(vec![(0.0, 1.0), (0.4, 0.4), (1.0, 0.0)]).unwrap()
    ])
    .unwrap();
    let space = BoxSpace::cube(1, 0.0, 1.0).unwrap();
    let trace = fixpoint::iterate_involution(&space, &t, &IterationConfig::new(Point::from([0.0]), Mode::Theorem3))
        .map_err(|e| e.to_string())?;
    let xs: Vec<f64> = trace.iterates().map(|p| p.coords()[0]).collect();
    ensure((trace.lipschitz.value - 1.5).abs() <= 1e-12, || {
        format!("L = {}", trace.lipschitz.value)
    })?;
    ensure((xs[1] - 0.5).abs() <= 1e-12, || format!("x2 = {}", xs[1]))?;
    ensure((xs[2] - 5.0 / 12.0).abs() <= 1e-12, || format!("x3 = {}", xs[2]))?;
    let end = trace.final_point.coords()[0];
    ensure((end - 0.4).abs() <= 1e-8, || format!("limit {end}"))?;
    let max = trace.max_ratio().unwrap_or(0.0);
    ensure(max <= 0.75 + 1e-9, || format!("ratio {max}"))?;
    Ok(format!(
        "x2 = {}, x3 = {}, limit {end}, max ratio {max:.6}",
        xs[1], xs[2]
    ))
}

fn lemma_suites() -> Verdict {
    let start = Instant::now();
    let mut parts = Vec::new();
    for name in ["lemma_radius", "lemma_center", "corollary_est"] {
        let r = suites::run_suite(name, suites::DEFAULT_SEED, 10_000).unwrap();
        ensure(r.cases >= 10_000, || format!("{name}: {} cases", r.cases))?;
        ensure(r.passed(), || format!("{name}: {:?}", r.violations))?;
        parts.push(format!("{name} {} cases slack {:.3e}", r.cases, r.max_slack));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{}, {elapsed:?}", parts.join("; ")))
}

fn oracles() -> Verdict {
    let h = common::H;
    let mut rng = common::rng(61);
    let mut worst_h: f64 = 0.0;
    for _ in 0..1000 {
        let d = rng.random_range(1..=6);
        let a = common::random_cuboid(&mut rng, d, 1.0, 0.5);
        let b = common::random_cuboid(&mut rng, d, 1.0, 0.5);
        let err = (box_space::box_hausdorff(&a, &b).unwrap() - common::box_hausdorff_grid(&a, &b, h)).abs();
        ensure(err <= 2.0 * h, || format!("Hausdorff {a} {b}: error {err}"))?;
        worst_h = worst_h.max(err);
    }
    let mut worst_c: f64 = 0.0;
    for _ in 0..100 {
        let d = rng.random_range(1..=6);
        let k = common::random_set(&mut rng, d, 8, 1.0);
        let (r, center): (f64, Cuboid) = box_space::chebyshev(&k);
        let (rg, hulls) = common::chebyshev_grid(&k, h);
        let mut err = (r - rg).abs();
        for (i, (lo, hi)) in hulls.iter().enumerate() {
            err = err.max((center.lo()[i] - lo).abs()).max((center.hi()[i] - hi).abs());
        }
        ensure(err <= 2.0 * h, || format!("Chebyshev: error {err}"))?;
        worst_c = worst_c.max(err);
    }
    Ok(format!(
        "Hausdorff max error {worst_h:.2e} (1000 cases), Chebyshev max error {worst_c:.2e} (100 cases), 2h = {}",
        2.0 * h
    ))
}

fn fa_scenario() -> Verdict {
    let mut parts = Vec::new();
    let domain = Cuboid::cube(4, -1.0, 1.0).unwrap();
    for a in [0.1, 0.25, 0.5] {
        let r = fixed_set_analysis(&suites::fa_map(a, 4), &domain, &[0.0, 1.0], 4000, 7).map_err(|e| e.to_string())?;
        ensure((r.lipschitz_sampled - (1.0 + a)).abs() <= 1e-6, || {
            format!("a = {a}: sampled {}", r.lipschitz_sampled)
        })?;
        ensure((r.lipschitz_exact - (1.0 + a)).abs() <= 1e-6, || {
            format!("a = {a}: exact {}", r.lipschitz_exact)
        })?;
        ensure(r.min_distance == Some(2.0), || {
            format!("a = {a}: min distance {:?}", r.min_distance)
        })?;
        ensure(!r.notes.is_empty(), || format!("a = {a}: no discrepancy note"))?;
        parts.push(format!("a = {a}: L = {:.9}, {} points", r.lipschitz_sampled, r.count));
    }
    Ok(format!(
        "{}; min distance 2; discrepancy note emitted",
        parts.join(", ")
    ))
}

fn negatives() -> Verdict {
    let mut parts = Vec::new();
    for (name, floor) in [("s6a_circle_rotation", 1.0), ("s6b_antipodal", PI - 1e-9)] {
        let cfg = catalog::load(name).unwrap();
        let act = circle_action(&cfg).map_err(|e| e.to_string())?;
        let icfg = IterationConfig::new(
            cfg.circle_start().unwrap(),
            cfg.iteration.mode.iteration_mode().unwrap(),
        )
        .with_lambda(cfg.iteration.lambda);
        let trace = fixpoint::iterate(&act, &icfg).map_err(|e| e.to_string())?;
        ensure(trace.outcome == Outcome::HypothesisViolated, || {
            format!("{name}: {}", trace.outcome)
        })?;
        let min = trace.steps.iter().map(|s| s.residual).fold(f64::INFINITY, f64::min);
        ensure(min >= floor, || format!("{name}: residual {min} < {floor}"))?;
        parts.push(format!("{name}: {} min residual {min:.12}", trace.outcome));
    }
    Ok(parts.join("; "))
}

fn word_balls() -> Verdict {
    let start = Instant::now();
    let cfg = catalog::load("s5_word_ball").unwrap();
    let gens = box_maps(&cfg).map_err(|e| e.to_string())?;
    let wb = word_ball_orbit(
        &cfg.box_space().unwrap(),
        &gens,
        16,
        &cfg.box_start().unwrap(),
        cfg.group.word_cap.unwrap(),
    )
    .map_err(|e| e.to_string())?;
    for k in 1..=8 {
        ensure(wb.diameters[2 * k] >= k as f64, || {
            format!("length {}: diameter {}", 2 * k, wb.diameters[2 * k])
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "diameter at length 16 = {}, {} evaluations, {elapsed:?}",
        wb.diameters[16], wb.evaluations
    ))
}

fn retraction_laws() -> Verdict {
    let mut parts = Vec::new();
    for (name, fixed) in [
        ("s1_rotation", vec![Point::from([0.0, 0.0])]),
        ("s2_periodic", vec![Point::from([0.5, -1.0, 2.5])]),
    ] {
        let act = box_action(&catalog::load(name).unwrap()).unwrap();
        let r = retraction::retraction_report(&act, 100, 100, &fixed, 17).map_err(|e| e.to_string())?;
        let l = r.chain.lipschitz;
        ensure(r.laws.idempotence <= 1e-8, || {
            format!("{name}: R∘R deviation {}", r.laws.idempotence)
        })?;
        ensure(r.laws.invariance <= 1e-8, || {
            format!("{name}: T_a∘R deviation {}", r.laws.invariance)
        })?;
        ensure(r.laws.identity_on_fix <= 1e-8, || {
            format!("{name}: R on Fix deviation {}", r.laws.identity_on_fix)
        })?;
        ensure(r.chain.orbit_constant <= l + 1e-9, || {
            format!("{name}: orbit constant {}", r.chain.orbit_constant)
        })?;
        ensure(r.chain.center_constant <= 2.0 * l + 1e-9, || {
            format!("{name}: center constant {}", r.chain.center_constant)
        })?;
        ensure(r.chain.double_center_constant <= 4.0 * l + 1e-9, || {
            format!("{name}: double center constant {}", r.chain.double_center_constant)
        })?;
        ensure(r.holder.decades.len() == 4, || {
            format!("{name}: {} decades", r.holder.decades.len())
        })?;
        let first = r.holder.decades[0].max_ratio;
        for d in &r.holder.decades {
            ensure(d.max_ratio <= 2.0 * first, || {
                format!("{name}: decade {} ratio {} > 2·{first}", d.scale, d.max_ratio)
            })?;
        }
        let ratios: Vec<String> = r
            .holder
            .decades
            .iter()
            .map(|d| format!("{:.3e}", d.max_ratio))
            .collect();
        parts.push(format!(
            "{name}: α = {:.4}, decade ratios [{}]",
            r.holder.alpha,
            ratios.join(", ")
        ));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sharpness example", sharpness),
        ("circle counterexample", circle_counterexample),
        ("theorem1 contraction audit", theorem1),
        ("theorem3 involution", involution),
        ("lemma suites", lemma_suites),
        ("oracle equivalence", oracles),
        ("f_a scenario", fa_scenario),
        ("negative circle runs", negatives),
        ("unbounded orbit evidence", word_balls),
        ("retraction laws", retraction_laws),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("PASS [{}] {name}: {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL [{}] {name}: panicked", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
