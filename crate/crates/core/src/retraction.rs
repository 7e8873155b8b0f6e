//! The selection `f(x) = midpoint(CC(x))` on boxes, the retraction
//! `R = lim fⁿ` onto the common fixed-point set, and audits of its laws and
//! of its Hölder continuity.

use std::f64::consts::SQRT_2;
use std::fmt::Write as _;

use crate::box_space::{self, Point, PointSet};
use crate::error::{Error, Result};
use crate::fixpoint::{center_c, center_cc};
use crate::group_action::Action;
use crate::model::{seeded_rng, BoxSpace, MetricModel};
use crate::report::sig17;
use crate::tolerance;

/// Termination tolerance on `δ(fⁿ x)` used by the audits.
pub const RETRACT_TOL: f64 = 1e-12;
pub const RETRACT_MAX_ITER: usize = 500;
/// Distance scales probed by the Hölder audit.
pub const DECADES: [f64; 4] = [1.0, 1e-1, 1e-2, 1e-3];
/// Allowed deviation in the retraction laws.
pub const LAW_TOL: f64 = 1e-8;

/// `f(x) = midpoint(CC(x))`.
pub fn selection_f(act: &Action<BoxSpace>, x: &Point) -> Result<Point> {
    center_cc(act, x)?
        .as_ref()
        .map(box_space::midpoint)
        .ok_or(Error::EmptyCenter { step: 0 })
}

/// Result of iterating `f` from one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Retracted {
    pub point: Point,
    /// Number of `f` evaluations.
    pub iterations: usize,
    /// `δ(fⁿ x)` for `n = 0, 1, …`.
    pub deltas: Vec<f64>,
}

impl Retracted {
    /// Steps violating `δ(f^{n+1} x) ≤ (L²/2)·δ(fⁿ x) + 1e-9`.
    pub fn contraction_failures(&self, lipschitz: f64) -> usize {
        let bound = lipschitz * lipschitz / 2.0;
        self.deltas
            .windows(2)
            .filter(|w| w[1] > bound * w[0] + tolerance::AUDIT)
            .count()
    }
}

/// Iterates `f` until the orbit diameter drops to `tol`.
pub fn retract(act: &Action<BoxSpace>, x: &Point, tol: f64, max_iter: usize) -> Result<Retracted> {
    let mut p = x.clone();
    let mut deltas = vec![act.orbit_stats(&p).delta];
    let mut iterations = 0;
    while deltas[iterations] > tol {
        if iterations == max_iter {
            return Err(Error::MaxIter {
                max_iter,
                delta: deltas[iterations],
            });
        }
        p = selection_f(act, &p).map_err(|e| match e {
            Error::EmptyCenter { .. } => Error::EmptyCenter { step: iterations + 1 },
            other => other,
        })?;
        iterations += 1;
        deltas.push(act.orbit_stats(&p).delta);
    }
    Ok(Retracted {
        point: p,
        iterations,
        deltas,
    })
}

/// Hölder exponent `ln(2/L²) / ln(8/L)` of the retraction, valid for
/// `1 ≤ L < √2`.
pub fn holder_alpha(lipschitz: f64) -> Result<f64> {
    if !(1.0..SQRT_2).contains(&lipschitz) {
        return Err(Error::OutOfRange {
            name: "L",
            value: lipschitz,
            range: "1 <= L < sqrt(2)",
        });
    }
    Ok((2.0 / (lipschitz * lipschitz)).ln() / (8.0 / lipschitz).ln())
}

/// Hausdorff distances along the chain orbit → center → double center, and
/// the selection, over sampled pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChainReport {
    pub pairs: usize,
    pub lipschitz: f64,
    /// Largest observed `D(O(x), O(y)) / d(x, y)`.
    pub orbit_constant: f64,
    /// Largest observed `D(C(x), C(y)) / d(x, y)`.
    pub center_constant: f64,
    /// Largest observed `D(CC(x), CC(y)) / d(x, y)`.
    pub double_center_constant: f64,
    /// Largest observed `d(f(x), f(y)) / d(x, y)`.
    pub selection_constant: f64,
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn orbit_set(act: &Action<BoxSpace>, x: &Point) -> PointSet {
    PointSet::new(act.orbit_points(x)).expect("orbits are nonempty")
}

/// Checks `D(O) ≤ L·d`, `D(C) ≤ 2L·d`, `D(CC) ≤ 4L·d` and
/// `d(f x, f y) ≤ min(4L·d, D(CC))` for each pair.
pub fn chain_check(act: &Action<BoxSpace>, pairs: &[(Point, Point)], lipschitz: f64) -> Result<ChainReport> {
    let space = act.model();
    let mut report = ChainReport {
        pairs: pairs.len(),
        lipschitz,
        ..Default::default()
    };
    let slack = tolerance::AUDIT;
    for (i, (x, y)) in pairs.iter().enumerate() {
        let d = x.dist(y);
        let d_orbit = box_space::set_hausdorff(&orbit_set(act, x), &orbit_set(act, y))?;
        let d_center = space.set_hausdorff(&center_c(act, x)?, &center_c(act, y)?)?;
        let ccx = center_cc(act, x)?;
        let ccy = center_cc(act, y)?;
        let d_double = space.set_hausdorff(&ccx, &ccy)?;
        let d_select = box_space::midpoint(ccx.as_ref().expect("nonempty"))
            .dist(&box_space::midpoint(ccy.as_ref().expect("nonempty")));

        let checks = [
            ("orbit", d_orbit, lipschitz * d + slack),
            ("center", d_center, 2.0 * lipschitz * d + slack),
            ("double center", d_double, 4.0 * lipschitz * d + slack),
            ("selection", d_select, 4.0 * lipschitz * d + slack),
            ("selection vs double center", d_select, d_double + tolerance::GEOMETRY),
        ];
        for (name, lhs, bound) in checks {
            if lhs > bound {
                report.violations.push(format!(
                    "pair {i}: {name} distance {lhs:e} exceeds {bound:e} (d = {d:e})"
                ));
            }
        }
        if d > 0.0 {
            report.orbit_constant = report.orbit_constant.max(d_orbit / d);
            report.center_constant = report.center_constant.max(d_center / d);
            report.double_center_constant = report.double_center_constant.max(d_double / d);
            report.selection_constant = report.selection_constant.max(d_select / d);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderSample {
    pub scale: f64,
    pub dist: f64,
    pub retract_dist: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecadeStat {
    pub scale: f64,
    pub pairs: usize,
    pub max_ratio: f64,
    /// Ratio attributable to the termination tolerance of `R` alone.
    pub noise_floor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderReport {
    pub alpha: f64,
    pub decades: Vec<DecadeStat>,
    pub samples: Vec<HolderSample>,
    pub seed: u64,
}

impl HolderReport {
    /// No decade's maximum ratio exceeds twice the first decade's, once the
    /// part explained by the tolerance of `R` is allowed for.
    pub fn passed(&self) -> bool {
        let Some(first) = self.decades.first() else {
            return false;
        };
        self.decades
            .iter()
            .all(|d| d.max_ratio <= 2.0 * first.max_ratio + d.noise_floor)
    }
}

/// Samples pairs at each scale of [`DECADES`] and records
/// `d(Rx, Ry) / d(x, y)^α`.
pub fn holder_empirical(
    act: &Action<BoxSpace>,
    lipschitz: f64,
    pairs_per_decade: usize,
    seed: u64,
) -> Result<HolderReport> {
    let alpha = holder_alpha(lipschitz)?;
    let space = act.model();
    let mut rng = seeded_rng(seed);
    let mut decades = Vec::with_capacity(DECADES.len());
    let mut samples = Vec::with_capacity(DECADES.len() * pairs_per_decade);
    for &scale in &DECADES {
        let mut max_ratio: f64 = 0.0;
        for _ in 0..pairs_per_decade {
            let x = space.sample(&mut rng);
            let y = space.sample_at_distance(&x, scale, &mut rng);
            let dist = x.dist(&y);
            if dist == 0.0 {
                continue;
            }
            let rx = retract(act, &x, RETRACT_TOL, RETRACT_MAX_ITER)?.point;
            let ry = retract(act, &y, RETRACT_TOL, RETRACT_MAX_ITER)?.point;
            let retract_dist = rx.dist(&ry);
            let ratio = retract_dist / dist.powf(alpha);
            max_ratio = max_ratio.max(ratio);
            samples.push(HolderSample {
                scale,
                dist,
                retract_dist,
                ratio,
            });
        }
        decades.push(DecadeStat {
            scale,
            pairs: pairs_per_decade,
            max_ratio,
            noise_floor: 4.0 * RETRACT_TOL / scale.powf(alpha),
        });
    }
    Ok(HolderReport {
        alpha,
        decades,
        samples,
        seed,
    })
}

/// Largest deviations from `R∘R = R`, `T_a∘R = R` and `R|Fix = id`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LawsReport {
    pub points: usize,
    pub idempotence: f64,
    pub invariance: f64,
    pub identity_on_fix: f64,
}

impl LawsReport {
    pub fn passed(&self) -> bool {
        self.idempotence <= LAW_TOL && self.invariance <= LAW_TOL && self.identity_on_fix <= LAW_TOL
    }
}

/// Checks the retraction laws on `points`. Fixed points for the last law
/// are the supplied `known_fixed` together with every computed `R(x)`.
pub fn retraction_laws(act: &Action<BoxSpace>, points: &[Point], known_fixed: &[Point]) -> Result<LawsReport> {
    let r = |x: &Point| retract(act, x, RETRACT_TOL, RETRACT_MAX_ITER).map(|o| o.point);
    let mut report = LawsReport {
        points: points.len(),
        ..Default::default()
    };
    for x in points {
        let rx = r(x)?;
        let rrx = r(&rx)?;
        report.idempotence = report.idempotence.max(rrx.dist(&rx));
        report.invariance = report.invariance.max(act.residual(&rx));
        report.identity_on_fix = report.identity_on_fix.max(rrx.dist(&rx));
    }
    for p in known_fixed {
        report.identity_on_fix = report.identity_on_fix.max(r(p)?.dist(p));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetractRecord {
    pub x: Point,
    pub rx: Point,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetractionReport {
    pub lipschitz: f64,
    pub records: Vec<RetractRecord>,
    /// Sampled steps violating the `L²/2` contraction of the `f`-iterates.
    pub contraction_failures: usize,
    pub chain: ChainReport,
    pub holder: HolderReport,
    pub laws: LawsReport,
    pub seed: u64,
}

impl RetractionReport {
    pub fn passed(&self) -> bool {
        self.contraction_failures == 0
            && self.records.iter().all(|r| r.residual <= LAW_TOL)
            && self.chain.passed()
            && self.holder.passed()
            && self.laws.passed()
    }

    /// Hölder pairs as CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scale,dist,retract_dist,ratio\n");
        for s in &self.holder.samples {
            writeln!(
                out,
                "{},{},{},{}",
                sig17(s.scale),
                sig17(s.dist),
                sig17(s.retract_dist),
                sig17(s.ratio)
            )
            .expect("writing to a String");
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k}: {v}").expect("writing to a String");
        line("retraction", if self.passed() { "pass" } else { "fail" }.into());
        line("lipschitz", sig17(self.lipschitz));
        line("points", self.records.len().to_string());
        line(
            "max_iterations",
            self.records.iter().map(|r| r.iterations).max().unwrap_or(0).to_string(),
        );
        line("contraction_failures", self.contraction_failures.to_string());
        line("law_idempotence", sig17(self.laws.idempotence));
        line("law_invariance", sig17(self.laws.invariance));
        line("law_identity_on_fix", sig17(self.laws.identity_on_fix));
        line("chain_pairs", self.chain.pairs.to_string());
        line("chain_orbit_constant", sig17(self.chain.orbit_constant));
        line("chain_center_constant", sig17(self.chain.center_constant));
        line("chain_double_center_constant", sig17(self.chain.double_center_constant));
        line("chain_selection_constant", sig17(self.chain.selection_constant));
        line("chain_violations", self.chain.violations.len().to_string());
        line("holder_alpha", sig17(self.holder.alpha));
        for d in &self.holder.decades {
            line(&format!("holder_max_ratio[{}]", sig17(d.scale)), sig17(d.max_ratio));
        }
        line("holder", if self.holder.passed() { "pass" } else { "fail" }.into());
        line("seed", self.seed.to_string());
        out
    }
}

/// Full audit: `points` sampled points for the laws and the chain, and
/// `pairs_per_decade` pairs per Hölder decade.
pub fn retraction_report(
    act: &Action<BoxSpace>,
    points: usize,
    pairs_per_decade: usize,
    known_fixed: &[Point],
    seed: u64,
) -> Result<RetractionReport> {
    let lipschitz = act.lipschitz(crate::fixpoint::DEFAULT_SAMPLES, seed).value;
    let space = act.model();
    let mut rng = seeded_rng(seed);
    let xs: Vec<Point> = (0..points).map(|_| space.sample(&mut rng)).collect();

    let mut records = Vec::with_capacity(points);
    let mut contraction_failures = 0;
    for x in &xs {
        let out = retract(act, x, RETRACT_TOL, RETRACT_MAX_ITER)?;
        contraction_failures += out.contraction_failures(lipschitz);
        records.push(RetractRecord {
            residual: act.residual(&out.point),
            x: x.clone(),
            rx: out.point,
            iterations: out.iterations,
        });
    }

    let pairs: Vec<(Point, Point)> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let y = if i % 2 == 0 {
                space.sample(&mut rng)
            } else {
                space.sample_at_distance(x, DECADES[i % DECADES.len()], &mut rng)
            };
            (x.clone(), y)
        })
        .collect();
    let chain = chain_check(act, &pairs, lipschitz)?;
    let holder = holder_empirical(act, lipschitz, pairs_per_decade, seed.wrapping_add(1))?;
    let laws = retraction_laws(act, &xs, known_fixed)?;

    Ok(RetractionReport {
        lipschitz,
        records,
        contraction_failures,
        chain,
        holder,
        laws,
        seed,
    })
}
