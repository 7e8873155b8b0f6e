//! Center calculus and the three fixed-point iterations.
//!
//! Every iteration follows the same loop. From `x_n`, the orbit's diameter
//! `δ_n` fixes a radius, balls of that radius about the orbit points are
//! intersected, the intersection is shrunk to the points close to all of
//! it, and the next iterate is selected from what remains. The three modes
//! differ only in the radii and in which hypothesis on `L` guarantees
//! contraction:
//!
//! | mode      | first radius | second radius | hypothesis   | ratio bound |
//! |-----------|--------------|---------------|--------------|-------------|
//! | theorem1  | `r(x)`       | `r(x)`        | `L < √2`     | `L²/2`      |
//! | theorem2  | `λδ/2`       | `λ²δ/2`       | `L < √2/λ`   | `L²λ²/2`    |
//! | theorem3  | `λδ/2`       | `λ²δ/2`       | `L < 2/λ²`   | `Lλ²/2`     |
//!
//! Mode theorem3 runs on the two-element group `{id, T}` of an involution `T`.
//! A run whose hypothesis fails is still carried out and labeled.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group_action::{Action, FiniteGroup, LipschitzInfo, Map};
use crate::model::{seeded_rng, MetricModel};
use crate::report::{cell, sig17};
use crate::tolerance;

/// Number of sampled pairs per element used to estimate Lipschitz
/// constants and to check the involution property.
pub const DEFAULT_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Theorem1,
    Theorem2,
    Theorem3,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Theorem1 => "theorem1",
            Mode::Theorem2 => "theorem2",
            Mode::Theorem3 => "theorem3",
        }
    }

    /// Threshold `L` must stay strictly below.
    pub fn hypothesis_threshold(self, lambda: f64) -> f64 {
        match self {
            Mode::Theorem1 => SQRT_2,
            Mode::Theorem2 => SQRT_2 / lambda,
            Mode::Theorem3 => 2.0 / (lambda * lambda),
        }
    }

    /// Guaranteed bound on `δ_{n+1}/δ_n` when the hypothesis holds.
    pub fn ratio_bound(self, l: f64, lambda: f64) -> f64 {
        match self {
            Mode::Theorem1 => l * l / 2.0,
            Mode::Theorem2 => l * l * lambda * lambda / 2.0,
            Mode::Theorem3 => l * lambda * lambda / 2.0,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Converged,
    HypothesisViolated,
    EmptyCenter,
    MaxIter,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Converged => "converged",
            Outcome::HypothesisViolated => "hypothesis_violated",
            Outcome::EmptyCenter => "empty_center",
            Outcome::MaxIter => "max_iter",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Outcome::Converged,
            Outcome::HypothesisViolated,
            Outcome::EmptyCenter,
            Outcome::MaxIter,
        ]
        .into_iter()
        .find(|o| o.as_str() == s)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationConfig<P> {
    pub x1: P,
    pub tol: f64,
    pub max_iter: usize,
    pub lambda: f64,
    pub mode: Mode,
    /// Seed for Lipschitz sampling and the involution check.
    pub seed: u64,
    pub samples: usize,
}

impl<P> IterationConfig<P> {
    pub fn new(x1: P, mode: Mode) -> Self {
        IterationConfig {
            x1,
            tol: tolerance::DEFAULT_TOL,
            max_iter: tolerance::DEFAULT_MAX_ITER,
            lambda: 1.0,
            mode,
            seed: 0,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::OutOfRange {
                name: "tol",
                value: self.tol,
                range: "tol > 0",
            });
        }
        if !(self.lambda.is_finite() && self.lambda >= 1.0) {
            return Err(Error::OutOfRange {
                name: "lambda",
                value: self.lambda,
                range: "lambda >= 1",
            });
        }
        if self.mode == Mode::Theorem1 && self.lambda != 1.0 {
            return Err(Error::OutOfRange {
                name: "lambda",
                value: self.lambda,
                range: "lambda = 1 for theorem1",
            });
        }
        Ok(())
    }
}

/// One row of a trace. `step_dist` and `ratio` describe the move to the
/// next iterate and are absent on the last row; `ratio` is also absent
/// when `delta` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Step<P> {
    pub n: usize,
    pub x: P,
    pub delta: f64,
    pub r: f64,
    pub step_dist: Option<f64>,
    pub ratio: Option<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<P> {
    pub mode: Mode,
    pub steps: Vec<Step<P>>,
    pub outcome: Outcome,
    pub lipschitz: LipschitzInfo,
    pub lambda: f64,
    pub tol: f64,
    pub hypothesis_holds: bool,
    pub ratio_bound: f64,
    /// Human-readable descriptions of every failed per-step audit.
    pub audit_failures: Vec<String>,
    /// Closing inequality of the convergence argument on the last iterates;
    /// only evaluated for converged runs.
    pub limit_audit: Option<bool>,
    pub final_point: P,
    pub seed: u64,
}

impl<P> IterationTrace<P> {
    pub fn final_residual(&self) -> f64 {
        self.steps.last().map_or(f64::NAN, |s| s.residual)
    }

    pub fn final_delta(&self) -> f64 {
        self.steps.last().map_or(f64::NAN, |s| s.delta)
    }

    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().filter_map(|s| s.ratio)
    }

    pub fn max_ratio(&self) -> Option<f64> {
        self.ratios().reduce(f64::max)
    }

    pub fn iterates(&self) -> impl Iterator<Item = &P> {
        self.steps.iter().map(|s| &s.x)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,delta,r,step_dist,ratio,residual\n");
        for s in &self.steps {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                s.n,
                sig17(s.delta),
                sig17(s.r),
                cell(s.step_dist),
                cell(s.ratio),
                sig17(s.residual)
            )
            .expect("writing to a String");
        }
        out
    }

    /// `key: value` lines; `format_point` renders the final point.
    pub fn summary(&self, format_point: impl Fn(&P) -> String) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k}: {v}").expect("writing to a String");
        line("mode", self.mode.to_string());
        line("outcome", self.outcome.to_string());
        line("iterations", self.steps.len().saturating_sub(1).to_string());
        line("final_point", format_point(&self.final_point));
        line("final_delta", sig17(self.final_delta()));
        line("final_residual", sig17(self.final_residual()));
        line("lipschitz", sig17(self.lipschitz.value));
        line("lipschitz_kind", self.lipschitz.kind.to_string());
        line("lipschitz_sampled", sig17(self.lipschitz.sampled));
        line("lambda", sig17(self.lambda));
        line("tol", sig17(self.tol));
        line("hypothesis_holds", self.hypothesis_holds.to_string());
        line("ratio_bound", sig17(self.ratio_bound));
        line("max_ratio", cell(self.max_ratio()));
        line("audit_failures", self.audit_failures.len().to_string());
        line(
            "limit_audit",
            self.limit_audit
                .map_or("not_applicable".into(), |b| if b { "pass" } else { "fail" }.into()),
        );
        line("seed", self.seed.to_string());
        for f in &self.audit_failures {
            line("audit", f.clone());
        }
        out
    }
}

/// `C(x) = ⋂_a B(T_a x, r(x))`.
pub fn center_c<M: MetricModel>(act: &Action<M>, x: &M::Point) -> Result<M::Set> {
    let orbit = act.orbit_points(x);
    let r = act.model().radius(&orbit);
    act.model().balls_meet(&orbit, r)
}

/// `CC(x) = C(x) ∩ ⋂_{y∈C(x)} B(y, r(x))`.
pub fn center_cc<M: MetricModel>(act: &Action<M>, x: &M::Point) -> Result<M::Set> {
    let orbit = act.orbit_points(x);
    let r = act.model().radius(&orbit);
    let c = act.model().balls_meet(&orbit, r)?;
    Ok(act.model().within_of_all(&c, r))
}

/// `A(x) = ⋂_a B(T_a x, λδ(x)/2)`.
pub fn set_a<M: MetricModel>(act: &Action<M>, x: &M::Point, lambda: f64) -> Result<M::Set> {
    let orbit = act.orbit_points(x);
    let delta = act.model().diameter(&orbit);
    act.model().balls_meet(&orbit, lambda * delta / 2.0)
}

/// `AA(x) = A(x) ∩ ⋂_{y∈A(x)} B(y, λ²δ(x)/2)`.
pub fn set_aa<M: MetricModel>(act: &Action<M>, x: &M::Point, lambda: f64) -> Result<M::Set> {
    let orbit = act.orbit_points(x);
    let delta = act.model().diameter(&orbit);
    let a = act.model().balls_meet(&orbit, lambda * delta / 2.0)?;
    Ok(act.model().within_of_all(&a, lambda * lambda * delta / 2.0))
}

/// Checks `T∘T = id` on sampled points; returns the largest deviation.
pub fn involution_deviation<M: MetricModel>(model: &M, t: &M::Map, samples: usize, seed: u64) -> f64 {
    let mut rng = seeded_rng(seed);
    (0..samples)
        .map(|_| {
            let x = model.sample(&mut rng);
            model.dist(&t.apply(&t.apply(&x)), &x)
        })
        .fold(0.0, f64::max)
}

pub fn iterate_theorem1<M: MetricModel>(
    act: &Action<M>,
    cfg: &IterationConfig<M::Point>,
) -> Result<IterationTrace<M::Point>> {
    if cfg.mode != Mode::Theorem1 {
        return Err(Error::InvalidAction(format!(
            "theorem1 runner called with mode {}",
            cfg.mode
        )));
    }
    run(act, cfg)
}

pub fn iterate_theorem2<M: MetricModel>(
    act: &Action<M>,
    cfg: &IterationConfig<M::Point>,
) -> Result<IterationTrace<M::Point>> {
    if cfg.mode != Mode::Theorem2 {
        return Err(Error::InvalidAction(format!(
            "theorem2 runner called with mode {}",
            cfg.mode
        )));
    }
    run(act, cfg)
}

/// Runs the involution iteration on `{id, T}` after checking `T∘T = id` on
/// `cfg.samples` sampled points.
pub fn iterate_involution<M: MetricModel>(
    model: &M,
    t: &M::Map,
    cfg: &IterationConfig<M::Point>,
) -> Result<IterationTrace<M::Point>> {
    if cfg.mode != Mode::Theorem3 {
        return Err(Error::InvalidAction(format!(
            "involution runner called with mode {}",
            cfg.mode
        )));
    }
    let act = involution_action(model, t)?;
    let deviation = involution_deviation(model, t, cfg.samples, cfg.seed);
    if deviation > tolerance::HOMOMORPHISM {
        return Err(Error::NotAnInvolution { deviation });
    }
    run(&act, cfg)
}

/// The two-element action `{id, T}`.
pub fn involution_action<M: MetricModel>(model: &M, t: &M::Map) -> Result<Action<M>> {
    Action::new(
        FiniteGroup::cyclic(2)?,
        vec![model.identity_map(), t.clone()],
        model.clone(),
    )
}

/// Dispatches on `cfg.mode`. Mode theorem3 expects `act` to be `{id, T}`.
pub fn iterate<M: MetricModel>(act: &Action<M>, cfg: &IterationConfig<M::Point>) -> Result<IterationTrace<M::Point>> {
    match cfg.mode {
        Mode::Theorem3 => {
            if act.group().order() != 2 {
                return Err(Error::InvalidAction("theorem3 needs a group of order 2".into()));
            }
            let t = &act.maps()[1 - act.group().identity()];
            iterate_involution(act.model(), t, cfg)
        }
        _ => run(act, cfg),
    }
}

fn run<M: MetricModel>(act: &Action<M>, cfg: &IterationConfig<M::Point>) -> Result<IterationTrace<M::Point>> {
    cfg.validate()?;
    let model = act.model();
    let lipschitz = act.lipschitz(cfg.samples, cfg.seed);
    if !lipschitz.declared_violations.is_empty() {
        return Err(Error::InvalidMapping(format!(
            "declared Lipschitz bound exceeded by sampling for elements {:?}",
            lipschitz.declared_violations
        )));
    }
    let l = lipschitz.value;
    let lambda = cfg.lambda;
    let hypothesis_holds = l < cfg.mode.hypothesis_threshold(lambda);
    let ratio_bound = cfg.mode.ratio_bound(l, lambda);

    let mut steps: Vec<Step<M::Point>> = Vec::new();
    let mut audit_failures = Vec::new();
    let mut x = cfg.x1.clone();
    let mut n = 1;
    let outcome = loop {
        let orbit = act.orbit_points(&x);
        let delta = model.diameter(&orbit);
        let r = model.radius(&orbit);
        let residual = act.residual(&x);
        steps.push(Step {
            n,
            x: x.clone(),
            delta,
            r,
            step_dist: None,
            ratio: None,
            residual,
        });
        if delta <= cfg.tol {
            break Outcome::Converged;
        }
        if n > cfg.max_iter {
            break if hypothesis_holds {
                Outcome::MaxIter
            } else {
                Outcome::HypothesisViolated
            };
        }

        let (first, second) = match cfg.mode {
            Mode::Theorem1 => (r, r),
            _ => (lambda * delta / 2.0, lambda * lambda * delta / 2.0),
        };
        let outer = model.balls_meet(&orbit, first)?;
        let inner = model.within_of_all(&outer, second);
        if model.is_empty(&inner) {
            break Outcome::EmptyCenter;
        }
        let next = model.select(&inner, &x)?;

        let next_delta = model.diameter(&act.orbit_points(&next));
        let step_dist = model.dist(&next, &x);
        let ratio = next_delta / delta;
        let last = steps.last_mut().expect("row just pushed");
        last.step_dist = Some(step_dist);
        last.ratio = Some(ratio);

        if hypothesis_holds && ratio > ratio_bound + tolerance::AUDIT {
            audit_failures.push(format!("step {n}: ratio {ratio:e} exceeds bound {ratio_bound:e}"));
        }
        let cauchy = lambda * delta / 2.0;
        if step_dist > cauchy + tolerance::GEOMETRY {
            audit_failures.push(format!("step {n}: step distance {step_dist:e} exceeds {cauchy:e}"));
        }
        x = next;
        n += 1;
    };

    let limit_audit = (outcome == Outcome::Converged).then(|| {
        let last = steps.last().expect("nonempty trace");
        let x0 = &last.x;
        let delta0 = last.delta;
        last.residual <= cfg.tol
            && delta0 <= cfg.tol
            && steps
                .iter()
                .rev()
                .take(3)
                .all(|s| delta0 <= 2.0 * l * model.dist(x0, &s.x) + s.delta + tolerance::AUDIT)
    });

    Ok(IterationTrace {
        mode: cfg.mode,
        final_point: x,
        steps,
        outcome,
        lipschitz,
        lambda,
        tol: cfg.tol,
        hypothesis_holds,
        ratio_bound,
        audit_failures,
        limit_audit,
        seed: cfg.seed,
    })
}
