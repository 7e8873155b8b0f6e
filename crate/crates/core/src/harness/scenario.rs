//! Executes a scenario config and writes its trace and summary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::config::{GroupKind, ModeSpec, ScenarioConfig, SpaceKind};
use super::HarnessError;
use crate::box_space::{Cuboid, Point};
use crate::fixpoint::{self, IterationConfig, IterationTrace, Outcome};
use crate::group_action::{verify_group, word_ball_orbit, Action, BoxMap, BoxMapKind, FiniteGroup, Map};
use crate::model::{BoxSpace, CircleSpace, MetricModel};
use crate::report::sig17;

/// Steps used to decide whether a single composed word has a bounded orbit.
const COMPOSITION_PROBE: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn io_err(path: &Path, e: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn write_file(dir: &Path, name: &str, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), HarnessError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io_err(&path, e))?;
    files.push(path);
    Ok(())
}

fn run_err(cfg: &ScenarioConfig) -> impl Fn(crate::Error) -> HarnessError + '_ {
    move |source| HarnessError::Run {
        scenario: cfg.name.clone(),
        source,
    }
}

/// Runs `cfg`, writing into `out` (or the configured directory): the
/// echoed config, a CSV and `summary.txt`.
pub fn run_scenario(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<ScenarioResult, HarnessError> {
    cfg.validate()?;
    let dir = out.map_or_else(|| PathBuf::from(&cfg.output.dir), Path::to_path_buf);
    fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
    let mut files = Vec::new();
    write_file(&dir, "config.toml", &cfg.to_toml(), &mut files)?;

    let (csv_name, csv, body, observed, passed) = match cfg.iteration.mode {
        ModeSpec::Theorem1 | ModeSpec::Theorem2 | ModeSpec::Theorem3 => match cfg.space.kind {
            SpaceKind::Box => {
                let act = box_action(cfg)?;
                let x1 = cfg.box_start().ok_or_else(invalid_x1)?;
                iterative(cfg, &act, x1)?
            }
            SpaceKind::Circle => {
                let act = circle_action(cfg)?;
                let x1 = cfg.circle_start().ok_or_else(invalid_x1)?;
                iterative(cfg, &act, x1)?
            }
        },
        ModeSpec::WordBall => match cfg.space.kind {
            SpaceKind::Box => {
                let space = cfg.box_space().expect("validated box space");
                let gens = box_maps(cfg)?;
                let x = cfg.box_start().ok_or_else(invalid_x1)?;
                word_balls(cfg, &space, &gens, &x)?
            }
            SpaceKind::Circle => {
                let gens = circle_maps(cfg)?;
                let x = cfg.circle_start().ok_or_else(invalid_x1)?;
                word_balls(cfg, &CircleSpace, &gens, &x)?
            }
        },
        ModeSpec::FixedSet => {
            let map = box_maps(cfg)?.remove(0);
            let domain = cfg.box_domain().expect("validated box space");
            let report = fixed_set_analysis(
                &map,
                &domain,
                cfg.iteration.check_values.as_deref().unwrap_or(&[]),
                cfg.sampling.samples,
                cfg.sampling.seed,
            )
            .map_err(run_err(cfg))?;
            let passed = report.verified && !report.points.is_empty();
            (
                "fixed_set.csv",
                report.to_csv(),
                report.summary(),
                "fixed_set".to_string(),
                passed,
            )
        }
    };

    let mut summary = String::new();
    writeln!(summary, "scenario: {}", cfg.name).expect("string write");
    if !cfg.description.is_empty() {
        writeln!(summary, "description: {}", cfg.description).expect("string write");
    }
    writeln!(summary, "space: {}", space_label(cfg)).expect("string write");
    summary.push_str(&body);
    writeln!(summary, "expected: {}", cfg.iteration.expect).expect("string write");
    writeln!(summary, "observed: {observed}").expect("string write");
    writeln!(summary, "expectation_met: {passed}").expect("string write");

    write_file(&dir, csv_name, &csv, &mut files)?;
    write_file(&dir, "summary.txt", &summary, &mut files)?;
    Ok(ScenarioResult {
        name: cfg.name.clone(),
        expected: cfg.iteration.expect.clone(),
        observed,
        passed,
        summary,
        files,
    })
}

fn invalid_x1() -> HarnessError {
    HarnessError::Invalid {
        field: "iteration.x1".into(),
        message: "not a valid point".into(),
    }
}

fn space_label(cfg: &ScenarioConfig) -> String {
    match cfg.space.kind {
        SpaceKind::Box => format!(
            "box dim={} domain=[{}, {}]",
            cfg.space.dim.unwrap_or(0),
            sig17(cfg.space.lo.unwrap_or(f64::NAN)),
            sig17(cfg.space.hi.unwrap_or(f64::NAN))
        ),
        SpaceKind::Circle => "circle".into(),
    }
}

pub fn box_maps(cfg: &ScenarioConfig) -> Result<Vec<BoxMap>, HarnessError> {
    cfg.maps
        .iter()
        .enumerate()
        .map(|(k, m)| cfg.box_map(m, &format!("maps[{k}]")))
        .collect()
}

pub fn circle_maps(cfg: &ScenarioConfig) -> Result<Vec<crate::group_action::CircleMap>, HarnessError> {
    cfg.maps
        .iter()
        .enumerate()
        .map(|(k, m)| cfg.circle_map(m, &format!("maps[{k}]")))
        .collect()
}

/// The action described by a box scenario with a finite group.
pub fn box_action(cfg: &ScenarioConfig) -> Result<Action<BoxSpace>, HarnessError> {
    let space = cfg.box_space().expect("validated box space");
    Action::new(cfg.group()?, box_maps(cfg)?, space).map_err(run_err(cfg))
}

pub fn circle_action(cfg: &ScenarioConfig) -> Result<Action<CircleSpace>, HarnessError> {
    Action::new(cfg.group()?, circle_maps(cfg)?, CircleSpace).map_err(run_err(cfg))
}

type Section = (&'static str, String, String, String, bool);

fn iterative<M: MetricModel>(cfg: &ScenarioConfig, act: &Action<M>, x1: M::Point) -> Result<Section, HarnessError> {
    let mode = cfg.iteration.mode.iteration_mode().expect("iterative mode");
    let group_report = verify_group(act.group());
    let action_report = act.verify(cfg.sampling.samples, cfg.sampling.seed);
    let icfg = IterationConfig {
        x1,
        tol: cfg.iteration.tol,
        max_iter: cfg.iteration.max_iter,
        lambda: cfg.iteration.lambda,
        mode,
        seed: cfg.sampling.seed,
        samples: cfg.sampling.samples,
    };
    let trace: IterationTrace<M::Point> = fixpoint::iterate(act, &icfg).map_err(run_err(cfg))?;

    let mut body = String::new();
    writeln!(body, "group_order: {}", act.group().order()).expect("string write");
    writeln!(body, "group_axioms: {}", group_report.summary()).expect("string write");
    writeln!(body, "action_max_deviation: {}", sig17(action_report.max_deviation)).expect("string write");
    writeln!(
        body,
        "action_identity_deviation: {}",
        sig17(action_report.identity_deviation)
    )
    .expect("string write");
    body.push_str(&trace.summary(|p| act.model().format_point(p)));

    let expected = cfg.expected_outcome().expect("validated expectation");
    let mut passed = trace.outcome == expected && group_report.is_valid() && action_report.passed();
    if trace.outcome == Outcome::Converged {
        passed &= trace.audit_failures.is_empty() && trace.limit_audit == Some(true);
    }
    Ok(("trace.csv", trace.to_csv(), body, trace.outcome.to_string(), passed))
}

fn word_balls<M: MetricModel>(
    cfg: &ScenarioConfig,
    model: &M,
    gens: &[M::Map],
    x: &M::Point,
) -> Result<Section, HarnessError> {
    let max_len = cfg.group.max_len.expect("validated word ball");
    let cap = cfg.group.word_cap.expect("normalized word cap");
    let wb = word_ball_orbit(model, gens, max_len, x, cap).map_err(run_err(cfg))?;

    let mut csv = String::from("length,points,diameter\n");
    let mut total = 0;
    for (k, (level, d)) in wb.levels.iter().zip(&wb.diameters).enumerate() {
        total += level.len();
        writeln!(csv, "{k},{total},{}", sig17(*d)).expect("string write");
    }

    let growth_ok = (1..=max_len / 2).all(|k| wb.diameters[2 * k] >= k as f64);
    let half = wb.diameters[max_len / 2];
    let stabilized = wb.diameters[max_len] == half;
    let mut body = String::new();
    writeln!(body, "generators: {}", gens.len()).expect("string write");
    writeln!(body, "max_len: {max_len}").expect("string write");
    writeln!(body, "word_cap: {cap}").expect("string write");
    writeln!(body, "evaluations: {}", wb.evaluations).expect("string write");
    writeln!(body, "points: {total}").expect("string write");
    writeln!(body, "final_diameter: {}", sig17(wb.diameters[max_len])).expect("string write");
    writeln!(
        body,
        "growth_check: diameter(2k) >= k for k <= {}: {growth_ok}",
        max_len / 2
    )
    .expect("string write");
    if gens.len() == 2 {
        let (a, b) = (&gens[0], &gens[1]);
        let b_inv = b.inverse().expect("generators were inverted during the search");
        for (label, first, second) in [("g0 after g1", b, a), ("g0 after g1^-1", &b_inv, a)] {
            writeln!(
                body,
                "composition[{label}]: {}",
                probe_composition(model, first, second, x)
            )
            .expect("string write");
        }
    }

    let observed = if growth_ok {
        "unbounded"
    } else if stabilized {
        "bounded"
    } else {
        "inconclusive"
    };
    let passed = observed == cfg.iteration.expect;
    Ok(("word_ball.csv", csv, body, observed.to_string(), passed))
}

/// Iterates `x ↦ second(first(x))` and reports whether the orbit returns
/// to `x` or how far it spreads.
fn probe_composition<M: MetricModel>(model: &M, first: &M::Map, second: &M::Map, x: &M::Point) -> String {
    let mut p = x.clone();
    let mut spread: f64 = 0.0;
    for n in 1..=COMPOSITION_PROBE {
        p = second.apply(&first.apply(&p));
        let d = model.dist(&p, x);
        if d <= 1e-9 {
            return format!("periodic with period {n}, bounded orbit of diameter {}", sig17(spread));
        }
        spread = spread.max(d);
    }
    format!(
        "no return within {COMPOSITION_PROBE} steps, distance from start {} after {COMPOSITION_PROBE} steps",
        sig17(model.dist(&p, x))
    )
}

/// Fixed points of a coordinatewise piecewise-linear map inside a box.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedSetReport {
    /// Fixed values per coordinate, sorted.
    pub per_coordinate: Vec<Vec<f64>>,
    /// The product of the per-coordinate values (empty if too large to list).
    pub points: Vec<Point>,
    pub count: usize,
    /// Smallest ℓ∞ distance between distinct fixed points; `None` when
    /// there is at most one.
    pub min_distance: Option<f64>,
    pub lipschitz_exact: f64,
    pub lipschitz_sampled: f64,
    /// Every listed point satisfies `T p = p` exactly.
    pub verified: bool,
    pub notes: Vec<String>,
    pub seed: u64,
}

/// Largest fixed set enumerated point by point.
const MAX_LISTED: usize = 4096;

pub fn fixed_set_analysis(
    map: &BoxMap,
    domain: &Cuboid,
    check_values: &[f64],
    samples: usize,
    seed: u64,
) -> crate::Result<FixedSetReport> {
    let BoxMapKind::Coordinatewise(fs) = &map.kind else {
        return Err(crate::Error::InvalidMapping(
            "fixed-set analysis needs a coordinatewise map".into(),
        ));
    };
    let per_coordinate: Vec<Vec<f64>> = fs
        .iter()
        .enumerate()
        .map(|(i, f)| f.fixed_points(domain.lo()[i], domain.hi()[i]))
        .collect();
    let count = per_coordinate.iter().map(Vec::len).product::<usize>();
    let min_distance = per_coordinate
        .iter()
        .flat_map(|v| v.windows(2).map(|w| w[1] - w[0]))
        .reduce(f64::min);

    let mut points = Vec::new();
    if count <= MAX_LISTED {
        points.push(Vec::new());
        for values in &per_coordinate {
            points = points
                .into_iter()
                .flat_map(|prefix: Vec<f64>| {
                    values.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(*v);
                        p
                    })
                })
                .collect();
        }
    }
    let points: Vec<Point> = points.into_iter().map(|c| Point::new(c).expect("finite")).collect();
    let verified = points.iter().all(|p| map.apply(p) == *p);

    let lipschitz_exact = map.lipschitz_bound().map_or(f64::NAN, |b| b.value);
    let space = BoxSpace::new(domain.clone());
    let lipschitz_sampled =
        Action::new(FiniteGroup::cyclic(1)?, vec![map.clone()], space)?.estimate_lipschitz(samples, seed);

    let mut notes = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        for &v in check_values {
            let image = f.eval(v);
            if image != v {
                notes.push(format!(
                    "value {} is not fixed in coordinate {i}: f({}) = {}",
                    sig17(v),
                    sig17(v),
                    sig17(image)
                ));
            }
        }
    }
    if !check_values.is_empty() {
        let all_fixed = notes.is_empty();
        notes.push(format!(
            "the product of the checked values {:?} is {}contained in the computed fixed set",
            check_values,
            if all_fixed { "" } else { "not " }
        ));
    }
    Ok(FixedSetReport {
        per_coordinate,
        points,
        count,
        min_distance,
        lipschitz_exact,
        lipschitz_sampled,
        verified,
        notes,
        seed,
    })
}

impl FixedSetReport {
    pub fn to_csv(&self) -> String {
        let dim = self.per_coordinate.len();
        let header: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
        let mut out = header.join(",") + "\n";
        for p in &self.points {
            let row: Vec<String> = p.coords().iter().map(|v| sig17(*v)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.per_coordinate.iter().enumerate() {
            let vals: Vec<String> = v.iter().map(|x| sig17(*x)).collect();
            writeln!(out, "fixed_values[{i}]: {{{}}}", vals.join(", ")).expect("string write");
        }
        writeln!(out, "fixed_points: {}", self.count).expect("string write");
        writeln!(
            out,
            "min_pairwise_distance: {}",
            self.min_distance.map_or("none".into(), sig17)
        )
        .expect("string write");
        writeln!(out, "fixed_points_verified: {}", self.verified).expect("string write");
        writeln!(out, "lipschitz_exact: {}", sig17(self.lipschitz_exact)).expect("string write");
        writeln!(out, "lipschitz_sampled: {}", sig17(self.lipschitz_sampled)).expect("string write");
        writeln!(out, "seed: {}", self.seed).expect("string write");
        for n in &self.notes {
            writeln!(out, "note: {n}").expect("string write");
        }
        out
    }
}

/// Group kind label used by `list-scenarios`.
pub fn group_label(cfg: &ScenarioConfig) -> String {
    match cfg.group.kind {
        GroupKind::Cyclic => format!("cyclic({})", cfg.group.order.unwrap_or(0)),
        GroupKind::Table => format!("table({})", cfg.group_order().unwrap_or(0)),
        GroupKind::WordBall => format!("word_ball(max_len={})", cfg.group.max_len.unwrap_or(0)),
        GroupKind::Single => "single map".into(),
    }
}
