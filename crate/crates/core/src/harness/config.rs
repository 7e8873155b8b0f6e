//! Scenario configuration files.
//!
//! The format is TOML; the full grammar lives in `docs/config.md`. Loading
//! parses, fills every default and validates. The normalized config can be
//! echoed back to TOML, and loading the echo yields the same value.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::box_space::{Cuboid, Point};
use crate::circle_space::CirclePoint;
use crate::fixpoint::{Mode, Outcome, DEFAULT_SAMPLES};
use crate::group_action::{BoxMap, CircleMap, FiniteGroup, PiecewiseLinear, DEFAULT_WORD_CAP};
use crate::model::BoxSpace;
use crate::tolerance;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_BOX_LO: f64 = -1.0;
pub const DEFAULT_BOX_HI: f64 = 1.0;
pub const DEFAULT_OUTPUT_ROOT: &str = "out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Box,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Sampling domain `[lo, hi]^dim` for the box model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic,
    Table,
    WordBall,
    /// One map, studied on its own (no group structure).
    Single,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Identity,
    Affine,
    Rotation2d,
    Swap,
    Pwl,
    CircleRotation,
    CircleReflection,
    Composite,
}

impl MapKind {
    fn as_str(self) -> &'static str {
        match self {
            MapKind::Identity => "identity",
            MapKind::Affine => "affine",
            MapKind::Rotation2d => "rotation2d",
            MapKind::Swap => "swap",
            MapKind::Pwl => "pwl",
            MapKind::CircleRotation => "circle_rotation",
            MapKind::CircleReflection => "circle_reflection",
            MapKind::Composite => "composite",
        }
    }

    fn is_circle(self) -> bool {
        matches!(self, MapKind::CircleRotation | MapKind::CircleReflection)
    }

    fn is_box(self) -> bool {
        matches!(
            self,
            MapKind::Affine | MapKind::Rotation2d | MapKind::Swap | MapKind::Pwl
        )
    }
}

/// One map. Which parameters are required depends on `kind`; parameters
/// that do not belong to the kind are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub kind: MapKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quarter_turns: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    /// Breakpoints shared by every coordinate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<Vec<[f64; 2]>>,
    /// Breakpoints per coordinate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_coordinate: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<MapSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_lipschitz: Option<f64>,
}

impl MapSpec {
    pub fn of_kind(kind: MapKind) -> Self {
        MapSpec {
            kind,
            matrix: None,
            translation: None,
            center: None,
            quarter_turns: None,
            i: None,
            j: None,
            knots: None,
            per_coordinate: None,
            angle: None,
            axis: None,
            parts: None,
            declared_lipschitz: None,
        }
    }

    /// Names of the parameters that are set.
    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut add = |name, set: bool| {
            if set {
                out.push(name)
            }
        };
        add("matrix", self.matrix.is_some());
        add("translation", self.translation.is_some());
        add("center", self.center.is_some());
        add("quarter_turns", self.quarter_turns.is_some());
        add("i", self.i.is_some());
        add("j", self.j.is_some());
        add("knots", self.knots.is_some());
        add("per_coordinate", self.per_coordinate.is_some());
        add("angle", self.angle.is_some());
        add("axis", self.axis.is_some());
        add("parts", self.parts.is_some());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    Theorem1,
    Theorem2,
    Theorem3,
    WordBall,
    FixedSet,
}

impl ModeSpec {
    pub fn iteration_mode(self) -> Option<Mode> {
        match self {
            ModeSpec::Theorem1 => Some(Mode::Theorem1),
            ModeSpec::Theorem2 => Some(Mode::Theorem2),
            ModeSpec::Theorem3 => Some(Mode::Theorem3),
            _ => None,
        }
    }

    fn default_expectation(self) -> &'static str {
        match self {
            ModeSpec::WordBall => "unbounded",
            ModeSpec::FixedSet => "fixed_set",
            _ => "converged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IterationSpec {
    pub mode: ModeSpec,
    /// Starting point; for word balls the point whose orbit is explored.
    /// Unused by the fixed-set analysis.
    #[serde(default)]
    pub x1: Vec<f64>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Expected outcome: an iteration outcome, `unbounded` for word balls
    /// or `fixed_set` for the fixed-set analysis.
    #[serde(default)]
    pub expect: String,
    /// Values tested for being fixed in every coordinate (fixed-set mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_values: Option<Vec<f64>>,
}

fn default_tol() -> f64 {
    tolerance::DEFAULT_TOL
}

fn default_max_iter() -> usize {
    tolerance::DEFAULT_MAX_ITER
}

fn default_lambda() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

impl Default for SamplingSpec {
    fn default() -> Self {
        SamplingSpec {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Defaults to `out/<name>`.
    #[serde(default)]
    pub dir: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub space: SpaceSpec,
    pub group: GroupSpec,
    pub maps: Vec<MapSpec>,
    pub iteration: IterationSpec,
    #[serde(default)]
    pub sampling: SamplingSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> HarnessError {
    HarnessError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses, fills defaults and validates.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, HarnessError> {
    let mut cfg: ScenarioConfig = toml::from_str(text).map_err(|e| HarnessError::Parse {
        line: e.span().map(|s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    cfg.normalize();
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

impl ScenarioConfig {
    /// Fills every default that depends on other fields.
    fn normalize(&mut self) {
        if self.space.kind == SpaceKind::Box {
            self.space.lo.get_or_insert(DEFAULT_BOX_LO);
            self.space.hi.get_or_insert(DEFAULT_BOX_HI);
        }
        if self.group.kind == GroupKind::WordBall {
            self.group.word_cap.get_or_insert(DEFAULT_WORD_CAP);
        }
        if self.iteration.expect.is_empty() {
            self.iteration.expect = self.iteration.mode.default_expectation().to_string();
        }
        if self.output.dir.is_empty() {
            self.output.dir = format!("{DEFAULT_OUTPUT_ROOT}/{}", self.name);
        }
    }

    /// TOML text of the normalized config.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario configs always serialize")
    }

    /// Dimension of points: `dim` for boxes, 1 (the angle) on the circle.
    pub fn point_dim(&self) -> usize {
        match self.space.kind {
            SpaceKind::Box => self.space.dim.unwrap_or(0),
            SpaceKind::Circle => 1,
        }
    }

    pub fn expected_outcome(&self) -> Option<Outcome> {
        Outcome::parse(&self.iteration.expect)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty"));
        }
        self.validate_space()?;
        self.validate_group()?;
        for (k, m) in self.maps.iter().enumerate() {
            self.validate_map(m, &format!("maps[{k}]"))?;
        }
        self.validate_iteration()?;
        if self.sampling.samples == 0 {
            return Err(invalid("sampling.samples", "must be at least 1"));
        }
        Ok(())
    }

    fn validate_space(&self) -> Result<(), HarnessError> {
        let s = &self.space;
        match s.kind {
            SpaceKind::Box => {
                let dim = s
                    .dim
                    .ok_or_else(|| invalid("space.dim", "required for kind = \"box\""))?;
                if dim == 0 {
                    return Err(invalid("space.dim", "must be at least 1"));
                }
                let (lo, hi) = (s.lo.unwrap_or(DEFAULT_BOX_LO), s.hi.unwrap_or(DEFAULT_BOX_HI));
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(invalid("space.lo", format!("need finite lo < hi, got [{lo}, {hi}]")));
                }
            }
            SpaceKind::Circle => {
                for (name, set) in [
                    ("space.dim", s.dim.is_some()),
                    ("space.lo", s.lo.is_some()),
                    ("space.hi", s.hi.is_some()),
                ] {
                    if set {
                        return Err(invalid(name, "not used by kind = \"circle\""));
                    }
                }
            }
        }
        Ok(())
    }

    /// Group order for group kinds that have one.
    pub fn group_order(&self) -> Option<usize> {
        match self.group.kind {
            GroupKind::Cyclic => self.group.order,
            GroupKind::Table => self.group.table.as_ref().map(Vec::len),
            GroupKind::WordBall | GroupKind::Single => None,
        }
    }

    fn validate_group(&self) -> Result<(), HarnessError> {
        let g = &self.group;
        let allowed: &[&str] = match g.kind {
            GroupKind::Cyclic => &["order"],
            GroupKind::Table => &["table"],
            GroupKind::WordBall => &["max_len", "word_cap"],
            GroupKind::Single => &[],
        };
        for (name, set) in [
            ("order", g.order.is_some()),
            ("table", g.table.is_some()),
            ("max_len", g.max_len.is_some()),
            ("word_cap", g.word_cap.is_some()),
        ] {
            if set && !allowed.contains(&name) {
                return Err(invalid(format!("group.{name}"), "not used by this group kind"));
            }
        }
        match g.kind {
            GroupKind::Cyclic => {
                let n = g
                    .order
                    .ok_or_else(|| invalid("group.order", "required for kind = \"cyclic\""))?;
                if n == 0 || n > 1000 {
                    return Err(invalid("group.order", format!("must be in 1..=1000, got {n}")));
                }
            }
            GroupKind::Table => {
                let t = g
                    .table
                    .clone()
                    .ok_or_else(|| invalid("group.table", "required for kind = \"table\""))?;
                FiniteGroup::from_table(t).map_err(|e| invalid("group.table", e.to_string()))?;
            }
            GroupKind::WordBall => {
                g.max_len
                    .ok_or_else(|| invalid("group.max_len", "required for kind = \"word_ball\""))?;
                if g.word_cap == Some(0) {
                    return Err(invalid("group.word_cap", "must be at least 1"));
                }
            }
            GroupKind::Single => {}
        }
        let count_ok = match g.kind {
            GroupKind::Cyclic | GroupKind::Table => Some(self.maps.len()) == self.group_order(),
            GroupKind::WordBall => !self.maps.is_empty(),
            GroupKind::Single => self.maps.len() == 1,
        };
        if !count_ok {
            let expected = match g.kind {
                GroupKind::WordBall => "at least one generator".to_string(),
                GroupKind::Single => "exactly one map".to_string(),
                _ => format!("one map per group element ({})", self.group_order().unwrap_or(0)),
            };
            return Err(invalid(
                "maps",
                format!("found {} maps, expected {expected}", self.maps.len()),
            ));
        }
        Ok(())
    }

    fn validate_map(&self, m: &MapSpec, field: &str) -> Result<(), HarnessError> {
        let circle = self.space.kind == SpaceKind::Circle;
        if (circle && m.kind.is_box()) || (!circle && m.kind.is_circle()) {
            return Err(invalid(
                format!("{field}.kind"),
                format!("{} maps do not act on the {:?} space", m.kind.as_str(), self.space.kind),
            ));
        }
        let allowed: &[&str] = match m.kind {
            MapKind::Identity => &[],
            MapKind::Affine => &["matrix", "translation"],
            MapKind::Rotation2d => &["center", "quarter_turns"],
            MapKind::Swap => &["i", "j"],
            MapKind::Pwl => &["knots", "per_coordinate"],
            MapKind::CircleRotation => &["angle"],
            MapKind::CircleReflection => &["axis"],
            MapKind::Composite => &["parts"],
        };
        if let Some(extra) = m.present().into_iter().find(|p| !allowed.contains(p)) {
            return Err(invalid(
                format!("{field}.{extra}"),
                format!("not a parameter of kind = \"{}\"", m.kind.as_str()),
            ));
        }
        if let Some(l) = m.declared_lipschitz {
            if !(l.is_finite() && l >= 0.0) {
                return Err(invalid(
                    format!("{field}.declared_lipschitz"),
                    "must be finite and >= 0",
                ));
            }
        }
        if let Some(parts) = &m.parts {
            if parts.is_empty() {
                return Err(invalid(format!("{field}.parts"), "must not be empty"));
            }
            for (k, p) in parts.iter().enumerate() {
                self.validate_map(p, &format!("{field}.parts[{k}]"))?;
            }
        }
        // Construction performs the remaining range checks.
        match self.space.kind {
            SpaceKind::Box => self.box_map(m, field).map(|_| ()),
            SpaceKind::Circle => self.circle_map(m, field).map(|_| ()),
        }
    }

    fn validate_iteration(&self) -> Result<(), HarnessError> {
        let it = &self.iteration;
        if !(it.tol.is_finite() && it.tol > 0.0) {
            return Err(invalid("iteration.tol", format!("must be > 0, got {}", it.tol)));
        }
        if !(it.lambda.is_finite() && it.lambda >= 1.0) {
            return Err(invalid("iteration.lambda", format!("must be >= 1, got {}", it.lambda)));
        }
        if it.mode == ModeSpec::Theorem1 && it.lambda != 1.0 {
            return Err(invalid("iteration.lambda", "must be 1 for mode = \"theorem1\""));
        }
        if it.max_iter == 0 {
            return Err(invalid("iteration.max_iter", "must be at least 1"));
        }
        let group_ok = match it.mode {
            ModeSpec::Theorem1 | ModeSpec::Theorem2 => {
                matches!(self.group.kind, GroupKind::Cyclic | GroupKind::Table)
            }
            ModeSpec::Theorem3 => {
                matches!(self.group.kind, GroupKind::Cyclic | GroupKind::Table) && self.group_order() == Some(2)
            }
            ModeSpec::WordBall => self.group.kind == GroupKind::WordBall,
            ModeSpec::FixedSet => self.group.kind == GroupKind::Single && self.space.kind == SpaceKind::Box,
        };
        if !group_ok {
            return Err(invalid(
                "iteration.mode",
                format!(
                    "mode {:?} is incompatible with group kind {:?} on the {:?} space",
                    it.mode, self.group.kind, self.space.kind
                ),
            ));
        }
        if it.mode == ModeSpec::FixedSet {
            let m = &self.maps[0];
            if m.kind != MapKind::Pwl {
                return Err(invalid("maps[0].kind", "fixed-set analysis needs a pwl map"));
            }
        } else if it.x1.len() != self.point_dim() {
            return Err(invalid(
                "iteration.x1",
                format!("has {} coordinates, expected {}", it.x1.len(), self.point_dim()),
            ));
        }
        if it.x1.iter().any(|v| !v.is_finite()) {
            return Err(invalid("iteration.x1", "coordinates must be finite"));
        }
        let expect_ok = match it.mode {
            ModeSpec::WordBall => it.expect == "unbounded" || it.expect == "bounded",
            ModeSpec::FixedSet => it.expect == "fixed_set",
            _ => Outcome::parse(&it.expect).is_some(),
        };
        if !expect_ok {
            return Err(invalid(
                "iteration.expect",
                format!("unknown expectation {:?} for this mode", it.expect),
            ));
        }
        if it.check_values.is_some() && it.mode != ModeSpec::FixedSet {
            return Err(invalid("iteration.check_values", "only used by mode = \"fixed_set\""));
        }
        Ok(())
    }

    pub fn box_space(&self) -> Option<BoxSpace> {
        let dim = self.space.dim?;
        BoxSpace::cube(dim, self.space.lo?, self.space.hi?).ok()
    }

    pub fn box_start(&self) -> Option<Point> {
        Point::new(self.iteration.x1.clone()).ok()
    }

    pub fn circle_start(&self) -> Option<CirclePoint> {
        self.iteration.x1.first().and_then(|a| CirclePoint::try_new(*a).ok())
    }

    pub fn box_map(&self, m: &MapSpec, field: &str) -> Result<BoxMap, HarnessError> {
        let dim = self.space.dim.unwrap_or(0);
        let need = |name: &str| {
            invalid(
                format!("{field}.{name}"),
                format!("required for kind = \"{}\"", m.kind.as_str()),
            )
        };
        let bad = |name: &str, e: crate::Error| invalid(format!("{field}.{name}"), e.to_string());
        let map = match m.kind {
            MapKind::Identity => BoxMap::identity(),
            MapKind::Affine => {
                let matrix = m.matrix.clone().ok_or_else(|| need("matrix"))?;
                let translation = m.translation.clone().unwrap_or_else(|| vec![0.0; dim]);
                if matrix.len() != dim {
                    return Err(invalid(format!("{field}.matrix"), format!("must be {dim}×{dim}")));
                }
                BoxMap::affine(matrix, translation).map_err(|e| bad("matrix", e))?
            }
            MapKind::Rotation2d => {
                if dim != 2 {
                    return Err(invalid(format!("{field}.kind"), "rotation2d needs space.dim = 2"));
                }
                BoxMap::rotation2d(
                    m.center.unwrap_or([0.0, 0.0]),
                    m.quarter_turns.ok_or_else(|| need("quarter_turns"))?,
                )
            }
            MapKind::Swap => {
                let i = m.i.ok_or_else(|| need("i"))?;
                let j = m.j.ok_or_else(|| need("j"))?;
                BoxMap::swap(dim, i, j).map_err(|e| bad("i", e))?
            }
            MapKind::Pwl => {
                let per: Vec<Vec<[f64; 2]>> = match (&m.knots, &m.per_coordinate) {
                    (Some(k), None) => vec![k.clone(); dim],
                    (None, Some(p)) => {
                        if p.len() != dim {
                            return Err(invalid(
                                format!("{field}.per_coordinate"),
                                format!("has {} entries, expected {dim}", p.len()),
                            ));
                        }
                        p.clone()
                    }
                    (Some(_), Some(_)) => {
                        return Err(invalid(
                            format!("{field}.knots"),
                            "give either knots or per_coordinate, not both",
                        ))
                    }
                    (None, None) => return Err(need("knots")),
                };
                let fs = per
                    .into_iter()
                    .map(|k| PiecewiseLinear::new(k.into_iter().map(|[x, y]| (x, y)).collect()))
                    .collect::<crate::Result<Vec<_>>>()
                    .map_err(|e| bad("knots", e))?;
                BoxMap::coordinatewise(fs).map_err(|e| bad("knots", e))?
            }
            MapKind::Composite => {
                let parts = m.parts.as_ref().ok_or_else(|| need("parts"))?;
                let built = parts
                    .iter()
                    .enumerate()
                    .map(|(k, p)| self.box_map(p, &format!("{field}.parts[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                BoxMap::compose(built)
            }
            MapKind::CircleRotation | MapKind::CircleReflection => {
                return Err(invalid(format!("{field}.kind"), "circle map on a box space"))
            }
        };
        Ok(match m.declared_lipschitz {
            Some(l) => map.with_declared_lipschitz(l),
            None => map,
        })
    }

    pub fn circle_map(&self, m: &MapSpec, field: &str) -> Result<CircleMap, HarnessError> {
        let need = |name: &str| {
            invalid(
                format!("{field}.{name}"),
                format!("required for kind = \"{}\"", m.kind.as_str()),
            )
        };
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(invalid(format!("{field}.{name}"), "must be finite"))
            }
        };
        let mut map = match m.kind {
            MapKind::Identity => CircleMap::identity(),
            MapKind::CircleRotation => CircleMap::rotation(finite("angle", m.angle.ok_or_else(|| need("angle"))?)?),
            MapKind::CircleReflection => CircleMap::reflection(finite("axis", m.axis.ok_or_else(|| need("axis"))?)?),
            MapKind::Composite => {
                let parts = m.parts.as_ref().ok_or_else(|| need("parts"))?;
                CircleMap::compose(
                    parts
                        .iter()
                        .enumerate()
                        .map(|(k, p)| self.circle_map(p, &format!("{field}.parts[{k}]")))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
            _ => return Err(invalid(format!("{field}.kind"), "box map on the circle")),
        };
        map.declared_lipschitz = m.declared_lipschitz;
        Ok(map)
    }

    pub fn group(&self) -> Result<FiniteGroup, HarnessError> {
        match self.group.kind {
            GroupKind::Cyclic => FiniteGroup::cyclic(self.group.order.unwrap_or(0)),
            GroupKind::Table => FiniteGroup::from_table(self.group.table.clone().unwrap_or_default()),
            GroupKind::WordBall | GroupKind::Single => FiniteGroup::cyclic(1),
        }
        .map_err(|e| invalid("group", e.to_string()))
    }

    /// Sampling domain of the box model.
    pub fn box_domain(&self) -> Option<Cuboid> {
        self.box_space().map(|s| s.domain)
    }
}
