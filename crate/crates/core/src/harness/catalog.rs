//! Scenario configs shipped with the crate.

use super::config::{parse_config, ScenarioConfig};
use super::HarnessError;

/// `(name, TOML text)` for every shipped scenario.
pub const SCENARIOS: &[(&str, &str)] = &[
    ("s1_rotation", include_str!("../../scenarios/s1_rotation.toml")),
    ("s2_periodic", include_str!("../../scenarios/s2_periodic.toml")),
    ("s3_involution", include_str!("../../scenarios/s3_involution.toml")),
    ("s4_fa_map", include_str!("../../scenarios/s4_fa_map.toml")),
    ("s5_word_ball", include_str!("../../scenarios/s5_word_ball.toml")),
    (
        "s6a_circle_rotation",
        include_str!("../../scenarios/s6a_circle_rotation.toml"),
    ),
    ("s6b_antipodal", include_str!("../../scenarios/s6b_antipodal.toml")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SCENARIOS.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Option<&'static str> {
    SCENARIOS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<ScenarioConfig, HarnessError> {
    let t = text(name).ok_or_else(|| HarnessError::Invalid {
        field: "name".into(),
        message: format!("no shipped scenario called {name:?}"),
    })?;
    parse_config(t)
}

pub fn all() -> Result<Vec<ScenarioConfig>, HarnessError> {
    names().map(load).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_configs_load_and_round_trip() {
        for name in names() {
            let cfg = load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(cfg.name, name);
            assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg, "{name}");
        }
    }
}
