use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperfix"))
}

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.toml"))
}

#[test]
fn list_scenarios_names_every_config() {
    let out = bin().arg("list-scenarios").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in hyperfix::harness::catalog::names() {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn run_exit_codes_follow_expectations() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["s1_rotation", "s6b_antipodal"] {
        let status = bin()
            .args(["run", "--config"])
            .arg(scenario(name))
            .arg("--out")
            .arg(dir.path().join(name))
            .status()
            .unwrap();
        assert!(status.success(), "{name}");
    }

    let bad = dir.path().join("bad.toml");
    let text = fs::read_to_string(scenario("s6b_antipodal"))
        .unwrap()
        .replace("expect = \"hypothesis_violated\"", "expect = \"converged\"");
    fs::write(&bad, text).unwrap();
    let status = bin()
        .args(["run", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path().join("bad"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    let broken = dir.path().join("broken.toml");
    fs::write(&broken, "name = \n").unwrap();
    let out = bin().args(["run", "--config"]).arg(&broken).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn verify_prints_one_line_per_suite() {
    let out = bin()
        .args(["verify", "--seed", "5", "--samples", "200"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,cases,violations,max_slack,seed"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), hyperfix::harness::suites::SUITES.len());
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 5, "{row}");
        assert_eq!(cols[2], "0", "{row}");
    }
}

#[test]
fn verify_is_deterministic() {
    let a = bin()
        .args(["verify", "--seed", "11", "--samples", "100"])
        .output()
        .unwrap();
    let b = bin()
        .args(["verify", "--seed", "11", "--samples", "100"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}
