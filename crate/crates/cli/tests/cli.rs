use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn latlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latlab"))
        .args(args)
        .env_remove("LATLAB_MAX_CHAINS")
        .output()
        .expect("spawn latlab")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_m5_file() {
    let out = latlab(&["check", &data("m5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("modular=true"));
    assert!(text.contains("distributive=false"));
}

#[test]
fn json_reports_carry_format_1() {
    for args in [
        vec!["check", "@n5"],
        vec!["coverings", "@m5"],
        vec!["chains", "@boolean:3"],
        vec!["filters", "@m5"],
        vec!["filters", "--ideals", "@ladder:3"],
        vec!["omega", "--depth", "3"],
    ] {
        let mut full = vec!["--json"];
        full.extend(&args);
        let out = latlab(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json(&out);
        assert_eq!(v["format"], 1, "{args:?}");
        assert!(v["verdicts"].as_array().is_some_and(|a| !a.is_empty()), "{args:?}");
    }
}

#[test]
fn m5_has_one_class() {
    let v = json(&latlab(&["--json", "coverings", &data("m5.json")]));
    let titles: Vec<&str> = v["sections"].as_array().unwrap().iter().map(|s| s["title"].as_str().unwrap()).collect();
    assert!(titles.contains(&"1 classes of 6 coverings"), "{titles:?}");
}

#[test]
fn n5_chains_skip_modular_verdicts() {
    let out = latlab(&["chains", &data("n5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n/a (not modular)"));
    assert!(!text.contains("Λ bound"));
}

#[test]
fn max_chains_env_caps_enumeration() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_latlab"));
        cmd.args(["chains", "@boolean:4"]);
        match env {
            Some(v) => cmd.env("LATLAB_MAX_CHAINS", v),
            None => cmd.env_remove("LATLAB_MAX_CHAINS"),
        };
        String::from_utf8(cmd.output().unwrap().stdout).unwrap()
    };
    assert!(run(None).contains("24 maximal chains enumerated"));
    let capped = run(Some("5"));
    assert!(capped.contains("5 maximal chains enumerated"), "{capped}");
    assert!(capped.contains("stopped at 5"));
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_latlab"))
        .args(["chains", "--max-chains", "7", "@boolean:4"])
        .env("LATLAB_MAX_CHAINS", "5")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("7 maximal chains enumerated"));
}

#[test]
fn class_filter_and_bad_class() {
    let out = latlab(&["chains", "--class", "0", "@m5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("K0"));
    assert_eq!(latlab(&["chains", "--class", "9", "@m5"]).status.code(), Some(2));
}

#[test]
fn proof_verdicts_set_exit_code() {
    let ok = latlab(&["--json", "proof", &data("modus_ponens.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verdicts"][0]["pass"], true);

    let gap = latlab(&["--json", "proof", &data("coverage_gap.json")]);
    assert_eq!(gap.status.code(), Some(1));
    let v = json(&gap);
    assert_eq!(v["verdicts"][0]["pass"], false);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let not_a_lattice = dir.path().join("v.json");
    std::fs::write(&not_a_lattice, r#"{"elements":["0","a","b"],"covers":[[0,1],[0,2]]}"#).unwrap();
    let garbage = dir.path().join("g.json");
    std::fs::write(&garbage, "{").unwrap();
    let bad_proof = dir.path().join("p.json");
    std::fs::write(&bad_proof, r#"{"generators":["p"],"goal":"p & z"}"#).unwrap();

    for args in [
        vec!["check".to_string(), dir.path().join("missing.json").display().to_string()],
        vec!["check".into(), not_a_lattice.display().to_string()],
        vec!["check".into(), garbage.display().to_string()],
        vec!["check".into(), "@nosuch".into()],
        vec!["proof".into(), bad_proof.display().to_string()],
        vec!["omega".into(), "--depth".into(), "0".into()],
        vec!["omega".into(), "--fixture".into(), "spiral".into()],
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_latlab")).args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8(out.stderr).unwrap().starts_with("latlab: "), "{args:?}");
    }
}

#[test]
fn json_error_object() {
    let out = latlab(&["--json", "check", "@nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["format"], 1);
    assert!(v["error"].as_str().is_some());
}

#[test]
fn digest_tracks_input_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let text = std::fs::read_to_string(data("m5.json")).unwrap();
    std::fs::write(&a, &text).unwrap();
    std::fs::write(&b, format!("{text}\n")).unwrap();
    let digest =
        |p: &std::path::Path| json(&latlab(&["--json", "check", p.to_str().unwrap()]))["inputs_digest"].clone();
    assert_eq!(digest(&a), digest(&a));
    assert_ne!(digest(&a), digest(&b));
}
