mod common;

use common::{bin, code, run, stderr, stdout};

#[test]
fn golden_files() {
    let problems = common::golden_mismatches();
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn exit_code_contract() {
    let problems = common::exit_mismatches();
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn closed_form_agrees_with_iterate() {
    let problems = common::oracle_mismatches("80");
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn demo_rerun_is_byte_identical() {
    let problems = common::demo_rerun_mismatches("99");
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn seed_env_fallback() {
    let args = ["iterate", "--k", "2", "--a", "1/2", "--random", "--steps", "6"];
    let flag = run(&[&args[..], &["--seed", "41"]].concat());
    let env = bin().args(args).env("RDE_LAB_SEED", "41").output().unwrap();
    let default = run(&args);
    assert_eq!(code(&flag), 0);
    assert_eq!(stdout(&flag), stdout(&env));
    assert_ne!(stdout(&flag), stdout(&default));
    // An explicit flag wins over the environment.
    let both = bin()
        .args(args)
        .args(["--seed", "41"])
        .env("RDE_LAB_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&both), stdout(&flag));
}

#[test]
fn random_windows_are_exact_dyadics() {
    let output = run(&[
        "iterate", "--k", "3", "--a", "2", "--random", "--seed", "3", "--steps", "0",
    ]);
    let text = stdout(&output);
    let rows: Vec<&str> = text
        .lines()
        .skip(1)
        .take(4)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    for value in rows {
        let (numer, denom) = value.split_once('/').unwrap_or((value, "1"));
        let numer: i64 = numer.parse().unwrap();
        let denom: i64 = denom.parse().unwrap();
        assert!(numer != 0 && numer.abs() < denom);
        assert_eq!(65536 % denom, 0, "{value}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let output = run(&[
        "iterate",
        "--k",
        "1",
        "--a",
        "2",
        "--init",
        "1,1",
        "--steps",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).is_empty());
    let golden = std::fs::read_to_string(common::golden_dir().join("iterate_k1_a2.csv")).unwrap();
    assert_eq!(std::fs::read_to_string(path).unwrap(), golden);
}

#[test]
fn demo_metadata_records_panels() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&["demo-figure", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&output), 0, "{}", stderr(&output));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 20_170_601);
    let panels = meta["panels"].as_array().unwrap();
    assert_eq!(panels.len(), 6);
    let ks: Vec<u64> = panels.iter().map(|p| p["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, [2, 2, 2, 4, 2, 4]);
    assert!(panels[0]["final_abs"].as_f64().unwrap() < 1e-6);
    assert_eq!(panels[2]["detected_period"], 4);
    assert_eq!(panels[3]["detected_period"], 8);
    assert!(!dir.path().join("panel1.svg").exists());
    for p in 1..=6 {
        let csv = std::fs::read_to_string(dir.path().join(format!("panel{p}.csv"))).unwrap();
        assert!(csv.starts_with("n,x\n"));
        assert!(csv.ends_with("# terminator=completed\n"));
    }
}

#[test]
fn distance_reports_nearest_root() {
    let output = run(&[
        "distance", "--k", "1", "--a", "2", "--init", "1,-1.3", "--m-max", "50",
    ]);
    assert_eq!(code(&output), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(json["m"], 2);
    let distance = json["distance"].as_f64().unwrap();
    assert!((distance - (4.0 / 3.0 - 1.3)).abs() < 1e-12, "{distance}");
}
