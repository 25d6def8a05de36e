#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rde-lab"));
    cmd.env_remove("RDE_LAB_SEED");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rde-lab")
}

pub fn code(output: &Output) -> i32 {
    output.status.code().expect("exited normally")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// `(name, args, expected exit code)` for every golden-file case. The
/// expected stdout lives in `tests/golden/<name>`.
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    (
        "iterate_k1_a2.csv",
        &[
            "iterate",
            "--k",
            "1",
            "--a",
            "2",
            "--init",
            "1,1",
            "--steps",
            "3",
            "--backend",
            "rational",
        ],
        0,
    ),
    (
        "iterate_singular_m1.csv",
        &[
            "iterate",
            "--k",
            "1",
            "--a",
            "2",
            "--init",
            "1,-2",
            "--steps",
            "5",
            "--backend",
            "rational",
        ],
        2,
    ),
    (
        "iterate_singular_m2_float.csv",
        &[
            "iterate",
            "--k",
            "1",
            "--a",
            "2",
            "--init",
            "1,-4/3",
            "--steps",
            "5",
            "--backend",
            "float",
        ],
        2,
    ),
    (
        "iterate_random_seed7.csv",
        &[
            "iterate",
            "--k",
            "2",
            "--a",
            "1/2",
            "--random",
            "--seed",
            "7",
            "--steps",
            "12",
            "--backend",
            "float",
        ],
        0,
    ),
    (
        "closed_form_k2_a3.csv",
        &[
            "closed-form",
            "--k",
            "2",
            "--a",
            "3",
            "--init",
            "1/2,2,-3/4",
            "--steps",
            "12",
        ],
        0,
    ),
    (
        "closed_form_n3.txt",
        &["closed-form", "--k", "1", "--a", "2", "--init", "1,1", "--n", "3"],
        0,
    ),
    (
        "check_forbidden_m2.json",
        &["check", "--k", "1", "--a", "2", "--init", "1,-4/3"],
        3,
    ),
    (
        "check_not_forbidden.json",
        &["check", "--k", "1", "--a", "2", "--init", "2,1"],
        0,
    ),
    (
        "check_a1_m3.json",
        &["check", "--k", "2", "--a", "1", "--init", "1,5,-1/3"],
        3,
    ),
    (
        "check_zero_initial.json",
        &["check", "--k", "2", "--a", "2", "--init", "1,0,1"],
        3,
    ),
    (
        "enumerate_k2_a2.csv",
        &["enumerate", "--k", "2", "--a", "2", "--m-max", "4"],
        0,
    ),
    (
        "classify_periodic.json",
        &[
            "classify",
            "--k",
            "2",
            "--a",
            "1/2",
            "--init",
            "1/2,1/4,1",
            "--confirm",
        ],
        0,
    ),
    (
        "classify_decay.json",
        &["classify", "--k", "1", "--a", "2", "--init", "1/2,1"],
        0,
    ),
    (
        "classify_singular.json",
        &["classify", "--k", "1", "--a", "2", "--init", "1,-4/3"],
        2,
    ),
];

/// Smoke configurations for the `closed-form` versus `iterate` check.
pub const SMOKE_CONFIGS: &[(&str, &str, &str)] = &[
    ("1", "2", "1,1"),
    ("2", "3", "1/2,2,-3/4"),
    ("3", "1/2", "1,-1/2,2,3/4"),
    ("2", "1", "1/3,-2,5/7"),
    ("4", "7/5", "1/8,-1/4,3,1/2,-5/2"),
    ("2", "-3", "1,2,1/5"),
];

/// Runs every golden case and returns a description of each mismatch.
pub fn golden_mismatches() -> Vec<String> {
    let mut problems = Vec::new();
    for (name, args, want_code) in GOLDEN_CASES {
        let output = run(args);
        let expected = std::fs::read_to_string(golden_dir().join(name))
            .unwrap_or_else(|e| panic!("golden file {name}: {e}"));
        if code(&output) != *want_code {
            problems.push(format!("{name}: exit {} != {want_code}", code(&output)));
        }
        if stdout(&output) != expected {
            problems.push(format!("{name}: stdout differs from golden file"));
        }
    }
    problems
}

/// Exit-code cases that are not golden-file backed: `(args, code, stderr
/// fragment)`.
pub const EXIT_CASES: &[(&[&str], i32, &str)] = &[
    (
        &[
            "iterate", "--k", "1", "--a", "2", "--init", "1,1,1", "--steps", "3",
        ],
        1,
        "expected 2 initial values",
    ),
    (
        &[
            "check",
            "--k",
            "1",
            "--a",
            "2",
            "--init",
            "1,1",
            "--backend",
            "float",
        ],
        1,
        "rational backend",
    ),
    (&["iterate", "--k", "1", "--a", "0", "--init", "1,1"], 1, "error"),
    (&["iterate", "--k", "0", "--a", "2", "--init", "1"], 1, "error"),
    (&["iterate", "--k", "1", "--a", "2", "--init", "1,x"], 1, "--init"),
    (&["iterate", "--k", "1", "--a", "2"], 1, "--init"),
    (
        &["iterate", "--k", "1", "--a", "2", "--init", "1,1", "--random"],
        1,
        "cannot be used",
    ),
    (&["frobnicate"], 1, "unrecognized subcommand"),
    (
        &[
            "classify",
            "--k",
            "1",
            "--a",
            "2",
            "--init",
            "1,1",
            "--confirm",
            "--tol",
            "-1",
        ],
        1,
        "tolerance",
    ),
    (
        &[
            "closed-form",
            "--k",
            "1",
            "--a",
            "2",
            "--init",
            "1,-4/3",
            "--n",
            "5",
        ],
        2,
        "singular",
    ),
    (
        &["closed-form", "--k", "1", "--a", "2", "--init", "0,1", "--n", "5"],
        2,
        "singular",
    ),
    (
        &["demo-figure", "--out", "/proc/rde-lab-unwritable"],
        1,
        "cannot write",
    ),
    (&["--help"], 0, ""),
    (&["--version"], 0, ""),
];

pub fn exit_mismatches() -> Vec<String> {
    let mut problems = Vec::new();
    for (args, want_code, fragment) in EXIT_CASES {
        let output = run(args);
        if code(&output) != *want_code {
            problems.push(format!("{args:?}: exit {} != {want_code}", code(&output)));
        }
        if !stderr(&output).contains(fragment) {
            problems.push(format!(
                "{args:?}: stderr lacks {fragment:?}: {}",
                stderr(&output)
            ));
        }
    }
    problems
}

/// Row-by-row agreement of `closed-form --steps` and `iterate` on the
/// exact backend.
pub fn oracle_mismatches(steps: &str) -> Vec<String> {
    let mut problems = Vec::new();
    for (k, a, init) in SMOKE_CONFIGS {
        let common = ["--k", k, "--a", a, "--init", init, "--steps", steps];
        let direct = run(&[&["iterate"][..], &common[..]].concat());
        let closed = run(&[&["closed-form"][..], &common[..]].concat());
        if code(&direct) != 0 || code(&closed) != 0 {
            problems.push(format!(
                "k={k} a={a}: exit codes {} / {}",
                code(&direct),
                code(&closed)
            ));
        }
        if stdout(&direct) != stdout(&closed) {
            problems.push(format!("k={k} a={a}: closed-form and iterate differ"));
        }
    }
    problems
}

/// Runs `demo-figure` twice into fresh directories and lists files whose
/// bytes differ, plus any expected file that is missing.
pub fn demo_rerun_mismatches(seed: &str) -> Vec<String> {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let mut problems = Vec::new();
    for dir in [first.path(), second.path()] {
        let output = run(&[
            "demo-figure",
            "--out",
            dir.to_str().unwrap(),
            "--seed",
            seed,
            "--plots",
        ]);
        if code(&output) != 0 {
            problems.push(format!("demo-figure exit {}", code(&output)));
        }
    }
    let mut names: Vec<String> = (1..=6)
        .flat_map(|p| [format!("panel{p}.csv"), format!("panel{p}.svg")])
        .collect();
    names.push("metadata.json".into());
    for name in names {
        match (
            std::fs::read(first.path().join(&name)),
            std::fs::read(second.path().join(&name)),
        ) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => problems.push(format!("{name} differs between runs")),
            _ => problems.push(format!("{name} missing")),
        }
    }
    problems
}
