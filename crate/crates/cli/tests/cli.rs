use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use stonesset_cli::document::{to_canonical_json, PosetDocument, StructureDocument};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stonesset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str], expected_exit: i32) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(expected_exit),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty());
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn input_error(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
    assert!(stderr.starts_with("error: "));
    stderr
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

/// Compare against `tests/golden/<name>.json`; `STONESSET_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str], expected_exit: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(expected_exit), "{args:?}");
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("STONESSET_BLESS").is_some() {
        std::fs::write(&path, &stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).expect("golden file exists");
    assert_eq!(stdout, expected, "{name}");
}

#[test]
fn bijection_on_pure4b() {
    let r = report(
        &["bijection-check", "--structure", &fixture("pure4b.json")],
        0,
    );
    assert_eq!(r["command"], "bijection-check");
    assert_eq!(r["result"]["witnesses"], 1);
    assert_eq!(r["result"]["families"], 1);
    assert_eq!(r["result"]["matched"], true);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn stable_check_on_pure4b_fails_with_one_head() {
    let r = report(
        &[
            "stable-check",
            "--structure",
            &fixture("pure4b.json"),
            "--depth",
            "4",
        ],
        1,
    );
    assert_eq!(r["result"]["stable"], false);
    assert_eq!(r["result"]["heads_covered"], serde_json::json!(["m1"]));
    assert_eq!(r["result"]["heads_total"], 2);
    assert_eq!(r["result"]["formulations_agree"], true);
}

#[test]
fn circle_probe_fails_at_level_one() {
    let r = report(&["sset", "--preset", "circle", "--depth", "2"], 1);
    assert_eq!(r["result"]["section_exists"], false);
    assert_eq!(r["result"]["failure_level"], 1);
    let r = report(&["sset", "--preset", "simplex:2", "--depth", "3"], 0);
    assert_eq!(r["result"]["section_exists"], true);
    assert_eq!(r["result"]["failure_level"], Value::Null);
}

#[test]
fn golden_reports() {
    golden(
        "bijection-pure4b",
        &["bijection-check", "--structure", &fixture("pure4b.json")],
        0,
    );
    golden(
        "stable-pure4b",
        &[
            "stable-check",
            "--structure",
            &fixture("pure4b.json"),
            "--depth",
            "4",
        ],
        1,
    );
    golden(
        "sset-circle",
        &["sset", "--preset", "circle", "--depth", "2"],
        1,
    );
    golden(
        "orbits-lin3",
        &["orbits", "--structure", &fixture("lin3.json")],
        0,
    );
    golden(
        "product-lin3",
        &[
            "product",
            "--structure",
            &fixture("lin3.json"),
            "--witness",
            "m2",
            "--witness",
            "m1",
        ],
        0,
    );
    golden(
        "sset-diamond",
        &[
            "sset",
            "--poset",
            &fixture("diamond-poset.json"),
            "--depth",
            "2",
        ],
        0,
    );
}

#[test]
fn fixtures_are_canonical() {
    for name in [
        "pure3",
        "pure4",
        "pure4b",
        "lin3",
        "lin4",
        "cyc4",
        "singleton",
    ] {
        let text = std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        let doc: StructureDocument = serde_json::from_str(&text).unwrap();
        let m = doc.to_structure().unwrap();
        assert_eq!(
            to_canonical_json(&StructureDocument::from_structure(&m)),
            text,
            "{name}"
        );
    }
    let text = std::fs::read_to_string(fixture("diamond-poset.json")).unwrap();
    let doc: PosetDocument = serde_json::from_str(&text).unwrap();
    doc.to_poset().unwrap();
    assert_eq!(to_canonical_json(&doc), text);
}

#[test]
fn digest_ignores_presentation() {
    let shuffled = temp_file(
        "lin3-shuffled.json",
        r#"{"parameters": [], "relations": {"lt": {"arity": 2, "tuples":
            [["m2","m3"],["m1","m3"],["m1","m2"]]}}, "universe": ["m1","m2","m3"]}"#,
    );
    let a = report(&["orbits", "--structure", &fixture("lin3.json")], 0);
    let b = report(&["orbits", "--structure", &shuffled], 0);
    assert_eq!(a, b);
}

#[test]
fn input_errors_exit_two() {
    input_error(&["orbits", "--structure", &temp_file("broken.json", "{")]);
    input_error(&[
        "orbits",
        "--structure",
        &temp_file("extra.json", r#"{"universe": ["a"], "x": 1}"#),
    ]);
    input_error(&[
        "orbits",
        "--structure",
        &temp_file(
            "arity.json",
            r#"{"universe": ["a"], "relations": {"r": {"arity": 2, "tuples": [["a"]]}}}"#,
        ),
    ]);
    input_error(&[
        "orbits",
        "--structure",
        &temp_file(
            "stranger.json",
            r#"{"universe": ["a"], "parameters": ["b"]}"#,
        ),
    ]);
    input_error(&["orbits", "--structure", "/nonexistent/structure.json"]);
    let budget = input_error(&[
        "orbits",
        "--structure",
        &fixture("lin4.json"),
        "--budget",
        "10",
    ]);
    assert!(budget.contains("budget"));
    input_error(&[
        "orbits",
        "--structure",
        &fixture("lin4.json"),
        "--max-universe",
        "3",
    ]);
    input_error(&["sset", "--preset", "torus"]);
    input_error(&["sset", "--preset", "boundary:0"]);
    input_error(&[
        "genstable",
        "--structure",
        &fixture("pure3.json"),
        "--witness",
        "m1",
    ]);
    input_error(&[
        "product",
        "--structure",
        &fixture("lin3.json"),
        "--witness",
        "m1",
    ]);
    input_error(&[
        "morley",
        "--structure",
        &fixture("lin3.json"),
        "--witness",
        "m9",
        "--steps",
        "2",
    ]);
    input_error(&[
        "reduct",
        "--structure",
        &fixture("lin3.json"),
        "--drop-relation",
        "gt",
    ]);
    input_error(&[
        "diagram",
        "--structure",
        &fixture("lin3.json"),
        "--subset",
        "",
    ]);
    input_error(&[
        "sections",
        "--structure",
        &fixture("lin3.json"),
        "--mode",
        "some",
    ]);
    input_error(&["no-such-command"]);
}

#[test]
fn exit_codes_follow_checked_properties() {
    let lin3 = fixture("lin3.json");
    let pure4 = fixture("pure4.json");
    report(&["stable-check", "--structure", &lin3], 0);
    report(&["stable-check", "--structure", &pure4], 1);
    let found = report(
        &[
            "sections",
            "--structure",
            &pure4,
            "--depth",
            "3",
            "--mode",
            "one",
        ],
        0,
    );
    assert_eq!(found["result"]["found"], true);
    let none = report(&["sections", "--structure", &pure4, "--mode", "one"], 1);
    assert_eq!(none["result"]["found"], false);
    let count = report(&["sections", "--structure", &pure4, "--mode", "count"], 0);
    assert_eq!(count["result"]["count"], 0);
    report(
        &[
            "relative-stable-check",
            "--structure",
            &lin3,
            "--drop-relation",
            "lt",
            "--depth",
            "2",
        ],
        0,
    );
    report(&["relative-stable-check", "--structure", &pure4], 1);
}

#[test]
fn enumerated_families_name_their_witnesses() {
    let r = report(
        &[
            "sections",
            "--structure",
            &fixture("lin3.json"),
            "--mode",
            "enumerate",
        ],
        0,
    );
    assert_eq!(r["result"]["count"], 3);
    let families = r["result"]["families"].as_array().unwrap();
    for (f, name) in families.iter().zip(["m1", "m2", "m3"]) {
        assert_eq!(f["head"], serde_json::json!([name]));
        assert_eq!(f["realized_by"], name);
    }
    let mono = report(
        &[
            "sections",
            "--structure",
            &fixture("lin3.json"),
            "--mode",
            "enumerate",
            "--index-class",
            "monotone",
        ],
        0,
    );
    assert_eq!(mono["result"]["families"], r["result"]["families"]);
}

#[test]
fn reduct_and_lifting_commands() {
    let lin3 = fixture("lin3.json");
    let r = report(
        &[
            "reduct",
            "--structure",
            &lin3,
            "--drop-relation",
            "lt",
            "--depth",
            "4",
        ],
        0,
    );
    assert_eq!(
        r["result"]["reduct_orbit_counts"],
        serde_json::json!([1, 2, 5, 14])
    );
    assert_eq!(
        r["result"]["orbit_counts"],
        serde_json::json!([3, 9, 27, 81])
    );
    let b = fixture("pure4b.json");
    let r = report(&["reduct", "--structure", &b, "--params-keep", ""], 0);
    assert_eq!(r["result"]["reduct"]["parameters"], serde_json::json!([]));
    let r = report(
        &[
            "lift-type",
            "--structure",
            &b,
            "--witness",
            "m2",
            "--subset",
            "m1,m3",
        ],
        0,
    );
    assert_eq!(
        r["result"]["type_over_first"],
        serde_json::json!(["m2", "m1"])
    );
    let r = report(
        &[
            "diagram",
            "--structure",
            &b,
            "--subset",
            "m3,m1",
            "--depth",
            "2",
        ],
        0,
    );
    assert_eq!(r["result"]["subset"], serde_json::json!(["m1", "m3"]));
    assert_eq!(r["result"]["levels"][1]["tuples"], 4);
}

#[test]
fn algebra_commands() {
    let lin3 = fixture("lin3.json");
    let r = report(
        &[
            "product",
            "--structure",
            &lin3,
            "--witness",
            "m3",
            "--witness",
            "m1",
            "--witness",
            "m2",
        ],
        0,
    );
    assert_eq!(
        r["result"]["joint_type"],
        serde_json::json!(["m3", "m1", "m2"])
    );
    assert_eq!(r["result"]["associative"], true);
    let r = report(
        &[
            "morley",
            "--structure",
            &lin3,
            "--witness",
            "m2",
            "--steps",
            "3",
        ],
        0,
    );
    assert_eq!(
        r["result"]["sequence_type"],
        serde_json::json!(["m2", "m2", "m2"])
    );
    let r = report(&["genstable", "--structure", &lin3], 0);
    assert_eq!(r["result"]["types"].as_array().unwrap().len(), 3);
    let r = report(
        &[
            "borel",
            "--structure",
            &fixture("pure4b.json"),
            "--depth",
            "2",
        ],
        0,
    );
    assert_eq!(r["result"]["class_count"], 24);
    assert_eq!(r["result"]["convention"], "normalized");
}

#[test]
fn reports_are_reproducible() {
    let cases: Vec<Vec<String>> = ["pure4b", "lin3", "cyc4"]
        .iter()
        .flat_map(|f| {
            [
                "orbits",
                "automorphisms",
                "bijection-check",
                "stable-check",
                "borel",
            ]
            .iter()
            .map(move |c| {
                vec![
                    c.to_string(),
                    "--structure".into(),
                    fixture(&format!("{f}.json")),
                ]
            })
        })
        .collect();
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
