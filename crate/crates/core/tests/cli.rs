//! Command-line behaviour: exit codes, data files, schema conformance.

use omloq::cli::{self, EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use serde_json::Value;
use std::path::PathBuf;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["omloq"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let r = run(&a);
    let v = serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.out));
    (r.code, v)
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", &data("mo2.lat")]).code, EXIT_PASS);
    assert_eq!(run(&["check", &data("mo2.json")]).code, EXIT_PASS);
    let o6 = run(&["check", &data("o6.lat")]);
    assert_eq!(o6.code, EXIT_FAIL);
    assert!(o6.out.contains("orthomodular"), "{}", o6.out);
    assert_eq!(run(&["check", &data("malformed.lat")]).code, EXIT_INPUT);
    assert_eq!(run(&["check", &data("no_such_file.lat")]).code, EXIT_INPUT);
    assert_eq!(run(&["check", "catalog:nonsense"]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn error_goes_to_stderr_in_text_mode() {
    let r = run(&["check", &data("malformed.lat")]);
    assert!(!r.err.is_empty());
}

#[test]
fn sasaki_prints_projection_and_hook() {
    let r = run(&["sasaki", &data("mo2.lat"), "a", "b"]);
    assert_eq!(r.code, EXIT_PASS);
    let (_, v) = run_json(&["sasaki", &data("mo2.lat"), "a", "b"]);
    assert_eq!(v["pi"], "a", "{v}");
    assert_eq!(v["hook"], "a'", "{v}");
    assert_eq!(
        run(&["sasaki", &data("mo2.lat"), "a", "zz"]).code,
        EXIT_INPUT
    );
}

#[test]
fn caps_exit_with_three() {
    assert_eq!(
        run(&["toda", "catalog:mo:2", "--monoid-cap", "5"]).code,
        EXIT_CAP
    );
    assert_eq!(
        run(&["tmonoid", "catalog:mo:2", "--monoid-cap", "5"]).code,
        EXIT_CAP
    );
    assert_eq!(
        run(&["linmaps", "catalog:mo:2", "--lin-cap", "10"]).code,
        EXIT_CAP
    );
}

#[test]
fn non_oml_input_fails_downstream_commands() {
    assert_eq!(run(&["toda", &data("o6.lat")]).code, EXIT_FAIL);
    assert_eq!(run(&["linmaps", &data("o6.lat")]).code, EXIT_FAIL);
}

#[test]
fn tmonoid_writes_cayley_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mo3.csv");
    let r = run(&[
        "tmonoid",
        &data("mo3.lat"),
        "--cayley",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.out);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 38 * 38);
    assert_eq!(csv.lines().next(), Some("row,col,product"));
}

#[test]
fn equiv_with_morphism_files() {
    let r = run(&[
        "equiv",
        &data("mo2.lat"),
        "--morphism",
        &data("mo2_swap.morph"),
    ]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.out);
    let r = run(&[
        "equiv",
        &data("b2.lat"),
        "--morphism",
        &data("b2_relabel.morph"),
    ]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.out);
    // The morphism declares a different source lattice.
    let r = run(&[
        "equiv",
        &data("mo2.lat"),
        "--morphism",
        &data("b2_relabel.morph"),
    ]);
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn witness_with_custom_x() {
    let (code, v) = run_json(&["witness", "--x", "1,2,3"]);
    assert_eq!(code, EXIT_PASS, "{v}");
    assert_eq!(v["pi_v_x"], serde_json::json!([["1", "2", "0"]]));
    // x inside u projects monotonically, so it is not a witness.
    let (code, v) = run_json(&["witness", "--x", "1,0,0"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(v["x"], serde_json::json!([["1", "0", "0"]]));
    assert_eq!(run(&["witness", "--x", "1,2"]).code, EXIT_INPUT);
    assert_eq!(run(&["witness", "--x", "a,b,c"]).code, EXIT_INPUT);
}

#[test]
fn seed_is_echoed() {
    let r = run(&["toda", "catalog:mo:2", "--seed", "17"]);
    assert!(r.out.trim_end().ends_with("seed: 17"), "{}", r.out);
    let (_, v) = run_json(&["toda", "catalog:mo:2", "--seed", "17"]);
    assert_eq!(v["seed"], 17);
}

#[test]
fn same_seed_same_report() {
    let (_, a) = run_json(&["toda", "catalog:mo:2", "--seed", "1"]);
    let (_, b) = run_json(&["toda", "catalog:mo:2", "--seed", "1"]);
    assert_eq!(a, b);
}

#[test]
fn every_command_matches_the_schema() {
    let schema_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let (mo2, mo3, o6) = (data("mo2.lat"), data("mo3.lat"), data("o6.lat"));
    let swap = data("mo2_swap.morph");
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", &mo2],
        vec!["check", &o6],
        vec!["check", "catalog:nonsense"],
        vec!["sasaki", &mo2, "a", "b'"],
        vec!["linmaps", &mo2],
        vec!["linmaps", "catalog:mo:3"],
        vec!["tmonoid", &mo3],
        vec!["toda", &mo2],
        vec!["toda", "catalog:mo:2", "--monoid-cap", "5"],
        vec!["equiv", &mo2, "--morphism", &swap],
        vec!["witness"],
        vec!["witness", "--x", "0,1,1"],
    ];
    let mut seen = std::collections::BTreeSet::new();
    for args in runs {
        let (code, v) = run_json(&args);
        let errors: Vec<String> = validator
            .iter_errors(&v)
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        assert!(errors.is_empty(), "{args:?}: {errors:#?}");
        assert_eq!(v["exit_code"], code, "{args:?}");
        seen.insert(v["command"].as_str().unwrap().to_string());
    }
    assert_eq!(seen.len(), 7, "{seen:?}");
}
