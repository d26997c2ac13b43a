use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use strata_core::presentation::{presentation, Presentation};
use strata_core::presets::extorsion;
use strata_core::simplify::simplify;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strata-pi1"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(path: &Path, text: &str) -> String {
    fs::write(path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn graph_dot_for_degree_six() {
    let out = run(&["graph", "--d", "6", "--format", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph "));
    assert!(dot.trim_end().ends_with('}'));
    // four top cells: 0, 2, 4 or 6 simple real roots
    assert!(dot.contains("\"(1 1 1 1 1 1)\""));
    let json = stdout_json(&run(&["graph", "--d", "6", "--format", "json"]));
    assert_eq!(json["rank"], 6);
}

#[test]
fn extorsion_pipeline_through_files() {
    let theta = write(
        &scratch("extorsion.json"),
        r#"{"d": 6, "compositions": [[3, 1], [1, 3], [1, 3, 1, 1], [1, 1, 3, 1], [2, 2, 1, 1], [1, 2, 2, 1], [1, 1, 2, 2], [2, 1, 1, 2]]}"#,
    );
    let pres = scratch("extorsion-presentation.json");
    let out = run(&["presentation", "--theta", &theta, "--output", pres.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let simplified = stdout_json(&run(&["simplify", "--presentation", pres.to_str().unwrap()]));
    assert_eq!(simplified["torsion"], serde_json::json!([2]));
    assert_eq!(simplified["free_certified"], false);

    // the file round trip agrees with the in-process pipeline
    let from_file: Presentation = serde_json::from_str(&fs::read_to_string(&pres).unwrap()).unwrap();
    let in_process = presentation(&extorsion()).unwrap();
    assert_eq!(from_file, in_process);
    let s = simplify(&in_process);
    assert_eq!(simplified["relators"], serde_json::to_value(&s.relators).unwrap());
    assert_eq!(simplified["generators"], serde_json::to_value(&s.generators).unwrap());
    assert_eq!(simplified["log"], serde_json::to_value(&s.log).unwrap());

    let via_preset = stdout_json(&run(&["simplify", "--preset", "extorsion", "--d", "6"]));
    assert_eq!(via_preset, simplified);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        &["presentation", "--preset", "omega-ge2", "--d", "8"][..],
        &["simplify", "--preset", "single-3-only", "--d", "9"],
        &["classify", "--preset", "extorsion", "--d", "8"],
        &["synthesize", "--word", "w(0,0)+ w(1,1)+ w(0,2)- w(0,0)-", "--d", "6"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn non_closed_theta_is_a_precondition_failure() {
    let open = write(&scratch("open.json"), r#"{"d": 6, "compositions": [[2, 2]], "mode": "verify-closed"}"#);
    let out = run(&["presentation", "--theta", &open]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not closed"));

    let closed = write(&scratch("closed.json"), r#"{"d": 6, "compositions": [[2, 2]], "mode": "closure"}"#);
    assert!(run(&["presentation", "--theta", &closed]).status.success());
}

#[test]
fn malformed_inputs_exit_with_two() {
    let outside = write(&scratch("outside.json"), r#"{"d": 6, "compositions": [[3]]}"#);
    assert_eq!(run(&["closure", "--theta", &outside]).status.code(), Some(2));
    let garbage = write(&scratch("garbage.json"), "{ not json");
    assert_eq!(run(&["closure", "--theta", &garbage]).status.code(), Some(2));
    assert_eq!(run(&["synthesize", "--word", "w(9,9)+", "--d", "6"]).status.code(), Some(2));
    assert_eq!(run(&["graph"]).status.code(), Some(2));
}

#[test]
fn synthesized_loop_traces_back() {
    let word = "w(0,0)+ w(1,1)+ w(0,2)- w(0,0)-";
    let path = scratch("gamma11.json");
    let out = run(&["synthesize", "--word", word, "--d", "6", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let traced = stdout_json(&run(&["trace", "--path", path.to_str().unwrap()]));
    assert_eq!(traced["word"], word);
    assert_eq!(traced["crossings"].as_array().unwrap().len(), 4);

    let csv = run(&["locus", "--path", path.to_str().unwrap(), "--resolution", "4"]);
    assert!(csv.status.success());
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("psi,x\n"));
}

#[test]
fn unresolvable_loop_exits_with_four() {
    // x^3 - s x with s: -1 -> 0.7 -> -0.5 passes through the triple root x^3
    let path = write(
        &scratch("triple.json"),
        r#"{"d": 3, "samples": [[0.0, 1.0, 0.0], [0.0, -0.7, 0.0], [0.0, 0.5, 0.0]]}"#,
    );
    assert_eq!(run(&["trace", "--path", &path]).status.code(), Some(4));
}

#[test]
fn stabilize_and_closure_round_trip() {
    let out = stdout_json(&run(&["stabilize", "--preset", "extorsion", "--d", "6", "--to", "8"]));
    assert_eq!(out["d"], 8);
    assert_eq!(out["mode"], "verify-closed");
    let file = write(&scratch("stabilized.json"), &out.to_string());
    let again = stdout_json(&run(&["closure", "--theta", &file]));
    assert_eq!(again, out);
}

#[test]
fn version_and_help() {
    let v = run(&["--version"]);
    assert!(v.status.success());
    assert!(String::from_utf8_lossy(&v.stdout).starts_with("strata-pi1 "));
    let h = run(&["--help"]);
    assert!(String::from_utf8_lossy(&h.stdout).contains("simplify"));
}
