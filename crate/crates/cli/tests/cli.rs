use std::path::{Path, PathBuf};
use std::process::Command;

use ncalg::io::WitnessFile;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
    report: Option<Value>,
}

fn run(args: &[&str]) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = Command::new(env!("CARGO_BIN_EXE_ncalg"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    let report = std::fs::read_to_string(&out).ok().map(|s| serde_json::from_str(&s).unwrap());
    Run {
        status: output.status.code().unwrap(),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
        report,
    }
}

fn result(r: &Run) -> &Value {
    &r.report.as_ref().expect("report written")["result"]
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn center_of_four_cycle() {
    let r = run(&["center", arg(&fixture("c4.quiver")), "--closed-form", "--degree", "10"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let res = result(&r);
    assert_eq!(res["closed_form"], "k[w]");
    assert_eq!(res["agreement"], true);
    let dims: Vec<u64> = res["bruteforce"]["dimensions"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0]);
    assert_eq!(r.report.as_ref().unwrap()["schema_version"], 1);
}

#[test]
fn center_of_kronecker_is_scalars() {
    let r = run(&["center", arg(&fixture("kronecker.quiver")), "--closed-form", "--degree", "5"]);
    assert_eq!(r.status, 0);
    assert_eq!(result(&r)["closed_form"], "k");
    assert_eq!(result(&r)["agreement"], true);
}

#[test]
fn malformed_quiver_reports_line() {
    let r = run(&["center", arg(&fixture("bad_arrow.quiver"))]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    assert!(r.report.is_none());
}

#[test]
fn center_of_algebra_file() {
    let r = run(&["center", arg(&fixture("t2.json"))]);
    assert_eq!(r.status, 0);
    assert_eq!(result(&r)["center"]["dimension"], 1);
}

#[test]
fn analyze_local_algebra() {
    let r = run(&["analyze", arg(&fixture("local.json"))]);
    assert_eq!(r.status, 0);
    let res = result(&r);
    assert_eq!(res["radical"]["basis"], serde_json::json!(["x", "y"]));
    assert_eq!(res["radical"]["nilpotency_index"], 2);
    assert_eq!(res["idempotents"]["all"], serde_json::json!(["0", "1"]));
    assert_eq!(res["units_probe"]["probes"]["x"]["unit"], true);
    assert_eq!(res["units_probe"]["probes"]["1"]["unit"], false);
}

#[test]
fn analyze_counts_idempotents_and_radicals() {
    let r = run(&["analyze", arg(&fixture("qqm2.json")), "--idempotents"]);
    assert_eq!(r.status, 0);
    assert_eq!(result(&r)["idempotents"]["count"], 8);
    assert!(result(&r).get("radical").is_none());
    let r = run(&["analyze", arg(&fixture("t2.json")), "--radical"]);
    assert_eq!(result(&r)["radical"]["dimension"], 1);
    let r = run(&["analyze", arg(&fixture("local.json")), "--idempotent-cap", "1", "--idempotents"]);
    assert_eq!(r.status, 2);
}

#[test]
fn azumaya_corner_locus() {
    let r = run(&[
        "azumaya",
        arg(&fixture("corner_x.json")),
        "--sample-points",
        "0,1,2",
        "--extension-check",
        "2",
    ]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let res = result(&r);
    assert_eq!(res["discriminant"]["squarefree"], "x");
    assert_eq!(res["discriminant"]["normalized"], "x^2");
    assert_eq!(res["sample_points"]["non_azumaya"], serde_json::json!(["0"]));
    assert_eq!(res["extension_check"]["holds"], true);
    assert!(r.stdout.contains("invariant holds"));
}

#[test]
fn azumaya_matrix_order_has_empty_locus() {
    let r = run(&["azumaya", arg(&fixture("m2_order.json")), "--sample-points", "-1,0,1"]);
    assert_eq!(r.status, 0);
    assert_eq!(result(&r)["non_azumaya_poly"], "1");
    assert_eq!(result(&r)["sample_points"]["non_azumaya"], serde_json::json!([]));
}

#[test]
fn azumaya_refuses_characteristic_two() {
    let r = run(&["azumaya", arg(&fixture("corner_gf2.json"))]);
    assert_eq!(r.status, 2);
}

#[test]
fn witness_example_local() {
    let r = run(&["witness", arg(&fixture("example33_witness.json")), "--detect-bound", "1"]);
    assert_eq!(r.status, 0);
    let res = result(&r);
    assert_eq!(res["isomorphism"], true);
    assert_eq!(res["retraction"]["verdict"], "no");
    assert_eq!(res["retraction"]["witness"], "y");
    assert_eq!(res["detectability"]["s"]["status"], "certificate");
    assert_eq!(res["detectability"]["s"]["length"], 1);
}

#[test]
fn witness_conjugation() {
    let r = run(&["witness", arg(&fixture("conjugation_witness.json"))]);
    assert_eq!(r.status, 0);
    let res = result(&r);
    assert_eq!(res["isomorphism"], true);
    assert_eq!(res["retraction"]["witness"], "e21");
    assert_eq!(res["z_retraction"]["verdict"], "yes");
}

#[test]
fn witness_broken_inverse_is_refuted() {
    let r = run(&["witness", arg(&fixture("broken_inverse_witness.json"))]);
    assert_eq!(r.status, 3);
    assert!(r.stdout.contains("not an isomorphism"));
}

#[test]
fn witness_inconclusive_detectability() {
    let r = run(&["witness", arg(&fixture("square_witness.json")), "--detect-bound", "3"]);
    assert_eq!(r.status, 4);
    assert_eq!(result(&r)["detectability"]["s"]["status"], "inconclusive");
}

#[test]
fn exp_witness_round_trips_into_witness_command() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&[
        "derivation",
        arg(&fixture("m2_derivations.json")),
        "--exp",
        "--witness-out",
        arg(dir.path()),
    ]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let path = dir.path().join("ad_e12.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = WitnessFile::parse(&text).unwrap();
    assert_eq!(parsed.to_json() + "\n", text);
    assert_eq!(serde_json::to_value(&parsed).unwrap(), result(&r)["exp"]["ad_e12"]);
    assert!(result(&r)["exp"].get("ad_e11").is_none());
    let again = run(&["witness", arg(&path)]);
    assert_eq!(again.status, 0);
    assert_eq!(result(&again)["isomorphism"], true);
}

#[test]
fn ml_relative_to_family() {
    let r = run(&["derivation", arg(&fixture("m2_derivations.json")), "--ml-family"]);
    assert_eq!(r.status, 0);
    let res = result(&r);
    assert_eq!(res["ml_relative_to_family"]["ml"], serde_json::json!(["e11 + e22"]));
    assert_eq!(res["ml_relative_to_family"]["excluded"], serde_json::json!(["ad_e11"]));
    assert_eq!(res["derivations"]["ad_e12"]["index"], 3);
    assert_eq!(res["derivations"]["ad_e11"]["locally_nilpotent"], false);
    assert!(r.stdout.contains("ML relative to family"));
}

#[test]
fn non_derivation_is_an_input_error() {
    let r = run(&["derivation", arg(&fixture("not_derivation.json"))]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("(e11, e11)"), "{}", r.stderr);
}

#[test]
fn growth_classes() {
    let r = run(&["growth", arg(&fixture("two_loops.quiver"))]);
    assert_eq!(result(&r)["growth"]["class"], "exponential");
    let r = run(&["growth", arg(&fixture("a3.quiver"))]);
    assert_eq!(result(&r)["growth"]["class"], "finite_dimensional");
    let r = run(&["growth", arg(&fixture("c4.quiver")), "--degree", "20"]);
    let counts = result(&r)["path_counts"].as_array().unwrap().clone();
    assert_eq!(counts.len(), 21);
    assert!(counts.iter().all(|c| c == "4"));
}

#[test]
fn reports_are_deterministic() {
    let input = fixture("corner_x_xm2.json");
    let args = ["azumaya", arg(&input), "--sample-points", "0,2,1,-1,3,5", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        serde_json::to_string(result(&a)).unwrap(),
        serde_json::to_string(result(&b)).unwrap()
    );
    assert_eq!(a.report.unwrap()["inputs"], b.report.unwrap()["inputs"]);
}
