use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;
use wittlift::algebra::Fq;
use wittlift::groups::{jordan_block_rep, s3_natural_rep};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wittlift"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wittlift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stderr))
    })
}

/// One full deterministic run shared by the report tests.
fn full_report() -> &'static (PathBuf, Output) {
    static REPORT: OnceLock<(PathBuf, Output)> = OnceLock::new();
    REPORT.get_or_init(|| {
        let path = tmp("full.json");
        let out = run(&["verify-paper", "--deterministic", "--out", path.to_str().unwrap()]);
        (path, out)
    })
}

#[test]
fn verify_paper_fails_only_on_strong_rigidity_of_sl2_f5() {
    let (path, out) = full_report();
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 11);
    let failing: Vec<(String, String)> = records
        .iter()
        .flat_map(|r| {
            r["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "FAIL").map(move |c| {
                (r["tag"].as_str().unwrap().to_string(), c["name"].as_str().unwrap().to_string())
            })
        })
        .collect();
    assert_eq!(failing, vec![("rigidity".to_string(), "SL_2(F_5) natural rep is STRONGLY_RIGID".to_string())]);
    assert_eq!(report["summary"]["pass"], 10);
    assert_eq!(report["summary"]["fail"], 1);
}

#[test]
fn deterministic_reports_are_byte_identical_across_thread_counts() {
    let (path, _) = full_report();
    let other = tmp("single-thread.json");
    let out = bin()
        .env("WITTLIFT_THREADS", "1")
        .args(["verify-paper", "--deterministic", "--out", other.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(std::fs::read(path).unwrap(), std::fs::read(other).unwrap());
}

#[test]
fn recheck_accepts_report_and_names_tampered_record() {
    let (path, _) = full_report();
    let out = run(&["verify-paper", "--recheck", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let rec = report["records"].as_array_mut().unwrap().iter_mut().find(|r| r["tag"] == "tame").unwrap();
    let g = &mut rec["witnesses"][0]["gram"][0][1];
    *g = Value::from((g.as_u64().unwrap() + 1) % 3);
    let bad = tmp("tampered.json");
    std::fs::write(&bad, serde_json::to_string(&report).unwrap()).unwrap();
    let out = run(&["verify-paper", "--recheck", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tame"), "{err}");
}

#[test]
fn recheck_rejects_tampered_certificate() {
    let (path, _) = full_report();
    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let rec = report["records"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|r| r["tag"] == "elementary-obstructions")
        .unwrap();
    let w = rec["witnesses"].as_array_mut().unwrap().iter_mut().find(|w| w["kind"] == "certificate").unwrap();
    w["verdict"] = Value::from("LIFTS");
    let bad = tmp("tampered-cert.json");
    std::fs::write(&bad, serde_json::to_string(&report).unwrap()).unwrap();
    let out = run(&["verify-paper", "--recheck", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("elementary-obstructions"));
}

#[test]
fn only_runs_one_section() {
    let out = run(&["verify-paper", "--only", "odd-power", "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_stdout(&out);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["tag"], "odd-power");
    assert_eq!(records[0]["status"], "PASS");

    let out = run(&["verify-paper", "--only", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn markdown_report_labels_status() {
    let md = tmp("report.md");
    let out = run(&["verify-paper", "--only", "tame", "--markdown", md.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(md).unwrap();
    assert!(text.contains("## tame: PASS"));
    assert!(text.contains("MODEL coordinates"));
}

fn write_rep(name: &str, v: &Value) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

#[test]
fn check_lift_s3_natural_lifts_with_mod4_matrices() {
    let rep = write_rep("s3.json", &s3_natural_rep().to_json().to_value());
    let out = run(&["check-lift", "--rep", rep.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json_stdout(&out);
    let cert = &report["records"][0]["witnesses"][0];
    assert_eq!(cert["verdict"], "LIFTS");
    assert!(cert["lift"]["generator_images"].as_array().is_some_and(|g| !g.is_empty()));
    assert!(cert["exhaustive"]["solutions"].as_u64().unwrap() > 0);
}

#[test]
fn check_lift_z5_jordan_is_obstructed() {
    let f5 = Fq::prime(5).unwrap();
    let mut v = jordan_block_rep(5, 1, &f5).unwrap().to_json().to_value();
    let group = v.as_object_mut().unwrap().remove("group").unwrap();
    let rep = write_rep("z5.json", &v);
    let g = write_rep("z5-group.json", &group);
    let out = run(&["check-lift", "--group", g.to_str().unwrap(), "--rep", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["records"][0]["witnesses"][0]["verdict"], "OBSTRUCTED");

    let out = run(&["check-lift", "--group", "Z5", "--rep", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check-lift", "--rep", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_lift_rejects_relator_violation_and_bad_json() {
    let mut v = s3_natural_rep().to_json().to_value();
    // swap the two generator images so the relators fail
    let imgs = v["generator_images"].as_array_mut().unwrap();
    imgs.swap(0, 1);
    let rep = write_rep("s3-bad.json", &v);
    let out = run(&["check-lift", "--rep", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let junk = tmp("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(run(&["check-lift", "--rep", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["check-lift", "--group", "SL2(5)", "--rep", junk.to_str().unwrap()]).status.code(), Some(2));
}

fn search(args: &[&str]) -> Value {
    let mut full = vec!["search"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json_stdout(&out)
}

#[test]
fn search_klein_four_over_f4_finds_obstruction() {
    let v = search(&["--group", "Z2xZ2", "--field", "4", "--max-dim", "2", "--budget", "1000", "--seed", "7"]);
    assert_eq!(v["config"]["seed"], 7);
    let r = &v["result"];
    assert_eq!(r["status"], "COMPLETE");
    assert_eq!(r["group_status"], "NOT_LIFTABLE_WITNESSED");
    assert!(r["records"].as_array().unwrap().iter().any(|x| x["verdict"] == "OBSTRUCTED"));
}

#[test]
fn search_q8_stays_open() {
    let v = search(&["--group", "Q8", "--field", "2", "--max-dim", "4", "--budget", "1000", "--seed", "1"]);
    let r = &v["result"];
    assert_eq!(r["group_status"], "OPEN");
    assert!(!r["records"].as_array().unwrap().is_empty());
    assert!(r["records"].as_array().unwrap().iter().all(|x| x["verdict"] == "LIFTS"));
}

#[test]
fn search_zero_budget_is_incomplete() {
    let v = search(&["--group", "Q8", "--field", "2", "--max-dim", "4", "--budget", "0"]);
    assert_eq!(v["result"]["status"], "INCOMPLETE");
    assert_eq!(v["result"]["records"].as_array().unwrap().len(), 0);
}

#[test]
fn search_is_reproducible_and_reads_library() {
    let args = ["--group", "Z4", "--field", "2", "--max-dim", "3", "--budget", "5", "--seed", "3"];
    assert_eq!(search(&args), search(&args));

    let f2 = Fq::prime(2).unwrap();
    let lib = Value::Array(vec![jordan_block_rep(2, 2, &f2).unwrap().to_json().to_value()]);
    let path = write_rep("library.json", &lib);
    let v = search(&[
        "--group", "Z4", "--field", "2", "--max-dim", "4", "--budget", "1", "--library", path.to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["status"], "INCOMPLETE");
    assert_eq!(v["result"]["records"][0]["source"], "library[0]");
}

#[test]
fn local_lift_pair() {
    let out = run(&["local", "lift-pair", "--p", "3", "--d", "4", "--x1", "1,0,0,0", "--x2", "0,0,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["cup_mod_p2"], 0);
    let out = run(&["local", "lift-pair", "--p", "3", "--d", "4", "--x1", "1,0,0,0", "--x2", "0,1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["local", "lift-pair", "--p", "3", "--d", "3", "--x1", "1,0,0", "--x2", "0,1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn local_heisenberg_build_then_lift() {
    let rep = tmp("heis.json");
    let out = run(&[
        "local", "heisenberg", "--build", "--p", "3", "--d", "4", "--x1", "1,0,0,0", "--x2", "0,0,1,0", "--twist",
        "1,2,0,1", "--out", rep.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["local", "heisenberg", "--lift", "--in", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lift = json_stdout(&out);
    assert_eq!(lift["level"], 2);
    let corners: Vec<u64> =
        lift["images"].as_array().unwrap().iter().map(|m| m["data"][2].as_u64().unwrap() % 3).collect();
    assert_eq!(corners, vec![1, 2, 0, 1]);

    let out = run(&["local", "heisenberg", "--build", "--p", "3", "--d", "4", "--x1", "1,0,0,0", "--x2", "0,1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn local_tame_symbol() {
    let out = run(&["local", "tame-symbol", "--p", "3", "--q", "7", "--a", "1,0", "--b", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["d_normalization"], 1);
    assert_ne!(v["symbol"], 0);
    let out = run(&["local", "tame-symbol", "--p", "3", "--q", "9", "--a", "1,0", "--b", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_thread_count_is_input_error() {
    let out = bin().env("WITTLIFT_THREADS", "many").args(["verify-paper", "--list"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
