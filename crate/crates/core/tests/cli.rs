use std::path::{Path, PathBuf};

use secbc::cli::{run, EXIT_CAPACITY, EXIT_DOMAIN, EXIT_INPUT, EXIT_OK};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let out: PathBuf = dir.join(name);
    let mut full = vec!["secbc"];
    full.extend(args);
    full.extend(["--out", out.to_str().unwrap()]);
    let code = run(full);
    (code, std::fs::read_to_string(&out).unwrap_or_default())
}

/// Lines after the `#` preamble.
fn body(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn region_output_has_preamble_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "r.csv", &["region", "--spec", &data("parallel_bsc.json"), "--seed", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("# command=region\n"));
    assert!(text.contains("# scheme=embedded\n# seed=5\n# region=secure\n"));
    let rows = body(&text);
    assert_eq!(rows[0], "label,R1,R2");
    assert_eq!(rows[1], "O,0,0");
}

#[test]
fn corners_lists_every_label() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "c.csv", &["corners", "--spec", &data("wiretap.json")]);
    assert_eq!(code, EXIT_OK);
    let labels: Vec<&str> = body(&text)[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(labels, ["O", "A1", "B1", "C1", "D1", "E1", "F1"]);
}

#[test]
fn compare_reports_three_regions_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) =
        run_to(dir.path(), "k.csv", &["compare", "--spec", &data("dirty.json"), "--scheme", &data("dirty_scheme.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("# secure_in_steinberg=true\n# steinberg_in_marton=true\n"));
    let rows = body(&text);
    assert_eq!(rows[0], "region,label,R1,R2");
    for region in ["secure", "steinberg", "marton"] {
        assert!(rows.iter().any(|r| r.starts_with(&format!("{region},O,"))));
    }
}

#[test]
fn simulate_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "s.json",
        &["simulate", "--spec", &data("wiretap.json"), "--N", "10", "--trials", "100", "--leakage-samples", "20"],
    );
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["N"], 10);
    assert_eq!(v["config"]["trials"], 100);
    assert_eq!(v["inputs"]["scheme"], "embedded");
    assert!(v["decode_error"][0]["value"].is_f64());
    assert!(v["leakage"][0]["value"].is_f64());
}

#[test]
fn sweep_writes_one_row_per_block_length() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) =
        run_to(dir.path(), "w.csv", &["sweep", "--spec", &data("parallel_bsc.json"), "--N", "6,8,10", "--trials", "50"]);
    assert_eq!(code, EXIT_OK);
    let rows = body(&text);
    assert_eq!(rows[0], secbc::codec::SWEEP_HEADER);
    assert_eq!(rows.len(), 4);
    assert!(rows[3].starts_with("10,"));
}

#[test]
fn frontier_respects_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "f.csv", &["frontier", "--spec", &data("dirty.json"), "--budget", "200"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("# budget=200\n# evaluated=200\n"));
}

#[test]
fn validate_accepts_good_documents() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "v.txt", &["validate", "--spec", &data("parallel_bsc.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(text.ends_with("violations=0\nok\n"));
}

#[test]
fn validate_names_the_bad_slice() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("dirty.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Scale one conditional slice of the channel law to sum to 0.9.
    for row in doc["channel_law"][0][0].as_array_mut().unwrap() {
        for p in row.as_array_mut().unwrap() {
            *p = serde_json::json!(p.as_f64().unwrap() * 0.9);
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (code, out) = run_to(dir.path(), "v.txt", &["validate", "--spec", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.contains("violations=1\n"));
    assert!(out.contains("channel_law[x=0][w=0]"), "{out}");
    assert!(out.contains("0.9"), "{out}");
}

#[test]
fn malformed_input_exits_with_input_code() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    let spec = broken.to_str().unwrap();
    assert_eq!(run(["secbc", "region", "--spec", spec]), EXIT_INPUT);
    assert_eq!(run(["secbc", "region", "--spec", "/nonexistent/x.json"]), EXIT_INPUT);
    assert_eq!(run(["secbc", "teleport"]), EXIT_INPUT);
    assert_eq!(run(["secbc", "region", "--spec", &data("dirty.json")]), EXIT_INPUT);
    assert_eq!(run(["secbc", "sweep", "--spec", &data("wiretap.json"), "--margin", "0"]), EXIT_INPUT);
}

#[test]
fn oversized_codebooks_exit_with_capacity_code() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_to(dir.path(), "big.json", &["simulate", "--spec", &data("parallel_bsc.json"), "--N", "400"]);
    assert_eq!(code, EXIT_CAPACITY);
    assert!(!dir.path().join("big.json").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--spec", &data("wiretap.json"), "--N", "8,10", "--trials", "80", "--seed", "3"];
    let (_, a) = run_to(dir.path(), "a.csv", &args);
    let (_, b) = run_to(dir.path(), "b.csv", &args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
}
