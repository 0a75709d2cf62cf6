use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

use fourman::cli::{run, ManifoldRecord, EXIT_INVALID, EXIT_OK, EXIT_UNRESOLVED, EXIT_USAGE};

fn report(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["fourman"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    let v = serde_json::from_str(&out).unwrap_or(Value::Null);
    (code, v)
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("fourman-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }

    fn write(&self, name: &str, v: &Value) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, v.to_string()).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn k3_file(dir: &Scratch) -> PathBuf {
    let p = dir.path("k3.json");
    let (code, _) = report(&["catalog", "elliptic", "--n", "2", "--p", "1", "--q", "1", "-o", s(&p)]);
    assert_eq!(code, EXIT_OK);
    p
}

fn vec22(entries: &[(usize, i64)]) -> String {
    let mut v = [0i64; 22];
    for &(i, x) in entries {
        v[i] = x;
    }
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[test]
fn elliptic_catalog_records() {
    let (code, v) = report(&["catalog", "elliptic", "--n", "2", "--p", "1", "--q", "1"]);
    assert_eq!(code, EXIT_OK);
    let rec = &v["results"]["record"];
    assert_eq!(rec["b2plus"], 3);
    assert_eq!(rec["b2minus"], 19);
    assert_eq!(rec["parity"], "even");
    assert_eq!(rec["provenance"]["family"], "elliptic");

    let (_, v) = report(&["catalog", "elliptic", "--n", "3"]);
    assert_eq!(v["results"]["numbers"], json!({"chi": 36, "sigma": -24, "c": 3, "b2": 34}));
}

#[test]
fn report_shape_and_keys() {
    let (code, v) = report(&["numtheory", "four-odd-squares", "4"]);
    assert_eq!(code, EXIT_OK);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "exit_status", "inputs_digest", "results"]);
    assert_eq!(v["results"]["squares"], json!([1, 1, 1, 1]));
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_code_triage() {
    assert_eq!(run(["fourman", "bogus"]).0, EXIT_USAGE);
    assert_eq!(run(["fourman", "numtheory", "legendre", "7", "--frob"]).0, EXIT_USAGE);
    assert_eq!(run(["fourman", "--help"]).0, EXIT_OK);
    assert_eq!(run(["fourman", "numtheory", "three-squares", "7"]).0, EXIT_UNRESOLVED);
    assert_eq!(run(["fourman", "numtheory", "four-odd-squares", "6"]).0, EXIT_INVALID);

    // b⁺ = b⁻ = 1 with K² = 9: equality in Bogomolov-Miyaoka-Yau
    let (code, v) = report(&["catalog", "general-type", "--chi", "3", "--sigma", "1", "--k2", "9"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(!v["results"]["violations"].as_array().unwrap().is_empty());

    let (code, _) = report(&["dims", "--input", "/nonexistent/record.json"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn blowup_round_trip_and_closure() {
    let dir = Scratch::new("blowup");
    let k3 = k3_file(&dir);
    let blown = dir.path("blown.json");
    let (code, _) = report(&["blowup", "--input", s(&k3), "-o", s(&blown)]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&blown).unwrap()).unwrap();
    assert_eq!(v["results"]["record"]["b2minus"], 20);
    assert_eq!(v["results"]["numbers"]["c"], 3);
    let parent = ManifoldRecord::from_json(&std::fs::read_to_string(&k3).unwrap()).unwrap();
    assert_eq!(
        v["results"]["record"]["provenance"]["params"]["parent_digest"],
        json!(parent.digest())
    );

    // a blown-up record re-ingests, and blows up again
    let twice = dir.path("twice.json");
    assert_eq!(report(&["blowup", "--input", s(&blown), "-o", s(&twice)]).0, EXIT_OK);
    let (_, v) = report(&["dims", "--input", s(&twice)]);
    assert_eq!(v["results"]["numbers"]["c"], 4);

    let (code, v) = report(&["abundance", "--input", s(&blown)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"]["verdict"]["lemma"], "blowup-closure");
}

#[test]
fn chern_normal_both_routes_on_k3() {
    let dir = Scratch::new("chern");
    let k3 = k3_file(&dir);
    let spinu = format!("c1={}", vec22(&[(16, 1), (17, -3)]));
    let spinc = format!("c1={}", vec22(&[]));
    let (code, v) = report(&[
        "chern-normal", "--input", s(&k3), "--spinu", &spinu, "--spinc", &spinc, "--mode", "both",
    ]);
    assert_eq!(code, EXIT_OK);
    let r = &v["results"];
    assert_eq!(r["equal"], true);
    assert_eq!(r["direct"], json!([["1", "1/1"], ["mu", "3/1"], ["mu^2", "7/2"]]));
    assert_eq!(r["direct"], r["pipeline"]);
    assert_eq!(r["closed_form"], json!([["1", "1/1"], ["mu", "3/1"], ["mu^2", "1/1"]]));
    assert_eq!((r["ns_prime"].clone(), r["ns_double_prime"].clone()), (json!(2), json!(-1)));

    let (_, v) = report(&[
        "chern-normal", "--input", s(&k3), "--spinu", &spinu, "--spinc", &spinc, "--mode", "direct",
    ]);
    assert!(v["results"].get("pipeline").is_none());
}

#[test]
fn dims_and_indices_on_k3() {
    let dir = Scratch::new("dims");
    let k3 = k3_file(&dir);
    let lam = vec22(&[(16, 1), (17, -3)]);
    let spinu = format!("c1={lam},p1=-6,w2={lam}");
    let spinc = format!("c1={}", vec22(&[]));
    let (code, v) = report(&["dims", "--input", s(&k3), "--spinu", &spinu, "--spinc", &spinc]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"]["asd"], json!({"d_a": 0, "n_a": 1, "dim": 2}));
    assert_eq!(v["results"]["sw_dimension"], 0);

    let bad = format!("c1={lam},p1=-5,w2={}", vec22(&[]));
    let (code, v) = report(&["dims", "--input", s(&k3), "--spinu", &bad]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(
        v["results"]["violations"],
        json!(["first constraint violated", "p1 ≢ w² mod 4"])
    );

    let (code, v) = report(&[
        "indices", "--input", s(&k3), "--spinu", &spinu, "--spinc", &spinc, "--level", "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"]["reduction"]["ns"], 1);
    assert_eq!(v["results"]["consistent"], true);
    assert_eq!(v["results"]["level_shift"]["asd"]["d_a"], -8);
}

/// `⟨1⟩ ⊕ 10⟨−1⟩` with `χ = 13`, `σ = −9`, so `c = 2`.
fn desk_record() -> Value {
    let mut gram = vec![vec![0i64; 11]; 11];
    gram[0][0] = 1;
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -1;
    }
    json!({
        "name": "desk", "b1": 0, "b2plus": 1, "b2minus": 10, "parity": "odd",
        "spin": false, "simply_connected": true,
        "gram": gram,
        "basic_classes": [{"K": vec![1; 11], "sw": 1}]
    })
}

#[test]
fn series_and_witten_check() {
    let dir = Scratch::new("series");
    let rec = dir.write("desk.json", &desk_record());
    let (code, v) = report(&["series-sw", "--input", s(&rec), "--degree", "2"]);
    assert_eq!(code, EXIT_OK);
    let terms = v["results"]["sw_series"]["terms"].as_array().unwrap();
    assert_eq!(terms[0], json!([vec![0; 11], "1/1"]));
    assert_eq!(v["results"]["c"], 2);
    assert_eq!(v["results"]["vanishing_order"], json!({"order": 0}));

    let (code, v) = report(&["witten-check", "--input", s(&rec)]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["results"]["suite"]["passed"], true);

    // D = 1 misses the linear terms of exp⟨K,h⟩
    let d = dir.write("d.json", &json!([[vec![0; 11], "1/1"]]));
    let (code, v) = report(&["witten-check", "--input", s(&rec), "--donaldson", s(&d)]);
    assert_eq!(code, EXIT_INVALID);
    let mut first = vec![0; 11];
    first[10] = 1;
    assert_eq!(v["results"]["suite"]["precondition"]["first_failure"], json!(first));
}

#[test]
fn search_bound_from_environment() {
    let dir = Scratch::new("env");
    let rec = dir.write(
        "odd.json",
        &json!({
            "name": "odd", "b1": 0, "b2plus": 3, "b2minus": 3, "parity": "odd",
            "spin": false, "simply_connected": true,
            "gram": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],
                     [0,0,0,-1,0,0],[0,0,0,0,-1,0],[0,0,0,0,0,-1]],
            "basic_classes": [{"K": [1, 1, 1, 1, 1, 1], "sw": null}]
        }),
    );
    let bin = env!("CARGO_BIN_EXE_fourman");
    let without = Command::new(bin)
        .args(["abundance", "--input", s(&rec)])
        .env_remove("FOURMAN_SEARCH_BOUND")
        .output()
        .unwrap();
    assert_eq!(without.status.code(), Some(EXIT_UNRESOLVED));
    let with = Command::new(bin)
        .args(["abundance", "--input", s(&rec)])
        .env("FOURMAN_SEARCH_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(with.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&with.stdout).unwrap();
    assert_eq!(v["results"]["verdict"]["status"], "certified-by-search");
    assert_eq!(v["results"]["lambdas"].as_array().unwrap().len(), 3);

    let usage = Command::new(bin).args(["frob"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(usage.stdout.is_empty());
}

#[test]
fn lattice_search_serial_matches_parallel() {
    let dir = Scratch::new("search");
    let rec = dir.write(
        "odd.json",
        &json!({
            "name": "odd", "b1": 0, "b2plus": 3, "b2minus": 2, "parity": "odd",
            "spin": false, "simply_connected": true,
            "gram": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,-1,0],[0,0,0,0,-1]],
            "basic_classes": [{"K": [3, 3, 1, 1, 1]}]
        }),
    );
    let (c1, a) = report(&["lattice-search", "--input", s(&rec), "--bound", "3"]);
    let (c2, b) = report(&["lattice-search", "--input", s(&rec), "--bound", "3", "--serial"]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(a["results"], b["results"]);
    assert!(a["results"]["certificate"].is_object());

    let (code, _) = report(&["lattice-search", "--input", s(&rec), "--bound", "0"]);
    assert_eq!(code, EXIT_UNRESOLVED);
}
