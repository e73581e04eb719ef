use std::path::Path;

use canonical_ramsey::cli::{run_captured, EXIT_BUDGET, EXIT_FAILURE, EXIT_IO, EXIT_OK, EXIT_USAGE};
use canonical_ramsey::journal;
use serde_json::Value;
use tempfile::TempDir;

struct Session {
    dir: TempDir,
}

impl Session {
    fn new() -> Self {
        Session { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }

    fn journal(&self) -> String {
        self.path("journal.jsonl")
    }

    fn phc(&self, args: &[&str]) -> (i32, String, String) {
        let j = self.journal();
        let mut full = vec!["--journal", j.as_str()];
        full.extend_from_slice(args);
        run_captured(&full)
    }

    fn json(&self, args: &[&str]) -> (i32, Value) {
        let mut full = vec!["--format", "structured"];
        full.extend_from_slice(args);
        let (code, out, err) = self.phc(&full);
        let line = out.lines().next().unwrap_or_else(|| panic!("no output; stderr {err}"));
        (code, serde_json::from_str(line).unwrap())
    }

    fn records(&self) -> usize {
        if Path::new(&self.journal()).exists() {
            journal::read(Path::new(&self.journal())).unwrap().len()
        } else {
            0
        }
    }

    fn generate(&self, kind: &str, k: usize, n: usize, name: &str) -> String {
        let out = self.path(name);
        let (code, _, err) = self.phc(&[
            "generate", "--kind", kind, "--k", &k.to_string(), "--n", &n.to_string(), "--seed", "7", "--out", &out,
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        out
    }
}

#[test]
fn every_invocation_is_journaled_once() {
    let s = Session::new();
    let c = s.generate("projection", 2, 8, "c.txt");
    s.phc(&["classify", "--colouring", &c, "--delta", "1/2,1/2"]);
    s.phc(&["census", "--colouring", &c]);
    s.phc(&["classify", "--colouring", &s.path("missing.txt"), "--delta", "1/2"]);
    s.phc(&["schedule", "--k", "3", "--t", "129"]);
    s.phc(&["schedule", "--k", "3", "--no-such-flag"]);
    assert_eq!(s.records(), 6);
    let recs = journal::read(Path::new(&s.journal())).unwrap();
    assert_eq!(recs[0].command, "generate");
    assert_eq!(recs[0].seed, Some(7));
    assert!(recs[3].outcome.starts_with("error"));
}

#[test]
fn exit_codes() {
    let s = Session::new();
    let c = s.generate("constant", 2, 4, "c.txt");
    assert_eq!(s.phc(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(s.phc(&["classify", "--colouring", &c, "--delta", "1/2,oops"]).0, EXIT_USAGE);
    assert_eq!(s.phc(&["classify", "--colouring", &c, "--delta", "1/2,1/2,1/2"]).0, EXIT_USAGE);
    assert_eq!(s.phc(&["classify", "--colouring", &s.path("nope"), "--delta", "1/2,1/2"]).0, EXIT_IO);
    assert_eq!(s.phc(&["er-search", "--k", "2", "--t", "2", "--n", "3", "--node-budget", "3"]).0, EXIT_BUDGET);
    // a constant colouring has no rainbow 2-box
    assert_eq!(s.phc(&["rainbow", "--colouring", &c, "--t", "2", "--seed", "1", "--retries", "3"]).0, EXIT_FAILURE);
    assert_eq!(s.phc(&["classify", "--colouring", &c, "--delta", "1/2,1/2"]).0, EXIT_OK);
}

#[test]
fn bad_file_contents_are_parse_errors() {
    let s = Session::new();
    let p = s.path("bad.txt");
    std::fs::write(&p, "phc 1 colouring\n2 2 2\n0 0 0\n").unwrap();
    let (code, _, err) = s.phc(&["census", "--colouring", &p]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn pipeline_writes_a_verifiable_witness() {
    let s = Session::new();
    let c = s.generate("projection", 2, 16, "c.txt");
    let w = s.path("w.txt");
    let trace = s.path("trace.json");
    let (code, v) = s.json(&[
        "pipeline", "--colouring", &c, "--t", "2", "--delta", "1/2,1/2", "--seed", "3", "--witness-out", &w,
        "--trace-out", &trace,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["witness"]["j"], serde_json::json!([1]));
    let (code, v) = s.json(&["verify", "--colouring", &c, "--box", &w]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["j_sets"], serde_json::json!([[1]]));
    let (code, _) = s.json(&["verify", "--colouring", &c, "--box", &w, "--j", "2"]);
    assert_eq!(code, EXIT_FAILURE);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["branch"], "level1");
}

#[test]
fn seeded_runs_are_reproducible() {
    let s = Session::new();
    let c = s.generate("random", 3, 6, "c.txt");
    let args = ["rainbow", "--colouring", c.as_str(), "--t", "1", "--seed", "99"];
    assert_eq!(s.json(&args), s.json(&args));
    let lb = ["random-lb", "--k", "2", "--t", "2", "--n", "2", "--palette", "3", "--trials", "500", "--seed", "5"];
    assert_eq!(s.json(&lb), s.json(&lb));
    let (_, a, _) = s.phc(&["generate", "--kind", "random", "--k", "2", "--n", "4", "--palette", "5", "--seed", "1"]);
    let (_, b, _) = s.phc(&["generate", "--kind", "random", "--k", "2", "--n", "4", "--palette", "5", "--seed", "1"]);
    assert_eq!(a, b);
}

#[test]
fn unseeded_runs_record_their_seed() {
    let s = Session::new();
    let (code, v) = s.json(&["random-lb", "--k", "2", "--t", "2", "--n", "2", "--palette", "3", "--trials", "10"]);
    assert_eq!(code, EXIT_OK);
    let seed = v["seed"].as_u64().unwrap();
    let recs = journal::read(Path::new(&s.journal())).unwrap();
    assert_eq!(recs.last().unwrap().seed, Some(seed));
}

#[test]
fn extraction_and_counts() {
    let s = Session::new();
    let h = s.path("h.txt");
    std::fs::write(&h, "phc 1 hypergraph\n2 3 3\n0 0\n0 1\n1 0\n1 1\n2 2\n").unwrap();
    let (code, v) = s.json(&["extract", "--hypergraph", &h, "--t", "2", "--count"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["count"], "1");
    assert_eq!(v["box"], serde_json::json!([[0, 1], [0, 1]]));
    let (code, v) = s.json(&["extract", "--hypergraph", &h, "--t", "3,1", "--count"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(v["count"], "0");
}

#[test]
fn dense_rainbow_uses_both_files() {
    let s = Session::new();
    let h = s.path("h.txt");
    let (code, _, _) = s.phc(&[
        "generate", "--kind", "hypergraph", "--k", "2", "--n", "20", "--p", "0.6", "--seed", "4", "--out", &h,
    ]);
    assert_eq!(code, EXIT_OK);
    let c = s.generate("injective", 2, 20, "c.txt");
    let (code, v) = s.json(&["rainbow-dense", "--hypergraph", &h, "--colouring", &c, "--m", "6", "--seed", "2"]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["success"], true, "{v}");
    assert_eq!(v["box"].as_array().unwrap().len(), 2);
}

#[test]
fn schedule_scan_and_report() {
    let s = Session::new();
    let (code, v) = s.json(&["schedule", "--k", "3", "--scan", "200"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["minimal_valid_t"], 129);
    assert_eq!(v["report"]["all_hold"], true);
    let (code, v) = s.json(&["schedule", "--k", "2", "--variant", "k2-special", "--t", "64"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["report"]["all_hold"], false);
    assert_eq!(s.phc(&["schedule", "--k", "3"]).0, EXIT_USAGE);
    assert_eq!(s.phc(&["schedule", "--k", "3", "--t", "9", "--variant", "bogus"]).0, EXIT_USAGE);
}

#[test]
fn er_search_checkpoint_and_resume() {
    let s = Session::new();
    let cp = s.path("cp.json");
    let (code, _, _) = s.phc(&["er-search", "--k", "2", "--t", "2", "--n", "3", "--node-budget", "5", "--checkpoint", &cp]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(Path::new(&cp).exists());
    let out = s.path("avoider.txt");
    let (code, v) = s.json(&["er-search", "--k", "2", "--t", "2", "--n", "3", "--resume", &cp, "--out", &out]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["avoider"], serde_json::json!([0, 0, 0, 0, 1, 2, 0, 2, 1]));
    let (code, v) = s.json(&["verify", "--colouring", &out, "--box", &{
        let b = s.path("b.txt");
        std::fs::write(&b, "phc 1 box\nclass 1 0 1\nclass 2 0 1\n").unwrap();
        b
    }]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(v["canonical"], false);
    assert_eq!(s.phc(&["er-search", "--k", "2", "--t", "2"]).0, EXIT_USAGE);
}

#[test]
fn er_scan() {
    let s = Session::new();
    let (code, v) = s.json(&["er-search", "--k", "1", "--t", "2", "--n-max", "6"]);
    assert_eq!(code, EXIT_OK);
    // two edges of a 1-partite box are canonical either way
    assert_eq!(v["scan"]["value"], 2);
}

#[test]
fn text_output_is_plain() {
    let s = Session::new();
    let c = s.generate("injective", 2, 3, "c.txt");
    let (code, out, _) = s.phc(&["census", "--colouring", &c]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("phc 1 census"), "{out}");
    let (code, out, _) = s.phc(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("er-search"));
}
