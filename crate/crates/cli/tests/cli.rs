use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hyperview(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperview")).args(args).current_dir(cwd).output().unwrap()
}

fn ok(args: &[&str], cwd: &Path) -> String {
    let out = hyperview(args, cwd);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn repo_file(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel).to_string_lossy().into_owned()
}

#[test]
fn staged_commands_compose() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["synth", "--out", "corpus.jsonl"], d);
    assert_eq!(fs::read(d.join("corpus.jsonl")).unwrap(), fs::read(repo_file("data/synthetic_200.jsonl")).unwrap());

    ok(&["ingest", "--corpus", "corpus.jsonl", "--query", "bgo AND calor*", "--out", "hits.jsonl"], d);
    ok(&["build", "--corpus", "hits.jsonl", "--attr", "organisation", "--out", "h.json"], d);
    ok(&["expand", "--hypergraph", "h.json", "--view", "clique", "--out", "c.json"], d);
    ok(&["expand", "--hypergraph", "h.json", "--view", "extra", "--out", "e.json"], d);
    ok(
        &["layout", "--graph", "c.json", "--out", "lc.json", "--target", "e.json", "--target-out", "le.json", "--iterations", "100"],
        d,
    );
    ok(&["transfer", "--layout", "le.json", "--from", "e.json", "--to", "c.json", "--out", "back.json"], d);
    let original: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("lc.json")).unwrap()).unwrap();
    let back: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("back.json")).unwrap()).unwrap();
    assert_eq!(original["nodes"], back["nodes"]);

    let printed = ok(&["render", "--graph", "e.json", "--layout", "le.json", "--out", "e.ppm", "--width", "300", "--height", "200"], d);
    assert!(printed.starts_with("clarity "));
    assert!(fs::read(d.join("e.ppm")).unwrap().starts_with(b"P6\n300 200\n255\n"));

    let stats = ok(&["report", "stats", "--hypergraph", "h.json"], d);
    assert!(stats.contains("G_edge") && stats.contains("Sum"));
    let csv = ok(&["report", "stats", "--hypergraph", "h.json", "--format", "csv", "--fit-range", "2-8"], d);
    assert!(csv.starts_with("size,count\n"));
}

#[test]
fn all_then_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let corpus = repo_file("data/synthetic_200.jsonl");
    let args = |out: &'static str| {
        vec![
            "all", "--corpus", corpus.as_str(), "--query", "bgo AND cryst*", "--out", out, "--seed", "4",
            "--iterations", "150", "--width", "300", "--height", "300",
        ]
    };
    let text = ok(&args("run"), d);
    assert!(text.contains("attr organisation") && text.contains("attr keyword"));
    for attr in ["organisation", "keyword"] {
        for img in ["clique_on_clique", "extra_from_clique", "extra_on_extra", "clique_from_extra"] {
            assert!(d.join("run").join(attr).join(format!("{img}.ppm")).exists());
        }
    }
    let summary = ok(&["report", "aggregate", "run", "--format", "csv", "--scatter", "scatter.csv"], d);
    assert!(summary.starts_with("metric,n,mean,std_dev,q1,q2,q3\nedge_gain,2,"));
    assert_eq!(fs::read_to_string(d.join("scatter.csv")).unwrap().lines().count(), 3);
}

#[test]
fn errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperview(&["ingest", "--corpus", "missing.jsonl", "--query", "bgo", "--out", "x"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.jsonl"));

    let corpus = repo_file("data/synthetic_200.jsonl");
    let out = hyperview(&["all", "--corpus", &corpus, "--query", "bgo", "--out", "o", "--palette", "ff0000"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("palette"));

    let out = hyperview(&["ingest", "--corpus", &corpus, "--query", "bgo AND", "--out", "x"], dir.path());
    assert!(!out.status.success());
}
