mod common;

use std::fs;

use hyperview_core::expand::edge_gain;
use hyperview_core::layout::{LayoutParams, LayoutState};
use hyperview_core::render::{RasterImage, RenderStyle};
use hyperview_core::{run_pipeline, Error, ExpandedGraph, RunConfig, ViewReport};

const BGO_QUERY: &str =
    "title:((bgo AND cryst*) OR (bgo AND calor*)) abstract:((bgo AND cryst*) OR (bgo AND calor*))";

fn config(corpus: &str, query: &str, attrs: &[&str], out: &std::path::Path) -> RunConfig {
    RunConfig {
        search_id: "bgo".into(),
        corpus: common::repo_root().join(corpus),
        query: query.into(),
        attr_types: attrs.iter().map(|s| s.to_string()).collect(),
        layout: LayoutParams { iterations: 200, ..LayoutParams::default() },
        style: RenderStyle { width: 400, height: 400, ..RenderStyle::default() },
        out_dir: out.to_path_buf(),
        seed: 1,
    }
}

#[test]
fn bgo_organisation_search_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("crates/core/tests/fixtures/bgo_organisations.jsonl", BGO_QUERY, &["organisation"], dir.path());
    let reports = run_pipeline(&cfg).unwrap();
    let r = &reports[0];
    assert_eq!(r.collaborations, 169);
    assert_eq!((r.clique.nodes, r.clique.edges), (349, 2639));
    assert_eq!((r.extra_node.nodes, r.extra_node.edges), (439, 647));
    assert_eq!(r.extra_nodes, 90);
    assert!((r.edge_gain.unwrap() - 4.07).abs() < 0.01);
    // weight-expanded mean size of this fixture
    assert!((r.average_size.unwrap() - 758.0 / 169.0).abs() < 1e-12);

    // the reported gain agrees with the serialized graphs
    let org = dir.path().join("organisation");
    let read = |f: &str| fs::read_to_string(org.join(f)).unwrap();
    let clique: ExpandedGraph = serde_json::from_str(&read("clique.graph.json")).unwrap();
    let extra: ExpandedGraph = serde_json::from_str(&read("extra.graph.json")).unwrap();
    assert_eq!(edge_gain(&clique, &extra).unwrap(), r.edge_gain);
    let on_disk: ViewReport = serde_json::from_str(&read("report.json")).unwrap();
    assert_eq!(&on_disk, r);

    // every image has the configured canvas and matches its reported clarity
    for p in &r.protocols {
        for m in [&p.clique, &p.extra_node] {
            let img = RasterImage::from_ppm(&fs::read(org.join(&m.image)).unwrap()).unwrap();
            assert_eq!((img.width(), img.height()), (400, 400));
            assert_eq!(hyperview_core::clarity(&img), m.clarity);
        }
    }
    let layout: LayoutState = serde_json::from_str(&read("layout_on_extra.json")).unwrap();
    assert_eq!(layout.nodes.len(), 439);
    assert!(!layout.transferred);

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 1);
    assert_eq!(manifest["matched_records"], 175);
}

#[test]
fn empty_search_yields_zero_report_without_images() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("crates/core/tests/fixtures/bgo_organisations.jsonl", "neutrino AND gravitation", &["organisation"], dir.path());
    let reports = run_pipeline(&cfg).unwrap();
    assert_eq!(reports[0].collaborations, 0);
    assert!(reports[0].protocols.is_empty());
    assert_eq!(reports[0].edge_gain, None);
    let org = dir.path().join("organisation");
    assert!(org.join("report.json").exists());
    assert!(!fs::read_dir(&org).unwrap().any(|e| e.unwrap().path().extension().is_some_and(|x| x == "ppm")));
}

#[test]
fn stage_errors_name_the_stage() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("does/not/exist.jsonl", "bgo", &["organisation"], dir.path());
    let err = run_pipeline(&cfg).unwrap_err();
    assert!(matches!(err, Error::Stage { stage: "ingest", .. }), "{err}");
    assert!(err.to_string().contains("ingest"));

    let cfg = config("data/synthetic_200.jsonl", "bgo AND (", &["organisation"], dir.path());
    assert!(matches!(run_pipeline(&cfg), Err(Error::Stage { stage: "ingest", .. })));

    let mut cfg = config("data/synthetic_200.jsonl", "bgo", &["organisation"], dir.path());
    cfg.layout.repulsion = f64::INFINITY;
    assert!(matches!(run_pipeline(&cfg), Err(Error::Stage { stage: "layout", .. })));
}
