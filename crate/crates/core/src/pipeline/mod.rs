//! End-to-end comparison of the two views for one search, from corpus
//! filtering to the written report.

mod report;
mod table;

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expand::{clique_expansion, edge_gain, extra_node_expansion, ExpandedGraph, ViewKind};
use crate::hypergraph::Hypergraph;
use crate::ingest::{extract_attribute_sets, filter_records, parse_corpus, PublicationRecord, SearchQuery};
use crate::layout::{compute_layout, transfer_coordinates, LayoutParams, LayoutState};
use crate::render::{clarity, entropy, ratio, render_view, RasterImage, RenderStyle};

pub use report::{
    aggregate_reports, describe, emit_gain_scatter, quantile, AggregateSummary, Describe, ImageMetrics, MetricSummary,
    ProtocolMetrics, ViewCounts, ViewReport,
};
pub(crate) use report::image_stem;
pub(crate) use table::align_table;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub search_id: String,
    pub corpus: PathBuf,
    pub query: String,
    pub attr_types: Vec<String>,
    pub layout: LayoutParams,
    pub style: RenderStyle,
    pub out_dir: PathBuf,
    /// Seeds Louvain and the initial layout; overrides `layout.seed`.
    pub seed: u64,
}

/// One rendered image together with the layout it was drawn from.
#[derive(Debug, Clone)]
pub struct RenderedView {
    pub name: String,
    pub layout: LayoutState,
    pub image: RasterImage,
}

/// In-memory result of comparing the two views of one hypergraph.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub clique: ExpandedGraph,
    pub extra: ExpandedGraph,
    pub edge_gain: Option<f64>,
    /// Layouts computed on the clique and on the extra-node view.
    pub computed: Vec<LayoutState>,
    /// Four images, grouped by protocol: the view the layout ran on first,
    /// then the transferred view.
    pub views: Vec<RenderedView>,
    pub protocols: Vec<ProtocolMetrics>,
}

fn metrics_for(view: &RenderedView) -> Result<ImageMetrics> {
    let c = clarity(&view.image);
    Ok(ImageMetrics { image: format!("{}.ppm", view.name), clarity: c, entropy: entropy(c)?, transferred: view.layout.transferred })
}

/// Run both protocols on `h`: lay out each view, transfer the coordinates to
/// the other view, and render all four combinations with the same style.
pub fn compare_views(h: &Hypergraph, params: &LayoutParams, style: &RenderStyle) -> Result<Comparison> {
    let clique = clique_expansion(h);
    let extra = extra_node_expansion(h);
    let gain = edge_gain(&clique, &extra).map_err(|e| e.in_stage("expand"))?;
    style.validate().map_err(|e| e.in_stage("render"))?;

    let mut computed = Vec::new();
    let mut views = Vec::new();
    let mut protocols = Vec::new();
    for (home, away) in [(&clique, &extra), (&extra, &clique)] {
        let on_home = compute_layout(home, params).map_err(|e| e.in_stage("layout"))?;
        let on_away = transfer_coordinates(&on_home, home, away).map_err(|e| e.in_stage("transfer"))?;
        let mut pair = Vec::new();
        for (g, layout) in [(home, on_home.clone()), (away, on_away)] {
            let image = render_view(g, &layout, style).map_err(|e| e.in_stage("render"))?;
            pair.push(RenderedView { name: image_stem(home.view_kind(), g.view_kind()), layout, image });
        }
        let (clique_view, extra_view) = if home.view_kind() == ViewKind::Clique { (&pair[0], &pair[1]) } else { (&pair[1], &pair[0]) };
        let clique_m = metrics_for(clique_view)?;
        let extra_m = metrics_for(extra_view)?;
        protocols.push(ProtocolMetrics {
            computed_on: home.view_kind(),
            clarity_gain: ratio(extra_m.clarity, clique_m.clarity),
            clique: clique_m,
            extra_node: extra_m,
        });
        computed.push(on_home);
        views.extend(pair);
    }
    Ok(Comparison { clique, extra, edge_gain: gain, computed, views, protocols })
}

/// Build the report for one hypergraph; `comparison` is `None` for an empty search.
pub fn build_report(
    search_id: &str,
    query: &str,
    seed: u64,
    h: &Hypergraph,
    comparison: Option<&Comparison>,
) -> ViewReport {
    let stats = h.summary_stats();
    let counts = |g: Option<&ExpandedGraph>| ViewCounts {
        nodes: g.map_or(0, ExpandedGraph::node_count),
        edges: g.map_or(0, ExpandedGraph::edge_count),
    };
    ViewReport {
        search_id: search_id.to_string(),
        query: query.to_string(),
        attr_type: h.attr_type().to_string(),
        seed,
        collaborations: stats.collaborations,
        hyperedges: stats.hyperedge_count,
        average_size: stats.average_size,
        clique: counts(comparison.map(|c| &c.clique)),
        extra_node: counts(comparison.map(|c| &c.extra)),
        extra_nodes: comparison.map_or(0, |c| c.extra.extra_node_count()),
        edge_gain: comparison.and_then(|c| c.edge_gain),
        protocols: comparison.map_or_else(Vec::new, |c| c.protocols.clone()),
    }
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn read_corpus(path: &Path) -> Result<Vec<PublicationRecord>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(std::io::BufReader::new(file))
}

/// Everything in [`RunConfig`] except the output directory, so that two
/// runs into different directories produce identical manifests.
#[derive(Serialize)]
struct RunManifest<'a> {
    search_id: &'a str,
    corpus: &'a Path,
    query: &'a str,
    attr_types: &'a [String],
    seed: u64,
    layout: &'a LayoutParams,
    style: &'a RenderStyle,
    matched_records: usize,
    reports: Vec<String>,
}

/// Run the whole comparison for every attribute type of `config` and write
/// the artifacts under `config.out_dir/<attr_type>/`:
/// `hypergraph.json`, `clique.graph.json`, `extra.graph.json`,
/// `layout_on_clique.json`, `layout_on_extra.json`, four `.ppm` images,
/// `report.json`, and `report.txt`. A `run.json` manifest records the
/// configuration and seed at the top level.
pub fn run_pipeline(config: &RunConfig) -> Result<Vec<ViewReport>> {
    let query: SearchQuery = config.query.parse().map_err(|e: Error| e.in_stage("ingest"))?;
    let records = read_corpus(&config.corpus).map_err(|e| e.in_stage("ingest"))?;
    let matched = filter_records(&records, &query);
    let params = LayoutParams { seed: config.seed, ..config.layout.clone() };
    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;

    let mut reports = Vec::new();
    for attr in &config.attr_types {
        let dir = config.out_dir.join(attr);
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let h = Hypergraph::build(attr.clone(), &extract_attribute_sets(&matched, attr));
        write_json(&dir.join("hypergraph.json"), &h)?;

        let comparison = if h.hyperedge_count() == 0 {
            log::warn!("search `{}` has no {attr} collaboration; no images written", config.search_id);
            None
        } else {
            let c = compare_views(&h, &params, &config.style)?;
            write_json(&dir.join("clique.graph.json"), &c.clique)?;
            write_json(&dir.join("extra.graph.json"), &c.extra)?;
            for layout in &c.computed {
                write_json(&dir.join(format!("layout_on_{}.json", layout.computed_on.short())), layout)?;
            }
            for view in &c.views {
                view.image.write_ppm(&dir.join(format!("{}.ppm", view.name)))?;
            }
            Some(c)
        };
        let report = build_report(&config.search_id, &config.query, config.seed, &h, comparison.as_ref());
        write_json(&dir.join("report.json"), &report)?;
        write_text(&dir.join("report.txt"), &report.to_text())?;
        log::info!("{}/{attr}: G_edge {:?}", config.search_id, report.edge_gain);
        reports.push(report);
    }

    write_text(&config.out_dir.join("gain_scatter.csv"), &emit_gain_scatter(&reports))?;
    let manifest = RunManifest {
        search_id: &config.search_id,
        corpus: &config.corpus,
        query: &config.query,
        attr_types: &config.attr_types,
        seed: config.seed,
        layout: &params,
        style: &config.style,
        matched_records: matched.len(),
        reports: config.attr_types.iter().map(|a| format!("{a}/report.json")).collect(),
    };
    write_json(&config.out_dir.join("run.json"), &manifest)?;
    Ok(reports)
}
