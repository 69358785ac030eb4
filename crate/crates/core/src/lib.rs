//! Attribute hypergraphs built from publication metadata, and a pixel-level
//! comparison of their clique and extra-node views.

pub mod analysis;
pub mod error;
pub mod expand;
pub mod hypergraph;
pub mod ingest;
pub mod layout;
pub mod matrix;
pub mod pipeline;
pub mod render;
pub mod synth;

pub use error::{Error, Result};
pub use expand::{clique_expansion, edge_gain, expand, extra_node_expansion, ExpandedGraph, ViewKind};
pub use hypergraph::{Hyperedge, Hypergraph, SummaryStats};
pub use ingest::{extract_attribute_sets, filter_records, parse_corpus, PublicationRecord, SearchQuery};
pub use layout::{compute_layout, transfer_coordinates, LayoutParams, LayoutState};
pub use matrix::Matrix;
pub use pipeline::{aggregate_reports, emit_gain_scatter, run_pipeline, RunConfig, ViewReport};
pub use render::{clarity, clarity_gain, entropy, render_view, RasterImage, RenderStyle};
