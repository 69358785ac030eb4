//! Clique and extra-node graph views of a hypergraph.
//!
//! The clique view joins every pair of co-members. The extra-node view keeps
//! size-2 hyperedges as direct edges and replaces every larger hyperedge with
//! one auxiliary node carrying one spoke per member. Size-1 hyperedges only
//! contribute their node in both views.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Edges drawn for one size-`k` hyperedge in the clique view.
pub fn clique_edge_count(k: usize) -> u64 {
    let k = k as u64;
    k * k.saturating_sub(1) / 2
}

/// Edges drawn for one size-`k` hyperedge in the extra-node view.
pub fn spoke_count(k: usize) -> u64 {
    match k {
        0 | 1 => 0,
        2 => 1,
        k => k as u64,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViewKind {
    Clique,
    ExtraNode,
}

impl ViewKind {
    pub fn other(self) -> ViewKind {
        match self {
            ViewKind::Clique => ViewKind::ExtraNode,
            ViewKind::ExtraNode => ViewKind::Clique,
        }
    }

    /// Short name used in file names and CLI flags.
    pub fn short(self) -> &'static str {
        match self {
            ViewKind::Clique => "clique",
            ViewKind::ExtraNode => "extra",
        }
    }
}

impl fmt::Display for ViewKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViewKind::Clique => "clique",
            ViewKind::ExtraNode => "extra-node",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Real,
    Extra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub label: String,
    pub kind: NodeKind,
    /// Source hyperedge index, for extra nodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub w: f64,
}

/// A simple weighted graph. Edges are stored once with `a < b`, sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct ExpandedGraph {
    view_kind: ViewKind,
    provenance: String,
    nodes: Vec<GraphNode>,
    edges: Vec<GraphEdge>,
}

#[derive(Deserialize)]
struct RawGraph {
    view_kind: ViewKind,
    #[serde(default)]
    provenance: String,
    nodes: Vec<GraphNode>,
    edges: Vec<GraphEdge>,
}

impl TryFrom<RawGraph> for ExpandedGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        ExpandedGraph::from_parts(raw.view_kind, raw.provenance, raw.nodes, raw.edges)
    }
}

impl ExpandedGraph {
    /// Validate and assemble. Edges are normalized to `a < b` and sorted;
    /// duplicate pairs are rejected.
    pub fn from_parts(
        view_kind: ViewKind,
        provenance: String,
        nodes: Vec<GraphNode>,
        mut edges: Vec<GraphEdge>,
    ) -> Result<Self> {
        let n = nodes.len();
        let mut labels = std::collections::HashSet::new();
        for node in &nodes {
            if !labels.insert(node.label.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate node label `{}`", node.label)));
            }
            if view_kind == ViewKind::Clique && node.kind == NodeKind::Extra {
                return Err(Error::InvalidGraph(format!("clique view contains extra node `{}`", node.label)));
            }
        }
        for e in &mut edges {
            if e.a >= n || e.b >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) out of range", e.a, e.b)));
            }
            if e.a == e.b {
                return Err(Error::InvalidGraph(format!("self-loop on node {}", e.a)));
            }
            if !(e.w.is_finite() && e.w > 0.0) {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) has weight {}", e.a, e.b, e.w)));
            }
            if e.a > e.b {
                std::mem::swap(&mut e.a, &mut e.b);
            }
        }
        edges.sort_by_key(|e| (e.a, e.b));
        if let Some(w) = edges.windows(2).find(|w| (w[0].a, w[0].b) == (w[1].a, w[1].b)) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", w[0].a, w[0].b)));
        }
        Ok(ExpandedGraph { view_kind, provenance, nodes, edges })
    }

    pub fn view_kind(&self) -> ViewKind {
        self.view_kind
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn extra_node_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Extra).count()
    }

    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.nodes.iter().enumerate().map(|(i, n)| (n.label.as_str(), i)).collect()
    }

    /// Unweighted degree per node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    /// Weighted adjacency lists.
    pub fn neighbours(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push((e.b, e.w));
            adj[e.b].push((e.a, e.w));
        }
        adj
    }
}

fn real_nodes(h: &Hypergraph) -> Vec<GraphNode> {
    h.nodes().iter().map(|l| GraphNode { label: l.clone(), kind: NodeKind::Real, source: None }).collect()
}

fn into_edges(pairs: BTreeMap<(usize, usize), u64>) -> Vec<GraphEdge> {
    pairs.into_iter().map(|((a, b), w)| GraphEdge { a, b, w: w as f64 }).collect()
}

/// Pairs co-occurring in several hyperedges merge into one edge whose
/// weight sums the hyperedge weights.
pub fn clique_expansion(h: &Hypergraph) -> ExpandedGraph {
    let mut pairs = BTreeMap::new();
    for e in h.hyperedges() {
        for (x, &a) in e.members.iter().enumerate() {
            for &b in &e.members[x + 1..] {
                *pairs.entry((a, b)).or_insert(0) += e.weight;
            }
        }
    }
    ExpandedGraph {
        view_kind: ViewKind::Clique,
        provenance: h.fingerprint(),
        nodes: real_nodes(h),
        edges: into_edges(pairs),
    }
}

/// Extra nodes are labelled `<attr_type>#edge<index>` and are never shared
/// between hyperedges.
pub fn extra_node_expansion(h: &Hypergraph) -> ExpandedGraph {
    let mut nodes = real_nodes(h);
    let mut pairs = BTreeMap::new();
    for (j, e) in h.hyperedges().iter().enumerate() {
        match e.members.as_slice() {
            [] | [_] => {}
            &[a, b] => *pairs.entry((a, b)).or_insert(0) += e.weight,
            members => {
                let hub = nodes.len();
                nodes.push(GraphNode {
                    label: format!("{}#edge{j}", h.attr_type()),
                    kind: NodeKind::Extra,
                    source: Some(j),
                });
                for &m in members {
                    *pairs.entry((m, hub)).or_insert(0) += e.weight;
                }
            }
        }
    }
    ExpandedGraph {
        view_kind: ViewKind::ExtraNode,
        provenance: h.fingerprint(),
        nodes,
        edges: into_edges(pairs),
    }
}

pub fn expand(h: &Hypergraph, kind: ViewKind) -> ExpandedGraph {
    match kind {
        ViewKind::Clique => clique_expansion(h),
        ViewKind::ExtraNode => extra_node_expansion(h),
    }
}

/// `|E_clique| / |E_extra-node|` on deduplicated edge counts; `None` when
/// the extra-node view has no edges.
pub fn edge_gain(clique: &ExpandedGraph, extra: &ExpandedGraph) -> Result<Option<f64>> {
    if clique.view_kind != ViewKind::Clique || extra.view_kind != ViewKind::ExtraNode {
        return Err(Error::InvalidGraph(format!(
            "edge gain expects (clique, extra-node) views, got ({}, {})",
            clique.view_kind, extra.view_kind
        )));
    }
    if clique.provenance != extra.provenance {
        return Err(Error::ProvenanceMismatch { from: clique.provenance.clone(), to: extra.provenance.clone() });
    }
    Ok((extra.edge_count() > 0).then(|| clique.edge_count() as f64 / extra.edge_count() as f64))
}
