#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use hyperview_core::expand::{ExpandedGraph, GraphEdge, GraphNode, NodeKind, ViewKind};
use hyperview_core::ingest::AttributeEntry;
use hyperview_core::Hypergraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn entries(sets: &[&[&str]]) -> Vec<AttributeEntry> {
    sets.iter()
        .enumerate()
        .map(|(i, s)| (format!("r{i}"), s.iter().map(|x| x.to_string()).collect()))
        .collect()
}

pub fn hypergraph(sets: &[&[&str]]) -> Hypergraph {
    Hypergraph::build("organisation", &entries(sets))
}

/// Up to `max_edges` random nonempty subsets of `n` labelled nodes.
pub fn random_entries(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize) -> Vec<AttributeEntry> {
    let n = rng.gen_range(1..=max_nodes);
    let m = rng.gen_range(1..=max_edges);
    (0..m)
        .map(|j| {
            let k = rng.gen_range(1..=n.min(6));
            let mut set = BTreeSet::new();
            while set.len() < k {
                set.insert(format!("v{:02}", rng.gen_range(0..n)));
            }
            (format!("p{j}"), set)
        })
        .collect()
}

pub fn random_hypergraph(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize) -> Hypergraph {
    Hypergraph::build("organisation", &random_entries(rng, max_nodes, max_edges))
}

pub fn plain_graph(n: usize, edges: &[(usize, usize)]) -> ExpandedGraph {
    let nodes = (0..n).map(|i| GraphNode { label: format!("n{i:02}"), kind: NodeKind::Real, source: None }).collect();
    let edges = edges.iter().map(|&(a, b)| GraphEdge { a, b, w: 1.0 }).collect();
    ExpandedGraph::from_parts(ViewKind::Clique, "test".into(), nodes, edges).unwrap()
}

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}
