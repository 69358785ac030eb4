//! Louvain communities and ForceAtlas2 positions for one view, plus the
//! transfer of positions to the other view.

pub mod forceatlas2;
pub mod louvain;
mod transfer;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expand::{ExpandedGraph, ViewKind};

pub use forceatlas2::{force_atlas2, Point};
pub use louvain::{louvain, modularity, LouvainResult};
pub use transfer::transfer_coordinates;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutParams {
    pub iterations: usize,
    /// Repulsion scaling `k_r`.
    pub repulsion: f64,
    /// Gravity `k_g`.
    pub gravity: f64,
    /// Exponent `δ` applied to edge weights in the attraction term.
    pub edge_weight_influence: f64,
    pub jitter_tolerance: f64,
    /// Speed-efficiency growth stops above this speed.
    pub max_speed: f64,
    pub seed: u64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            iterations: 1000,
            repulsion: 10.0,
            gravity: 1.0,
            edge_weight_influence: 1.0,
            jitter_tolerance: 1.0,
            max_speed: 1000.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedNode {
    pub label: String,
    pub x: f64,
    pub y: f64,
    pub cluster: usize,
}

/// Positions and communities for every node of one view.
///
/// `computed_on` names the view the layout algorithm ran on; `view` names
/// the view these positions describe. They differ after a transfer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutState {
    pub computed_on: ViewKind,
    pub view: ViewKind,
    pub transferred: bool,
    pub seed: u64,
    pub nodes: Vec<PlacedNode>,
}

impl LayoutState {
    pub fn by_label(&self) -> HashMap<&str, &PlacedNode> {
        self.nodes.iter().map(|n| (n.label.as_str(), n)).collect()
    }

    /// Positions and clusters in `g`'s node order.
    pub fn aligned_to(&self, g: &ExpandedGraph) -> Result<(Vec<Point>, Vec<usize>)> {
        let index = self.by_label();
        let mut points = Vec::with_capacity(g.node_count());
        let mut clusters = Vec::with_capacity(g.node_count());
        for node in g.nodes() {
            let placed = index
                .get(node.label.as_str())
                .ok_or_else(|| Error::InvalidLayout(format!("no position for node `{}`", node.label)))?;
            if !(placed.x.is_finite() && placed.y.is_finite()) {
                return Err(Error::InvalidLayout(format!("non-finite position for `{}`", node.label)));
            }
            points.push([placed.x, placed.y]);
            clusters.push(placed.cluster);
        }
        Ok((points, clusters))
    }
}

/// Cluster with Louvain, then place with ForceAtlas2, both on `g`.
pub fn compute_layout(g: &ExpandedGraph, params: &LayoutParams) -> Result<LayoutState> {
    let communities = louvain(g, params.seed);
    let points = force_atlas2(g, params, None)?;
    Ok(LayoutState {
        computed_on: g.view_kind(),
        view: g.view_kind(),
        transferred: false,
        seed: params.seed,
        nodes: g
            .nodes()
            .iter()
            .zip(points)
            .zip(communities.clusters)
            .map(|((node, [x, y]), cluster)| PlacedNode { label: node.label.clone(), x, y, cluster })
            .collect(),
    })
}
