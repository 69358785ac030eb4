use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expand::{ExpandedGraph, NodeKind};
use crate::layout::{LayoutState, PlacedNode};

/// Carry a layout from one view of a hypergraph to the other.
///
/// Real nodes keep their position and cluster. Going to the extra-node
/// view, each extra node lands on the isobarycenter of its members and
/// takes their majority cluster (lowest id on ties). Going to the clique
/// view, extra nodes are dropped.
pub fn transfer_coordinates(
    source: &LayoutState,
    from_view: &ExpandedGraph,
    to_view: &ExpandedGraph,
) -> Result<LayoutState> {
    if from_view.provenance() != to_view.provenance() {
        return Err(Error::ProvenanceMismatch {
            from: from_view.provenance().to_string(),
            to: to_view.provenance().to_string(),
        });
    }
    if source.view != from_view.view_kind() {
        return Err(Error::InvalidLayout(format!(
            "layout describes the {} view but the source graph is the {} view",
            source.view,
            from_view.view_kind()
        )));
    }
    let placed = source.by_label();
    if let Some(missing) = from_view.nodes().iter().find(|n| !placed.contains_key(n.label.as_str())) {
        return Err(Error::InvalidLayout(format!("no position for node `{}`", missing.label)));
    }

    let neighbours = to_view.neighbours();
    let mut nodes = Vec::with_capacity(to_view.node_count());
    for (i, node) in to_view.nodes().iter().enumerate() {
        match node.kind {
            NodeKind::Real => {
                let p = placed
                    .get(node.label.as_str())
                    .ok_or_else(|| Error::InvalidLayout(format!("no position for node `{}`", node.label)))?;
                nodes.push((*p).clone());
            }
            NodeKind::Extra => {
                let members: Vec<&PlacedNode> = neighbours[i]
                    .iter()
                    .map(|&(j, _)| {
                        let label = &to_view.nodes()[j].label;
                        placed
                            .get(label.as_str())
                            .copied()
                            .ok_or_else(|| Error::InvalidLayout(format!("no position for member `{label}`")))
                    })
                    .collect::<Result<_>>()?;
                if members.is_empty() {
                    return Err(Error::InvalidGraph(format!("extra node `{}` has no members", node.label)));
                }
                let k = members.len() as f64;
                let x = members.iter().map(|m| m.x).sum::<f64>() / k;
                let y = members.iter().map(|m| m.y).sum::<f64>() / k;
                let mut votes: BTreeMap<usize, usize> = BTreeMap::new();
                for m in &members {
                    *votes.entry(m.cluster).or_insert(0) += 1;
                }
                // max_by_key keeps the last maximum; iterate ids in reverse so ties go low
                let cluster = votes.iter().rev().max_by_key(|(_, &v)| v).map(|(&c, _)| c).unwrap_or(0);
                nodes.push(PlacedNode { label: node.label.clone(), x, y, cluster });
            }
        }
    }
    Ok(LayoutState {
        computed_on: source.computed_on,
        view: to_view.view_kind(),
        transferred: true,
        seed: source.seed,
        nodes,
    })
}
