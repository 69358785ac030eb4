//! Weighted attribute hypergraphs and their structural matrices.
//!
//! A [`Hypergraph`] is built from per-record attribute sets: every distinct
//! set becomes one hyperedge whose weight counts the records that carried
//! it. Nodes are the sorted union of attribute values, so every matrix and
//! downstream artifact is indexed reproducibly.
//!
//! Degrees and adjacency are structural: they count distinct hyperedges and
//! ignore weights. [`Hypergraph::weighted_adjacency`] is the weighted variant.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ingest::AttributeEntry;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperedge {
    /// Sorted, duplicate-free node indices.
    pub members: Vec<usize>,
    pub weight: u64,
    /// Ids of the records that contributed this hyperedge.
    #[serde(default)]
    pub sources: Vec<String>,
}

impl Hyperedge {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    attr_type: String,
    nodes: Vec<String>,
    hyperedges: Vec<Hyperedge>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    attr_type: String,
    nodes: Vec<String>,
    hyperedges: Vec<Hyperedge>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::from_parts(raw.attr_type, raw.nodes, raw.hyperedges)
    }
}

/// 0/1 node-by-hyperedge membership matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrix(pub Matrix<u32>);

/// Symmetric co-membership counts with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix(pub Matrix<u32>);

impl AdjacencyMatrix {
    pub fn to_f64(&self) -> Matrix<f64> {
        self.0.map(f64::from)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub order: usize,
    pub rank: Option<usize>,
    pub anti_rank: Option<usize>,
    /// Distinct hyperedges after merging.
    pub hyperedge_count: usize,
    /// Sum of weights: the number of contributing records.
    pub collaborations: u64,
    /// Weight-expanded mean hyperedge size.
    pub average_size: Option<f64>,
    pub is_simple: bool,
}

impl Hypergraph {
    /// Merge attribute sets into a hypergraph. Identical sets collapse into
    /// one hyperedge whose weight is the number of entries carrying them.
    pub fn build(attr_type: impl Into<String>, entries: &[AttributeEntry]) -> Self {
        let labels: BTreeSet<&str> = entries.iter().flat_map(|(_, set)| set.iter().map(String::as_str)).collect();
        let nodes: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        let mut merged: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
        for (id, set) in entries {
            if set.is_empty() {
                continue;
            }
            // BTreeSet iteration is sorted, and so is the label index.
            let members: Vec<usize> = set.iter().map(|v| index[v.as_str()]).collect();
            merged.entry(members).or_default().push(id.clone());
        }
        let hyperedges = merged
            .into_iter()
            .map(|(members, mut sources)| {
                sources.sort();
                Hyperedge { members, weight: sources.len() as u64, sources }
            })
            .collect();
        Hypergraph { attr_type: attr_type.into(), nodes, hyperedges }
    }

    /// Validate and assemble a hypergraph from raw parts, e.g. after loading
    /// it from JSON. `sources` may be empty; otherwise its length must equal
    /// the weight.
    pub fn from_parts(attr_type: String, nodes: Vec<String>, hyperedges: Vec<Hyperedge>) -> Result<Self> {
        let mut seen_labels = BTreeSet::new();
        for label in &nodes {
            if !seen_labels.insert(label.as_str()) {
                return Err(Error::InvalidHypergraph(format!("duplicate node label `{label}`")));
            }
        }
        let mut seen_sets = BTreeSet::new();
        for (j, e) in hyperedges.iter().enumerate() {
            if e.members.is_empty() {
                return Err(Error::InvalidHypergraph(format!("hyperedge {j} is empty")));
            }
            if e.members.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidHypergraph(format!("hyperedge {j} members are not strictly increasing")));
            }
            if let Some(&bad) = e.members.iter().find(|&&m| m >= nodes.len()) {
                return Err(Error::InvalidHypergraph(format!("hyperedge {j} references node {bad} out of range")));
            }
            if e.weight == 0 {
                return Err(Error::InvalidHypergraph(format!("hyperedge {j} has zero weight")));
            }
            if !e.sources.is_empty() && e.sources.len() as u64 != e.weight {
                return Err(Error::InvalidHypergraph(format!(
                    "hyperedge {j} has weight {} but {} sources",
                    e.weight,
                    e.sources.len()
                )));
            }
            if !seen_sets.insert(e.members.as_slice()) {
                return Err(Error::InvalidHypergraph(format!("hyperedge {j} duplicates an earlier member set")));
            }
        }
        Ok(Hypergraph { attr_type, nodes, hyperedges })
    }

    pub fn attr_type(&self) -> &str {
        &self.attr_type
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == label)
    }

    /// Stable content identifier, used to check that two expanded views
    /// derive from the same hypergraph.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.attr_type.as_bytes());
        hasher.update([0]);
        for n in &self.nodes {
            hasher.update(n.as_bytes());
            hasher.update([0]);
        }
        for e in &self.hyperedges {
            for m in &e.members {
                hasher.update((*m as u64).to_le_bytes());
            }
            hasher.update(u64::MAX.to_le_bytes());
            hasher.update(e.weight.to_le_bytes());
        }
        let digest = hasher.finalize();
        let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        format!("{}:{hex}", self.attr_type)
    }

    /// Per-node list of hyperedge indices containing the node.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (j, e) in self.hyperedges.iter().enumerate() {
            for &m in &e.members {
                out[m].push(j);
            }
        }
        out
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut e = Matrix::zeros(self.nodes.len(), self.hyperedges.len());
        for (j, edge) in self.hyperedges.iter().enumerate() {
            for &i in &edge.members {
                e[(i, j)] = 1;
            }
        }
        IncidenceMatrix(e)
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        AdjacencyMatrix(self.pair_counts(|_| 1))
    }

    /// Like [`Self::adjacency_matrix`] but each hyperedge contributes its weight.
    pub fn weighted_adjacency(&self) -> Matrix<u64> {
        self.pair_counts(|e| e.weight)
    }

    fn pair_counts<T>(&self, contribution: impl Fn(&Hyperedge) -> T) -> Matrix<T>
    where
        T: Copy + Default + std::ops::AddAssign,
    {
        let n = self.nodes.len();
        let mut a = Matrix::zeros(n, n);
        for e in &self.hyperedges {
            let c = contribution(e);
            for (x, &i) in e.members.iter().enumerate() {
                for &j in &e.members[x + 1..] {
                    a[(i, j)] += c;
                    a[(j, i)] += c;
                }
            }
        }
        a
    }

    pub fn degree_vector(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.hyperedges {
            for &m in &e.members {
                deg[m] += 1;
            }
        }
        deg
    }

    pub fn summary_stats(&self) -> SummaryStats {
        let sizes = self.hyperedges.iter().map(Hyperedge::size);
        let collaborations: u64 = self.hyperedges.iter().map(|e| e.weight).sum();
        let weighted_size: u64 = self.hyperedges.iter().map(|e| e.weight * e.size() as u64).sum();
        SummaryStats {
            order: self.nodes.len(),
            rank: sizes.clone().max(),
            anti_rank: sizes.min(),
            hyperedge_count: self.hyperedges.len(),
            collaborations,
            average_size: (collaborations > 0).then(|| weighted_size as f64 / collaborations as f64),
            is_simple: true,
        }
    }

    /// Minimal number of hyperedges on a path from `u` to `v`, or `None`
    /// when they lie in different components.
    pub fn node_distance(&self, u: &str, v: &str) -> Result<Option<usize>> {
        let from = self.node_index(u).ok_or_else(|| Error::UnknownNode(u.to_string()))?;
        let to = self.node_index(v).ok_or_else(|| Error::UnknownNode(v.to_string()))?;
        Ok(self.index_distance(from, to))
    }

    pub fn index_distance(&self, from: usize, to: usize) -> Option<usize> {
        if from == to {
            return Some(0);
        }
        let memberships = self.memberships();
        let mut dist = vec![usize::MAX; self.nodes.len()];
        let mut edge_done = vec![false; self.hyperedges.len()];
        let mut queue = VecDeque::from([from]);
        dist[from] = 0;
        while let Some(x) = queue.pop_front() {
            for &j in &memberships[x] {
                if std::mem::replace(&mut edge_done[j], true) {
                    continue;
                }
                for &y in &self.hyperedges[j].members {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        if y == to {
                            return Some(dist[y]);
                        }
                        queue.push_back(y);
                    }
                }
            }
        }
        None
    }
}
