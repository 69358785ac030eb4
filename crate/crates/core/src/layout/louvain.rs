//! Two-phase Louvain modularity optimization.
//!
//! Phase one moves single nodes to the neighbouring community with the
//! largest modularity gain until no move gains more than [`MIN_GAIN`].
//! Phase two collapses each community into a super-node (internal weight
//! becomes a self-loop) and the process repeats on the smaller graph.
//!
//! Nodes are processed in label order, then visited in a seeded shuffle;
//! equal gains go to the lowest community id. The result is therefore a
//! function of (graph, seed) only.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::expand::ExpandedGraph;

pub const MIN_GAIN: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct LouvainResult {
    /// Community id per node of the input graph, numbered by first
    /// appearance in node order.
    pub clusters: Vec<usize>,
    pub modularity: f64,
    /// Modularity of the singleton partition followed by the value after
    /// each aggregation level.
    pub level_modularity: Vec<f64>,
}

impl LouvainResult {
    pub fn community_count(&self) -> usize {
        self.clusters.iter().max().map_or(0, |m| m + 1)
    }
}

/// Undirected weighted graph with explicit self-loop weights.
#[derive(Debug, Clone)]
struct LevelGraph {
    adj: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl LevelGraph {
    fn len(&self) -> usize {
        self.adj.len()
    }

    /// `k_i = Σ_{j≠i} w_ij + 2·loop_i`
    fn strengths(&self) -> Vec<f64> {
        self.adj
            .iter()
            .zip(&self.self_loops)
            .map(|(row, l)| row.iter().map(|(_, w)| w).sum::<f64>() + 2.0 * l)
            .collect()
    }
}

/// Weighted modularity `Q = (1/2m) Σ_ij (w_ij − k_i k_j / 2m) δ(c_i, c_j)`.
/// Zero for a graph without edges.
pub fn modularity(g: &ExpandedGraph, clusters: &[usize]) -> f64 {
    let n = g.node_count();
    assert_eq!(clusters.len(), n);
    let two_m: f64 = 2.0 * g.edges().iter().map(|e| e.w).sum::<f64>();
    if two_m == 0.0 {
        return 0.0;
    }
    let communities = clusters.iter().max().map_or(0, |m| m + 1);
    let mut internal = vec![0.0; communities];
    let mut total = vec![0.0; communities];
    for e in g.edges() {
        total[clusters[e.a]] += e.w;
        total[clusters[e.b]] += e.w;
        if clusters[e.a] == clusters[e.b] {
            internal[clusters[e.a]] += 2.0 * e.w;
        }
    }
    internal.iter().zip(&total).map(|(i, t)| i / two_m - (t / two_m) * (t / two_m)).sum()
}

pub fn louvain(g: &ExpandedGraph, seed: u64) -> LouvainResult {
    let n = g.node_count();
    // Work in label order so that results do not depend on input order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.nodes()[a].label.cmp(&g.nodes()[b].label));
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[rank[e.a]].push((rank[e.b], e.w));
        adj[rank[e.b]].push((rank[e.a], e.w));
    }
    for row in &mut adj {
        row.sort_by_key(|&(j, _)| j);
    }
    let mut level = LevelGraph { adj, self_loops: vec![0.0; n] };

    // membership of each (label-ordered) original node in the current level graph
    let mut assignment: Vec<usize> = (0..n).collect();
    let to_original = |assignment: &[usize]| -> Vec<usize> {
        let mut out = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            out[i] = assignment[r];
        }
        out
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut history = vec![modularity(g, &renumber(&to_original(&assignment)))];

    let total_weight: f64 = g.edges().iter().map(|e| e.w).sum();
    if total_weight > 0.0 {
        loop {
            let (community, moved) = local_moves(&level, total_weight, &mut rng);
            if !moved {
                break;
            }
            let dense = renumber(&community);
            for a in assignment.iter_mut() {
                *a = dense[*a];
            }
            history.push(modularity(g, &renumber(&to_original(&assignment))));
            let count = dense.iter().max().map_or(0, |m| m + 1);
            if count == level.len() {
                break;
            }
            level = aggregate(&level, &dense, count);
        }
    }

    let clusters = renumber(&to_original(&assignment));
    let q = modularity(g, &clusters);
    LouvainResult { clusters, modularity: q, level_modularity: history }
}

/// One level of node moves. Returns the community per level node and
/// whether anything moved.
fn local_moves(g: &LevelGraph, m: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = g.len();
    let k = g.strengths();
    let mut community: Vec<usize> = (0..n).collect();
    let mut tot = k.clone();
    let mut visit: Vec<usize> = (0..n).collect();
    visit.shuffle(rng);

    let mut links = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut is_touched = vec![false; n];
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in &visit {
            let own = community[i];
            for &(j, w) in &g.adj[i] {
                let c = community[j];
                if !is_touched[c] {
                    is_touched[c] = true;
                    touched.push(c);
                }
                links[c] += w;
            }
            tot[own] -= k[i];
            let gain = |c: usize, links: &[f64]| links[c] / m - tot[c] * k[i] / (2.0 * m * m);
            let stay = gain(own, &links);
            let (mut best, mut best_gain) = (own, stay);
            for &c in &touched {
                let gc = gain(c, &links);
                if gc > best_gain || (gc == best_gain && c < best) {
                    best = c;
                    best_gain = gc;
                }
            }
            if best != own && best_gain - stay > MIN_GAIN {
                community[i] = best;
                moved = true;
            }
            tot[community[i]] += k[i];
            for &c in &touched {
                links[c] = 0.0;
                is_touched[c] = false;
            }
            links[own] = 0.0;
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (community, moved_any)
}

fn aggregate(g: &LevelGraph, dense: &[usize], count: usize) -> LevelGraph {
    let mut loops = vec![0.0; count];
    let mut weights: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); count];
    for i in 0..g.len() {
        let ci = dense[i];
        loops[ci] += g.self_loops[i];
        for &(j, w) in &g.adj[i] {
            let cj = dense[j];
            if ci == cj {
                // each internal edge is seen from both ends
                loops[ci] += w / 2.0;
            } else {
                *weights[ci].entry(cj).or_insert(0.0) += w;
            }
        }
    }
    LevelGraph { adj: weights.into_iter().map(|m| m.into_iter().collect()).collect(), self_loops: loops }
}

/// Relabel ids to 0.. by first appearance.
fn renumber(ids: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    ids.iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}
