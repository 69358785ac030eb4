//! Hypergraph clustering coefficient `C(H) = 6·triangles / 2-paths`.
//!
//! A hyper-triangle is a closed sequence `v_i E_p v_j E_q v_k E_r v_i` with
//! three distinct vertices and three distinct hyperedges; each one is seen
//! as 6 ordered sequences. A 2-path is an ordered `v_i E_p v_j E_q v_k` with
//! distinct vertices. Whether `E_p = E_q` is allowed is configurable.

use serde::Serialize;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwoPathRule {
    /// `E_p = E_q` counts as a 2-path.
    #[default]
    AllowSameEdge,
    /// Only `E_p ≠ E_q`.
    DistinctEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusteringCoefficient {
    pub hyper_triangles: u64,
    /// Ordered 2-path sequences.
    pub two_paths: u64,
    /// `None` when there are no 2-paths.
    pub value: Option<f64>,
}

pub fn clustering_coefficient(h: &Hypergraph) -> ClusteringCoefficient {
    clustering_coefficient_with(h, TwoPathRule::default())
}

pub fn clustering_coefficient_with(h: &Hypergraph, rule: TwoPathRule) -> ClusteringCoefficient {
    let n = h.node_count();
    let a = h.adjacency_matrix().0;
    let memberships = h.memberships();
    let neighbours: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| a[(i, j)] > 0).collect()).collect();

    // Ordered sequences with unrestricted hyperedges: Σ_j (Σ_i A_ij)² − Σ_i A_ij².
    let mut two_paths: u64 = 0;
    for j in 0..n {
        let row = a.row(j);
        let s: u64 = row.iter().map(|&x| u64::from(x)).sum();
        let sq: u64 = row.iter().map(|&x| u64::from(x) * u64::from(x)).sum();
        two_paths += s * s - sq;
    }
    if rule == TwoPathRule::DistinctEdges {
        // remove E_p = E_q: ordered distinct triples inside a single hyperedge
        let same: u64 = h
            .hyperedges()
            .iter()
            .map(|e| {
                let k = e.size() as u64;
                k * k.saturating_sub(1) * k.saturating_sub(2)
            })
            .sum();
        two_paths -= same;
    }

    // Inclusion–exclusion over hyperedge coincidences for each ordered
    // vertex triple: A_ij A_jk A_ki − t (A_ij + A_jk + A_ki) + 2t, where t
    // counts hyperedges containing all three vertices.
    let mut ordered: i64 = 0;
    for i in 0..n {
        for &j in &neighbours[i] {
            let shared_ij = intersect(&memberships[i], &memberships[j]);
            for &k in &neighbours[j] {
                if k == i || a[(k, i)] == 0 {
                    continue;
                }
                let t = shared_ij.iter().filter(|&&e| h.hyperedges()[e].contains(k)).count() as i64;
                let (aij, ajk, aki) = (i64::from(a[(i, j)]), i64::from(a[(j, k)]), i64::from(a[(k, i)]));
                ordered += aij * ajk * aki - t * (aij + ajk + aki) + 2 * t;
            }
        }
    }
    debug_assert!(ordered >= 0 && ordered % 6 == 0);
    let ordered = ordered as u64;
    ClusteringCoefficient {
        hyper_triangles: ordered / 6,
        two_paths,
        value: (two_paths > 0).then(|| ordered as f64 / two_paths as f64),
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (0, 0);
    let mut out = Vec::new();
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(sets: &[&[&str]]) -> Hypergraph {
        let entries: Vec<_> = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("r{i}"), s.iter().map(|x| x.to_string()).collect()))
            .collect();
        Hypergraph::build("o", &entries)
    }

    #[test]
    fn triangle_of_dyads() {
        let c = clustering_coefficient(&hg(&[&["A", "B"], &["B", "C"], &["C", "A"]]));
        assert_eq!(c.hyper_triangles, 1);
        assert_eq!(c.two_paths, 6);
        assert_eq!(c.value, Some(1.0));
    }

    #[test]
    fn single_hyperedge_has_no_triangle() {
        let c = clustering_coefficient(&hg(&[&["A", "B", "C"]]));
        assert_eq!((c.hyper_triangles, c.two_paths, c.value), (0, 6, Some(0.0)));
        let c = clustering_coefficient_with(&hg(&[&["A", "B", "C"]]), TwoPathRule::DistinctEdges);
        assert_eq!((c.two_paths, c.value), (0, None));
    }

    #[test]
    fn chain() {
        let c = clustering_coefficient(&hg(&[&["A", "B"], &["B", "C"]]));
        assert_eq!((c.hyper_triangles, c.two_paths, c.value), (0, 2, Some(0.0)));
    }

    #[test]
    fn undefined_without_paths() {
        let c = clustering_coefficient(&hg(&[&["A", "B"]]));
        assert_eq!(c.value, None);
    }
}
