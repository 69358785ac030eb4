use crate::analysis::eigen::eigendecompose;
use crate::error::Result;
use crate::hypergraph::Hypergraph;

/// Sub-hypergraph centrality per node: `Σ_j u_ij² e^{λ_j}` over the
/// spectrum of the (unweighted) adjacency matrix, i.e. the diagonal of
/// `exp(A)`, which weighs closed walks of every length.
pub fn subhypergraph_centrality(h: &Hypergraph) -> Result<Vec<f64>> {
    let a = h.adjacency_matrix().to_f64();
    let spectrum = eigendecompose(&a)?;
    let exp_lambda: Vec<f64> = spectrum.eigenvalues.iter().map(|l| l.exp()).collect();
    let u = &spectrum.eigenvectors;
    Ok((0..h.node_count())
        .map(|i| exp_lambda.iter().enumerate().map(|(j, e)| u[(i, j)] * u[(i, j)] * e).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hyperedge;

    #[test]
    fn isolated_node_is_one() {
        let h = Hypergraph::from_parts(
            "o".into(),
            vec!["A".into()],
            vec![Hyperedge { members: vec![0], weight: 1, sources: vec![] }],
        )
        .unwrap();
        assert_eq!(subhypergraph_centrality(&h).unwrap(), vec![1.0]);
    }

    #[test]
    fn empty() {
        let h = Hypergraph::build("o", &[]);
        assert!(subhypergraph_centrality(&h).unwrap().is_empty());
    }

    #[test]
    fn triangle_hyperedge() {
        let set = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        let h = Hypergraph::build("o", &[("p".into(), set)]);
        let want = (2f64.exp() + 2.0 * (-1f64).exp()) / 3.0;
        for c in subhypergraph_centrality(&h).unwrap() {
            assert!((c - want).abs() < 1e-12);
            assert!((c - 2.708_272).abs() < 1e-6);
        }
    }
}
