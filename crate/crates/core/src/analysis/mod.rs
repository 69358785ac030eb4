//! Spectral and statistical characterization of hypergraphs.

pub mod centrality;
pub mod clustering;
pub mod distribution;
pub mod eigen;

pub use centrality::subhypergraph_centrality;
pub use clustering::{clustering_coefficient, clustering_coefficient_with, ClusteringCoefficient, TwoPathRule};
pub use distribution::{
    default_fit_range, fit_log_log, fit_power_law, potential_gain_table, size_histogram, GainRow, GainTable,
    PowerLawFit, SizeHistogram, SizeRange,
};
pub use eigen::{eigendecompose, SpectralDecomposition};
