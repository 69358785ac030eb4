use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperview_core::analysis::{clustering_coefficient, eigendecompose, subhypergraph_centrality};
use hyperview_core::layout::{force_atlas2, louvain, LayoutParams};
use hyperview_core::pipeline::compare_views;
use hyperview_core::render::{render_view, RenderStyle};
use hyperview_core::synth::{synthetic_corpus, SynthConfig, SYNTH_QUERY};
use hyperview_core::{
    clique_expansion, compute_layout, extract_attribute_sets, extra_node_expansion, filter_records, Hypergraph, Matrix,
    SearchQuery,
};

fn synthetic(attr: &str) -> Hypergraph {
    let records = synthetic_corpus(&SynthConfig::default());
    let query: SearchQuery = SYNTH_QUERY.parse().unwrap();
    Hypergraph::build(attr, &extract_attribute_sets(&filter_records(&records, &query), attr))
}

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi");
    for n in [16usize, 32, 64] {
        let m = Matrix::from_fn(n, n, |i, j| ((i * 7 + j * 7 + i * j) % 5) as f64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| eigendecompose(black_box(m)).unwrap()));
    }
    group.finish();
    let h = synthetic("organisation");
    c.bench_function("centrality/synthetic", |b| b.iter(|| subhypergraph_centrality(black_box(&h)).unwrap()));
    c.bench_function("clustering/synthetic", |b| b.iter(|| clustering_coefficient(black_box(&h))));
}

fn layout(c: &mut Criterion) {
    let h = synthetic("organisation");
    let clique = clique_expansion(&h);
    let extra = extra_node_expansion(&h);
    c.bench_function("louvain/clique", |b| b.iter(|| louvain(black_box(&clique), 1)));
    c.bench_function("louvain/extra", |b| b.iter(|| louvain(black_box(&extra), 1)));
    let params = LayoutParams { iterations: 100, ..LayoutParams::default() };
    c.bench_function("forceatlas2/extra_100_iter", |b| b.iter(|| force_atlas2(black_box(&extra), &params, None).unwrap()));
}

fn raster(c: &mut Criterion) {
    let h = synthetic("organisation");
    let clique = clique_expansion(&h);
    let state = compute_layout(&clique, &LayoutParams { iterations: 200, ..LayoutParams::default() }).unwrap();
    let style = RenderStyle::default();
    c.bench_function("render/clique_2000px", |b| b.iter(|| render_view(black_box(&clique), &state, &style).unwrap()));

    let mut group = c.benchmark_group("compare_views");
    group.sample_size(10);
    let params = LayoutParams { iterations: 200, ..LayoutParams::default() };
    group.bench_function("synthetic_organisation", |b| b.iter(|| compare_views(black_box(&h), &params, &style).unwrap()));
    group.finish();
}

criterion_group!(benches, spectral, layout, raster);
criterion_main!(benches);
