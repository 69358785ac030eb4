mod common;

use std::collections::{BTreeSet, VecDeque};

use hyperview_core::analysis::{potential_gain_table, size_histogram, SizeRange};
use hyperview_core::expand::{clique_edge_count, spoke_count};
use hyperview_core::ingest::{filter_records, AttributeEntry, PublicationRecord, SearchQuery};
use hyperview_core::render::{clarity, entropy, RasterImage};
use hyperview_core::layout::{LayoutState, PlacedNode};
use hyperview_core::{clique_expansion, extra_node_expansion, ExpandedGraph, Hypergraph, ViewKind};
use proptest::prelude::*;

const WORDS: [&str; 8] = ["bgo", "crystal", "crystals", "calorimeter", "silicon", "timing", "Bgo", "x"];

fn record_strategy() -> impl Strategy<Value = PublicationRecord> {
    let words = || proptest::collection::vec(proptest::sample::select(WORDS.to_vec()), 0..6).prop_map(|w| w.join(" "));
    (any::<u32>(), words(), words()).prop_map(|(id, title, abstract_text)| PublicationRecord {
        id: format!("r{id}"),
        title,
        abstract_text,
        attributes: Default::default(),
    })
}

fn entries_strategy(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Vec<AttributeEntry>> {
    let set = proptest::collection::btree_set(0..max_nodes, 1..=max_nodes.min(6))
        .prop_map(|s| s.into_iter().map(|i| format!("v{i:02}")).collect::<BTreeSet<_>>());
    proptest::collection::vec(set, 1..=max_edges)
        .prop_map(|sets| sets.into_iter().enumerate().map(|(i, s)| (format!("p{i}"), s)).collect())
}

/// Shortest node-hyperedge alternating path length, in hyperedges, by BFS
/// over the bipartite incidence graph.
fn bipartite_distance(h: &Hypergraph, u: usize, v: usize) -> Option<usize> {
    let n = h.node_count();
    let m = h.hyperedge_count();
    let mut dist = vec![usize::MAX; n + m];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let next: Vec<usize> = if x < n {
            (0..m).filter(|&j| h.hyperedges()[j].members.contains(&x)).map(|j| n + j).collect()
        } else {
            h.hyperedges()[x - n].members.clone()
        };
        for y in next {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    (dist[v] != usize::MAX).then(|| dist[v] / 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn filtering_is_a_subset_and_idempotent(records in proptest::collection::vec(record_strategy(), 0..20),
                                           q in proptest::sample::select(vec![
                                               "bgo", "bgo AND cryst*", "title:(bgo AND calor*) abstract:bgo",
                                               "NOT silicon", "crystal OR (timing AND NOT bgo)",
                                           ])) {
        let query: SearchQuery = q.parse().unwrap();
        let once = filter_records(&records, &query);
        prop_assert!(once.iter().all(|r| records.contains(r)));
        prop_assert_eq!(filter_records(&once, &query), once.clone());
        // order of the input is preserved
        let positions: Vec<usize> = once.iter().map(|r| records.iter().position(|x| x == r).unwrap()).collect();
        prop_assert!(positions.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn build_ignores_entry_order(entries in entries_strategy(12, 10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut shuffled = entries.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(Hypergraph::build("o", &entries), Hypergraph::build("o", &shuffled));
    }

    #[test]
    fn weights_count_entries(entries in entries_strategy(5, 12)) {
        let h = Hypergraph::build("o", &entries);
        prop_assert_eq!(h.hyperedges().iter().map(|e| e.weight).sum::<u64>(), entries.len() as u64);
        let distinct: BTreeSet<&BTreeSet<String>> = entries.iter().map(|(_, s)| s).collect();
        prop_assert_eq!(h.hyperedge_count(), distinct.len());
    }

    #[test]
    fn adjacency_is_incidence_product(entries in entries_strategy(10, 8)) {
        let h = Hypergraph::build("o", &entries);
        let e = h.incidence_matrix().0;
        let a = h.adjacency_matrix().0;
        let d = h.degree_vector();
        for i in 0..h.node_count() {
            for k in 0..h.node_count() {
                let eet: u32 = (0..h.hyperedge_count()).map(|j| e[(i, j)] * e[(k, j)]).sum();
                let want = if i == k { eet - d[i] as u32 } else { eet };
                prop_assert_eq!(a[(i, k)], want);
            }
        }
    }

    #[test]
    fn distance_matches_bipartite_bfs(entries in entries_strategy(9, 6)) {
        let h = Hypergraph::build("o", &entries);
        let n = h.node_count();
        for u in 0..n {
            for v in 0..n {
                let d = h.index_distance(u, v);
                prop_assert_eq!(d, bipartite_distance(&h, u, v));
                prop_assert_eq!(d, h.index_distance(v, u));
                for w in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (d, h.index_distance(u, w), h.index_distance(w, v)) {
                        prop_assert!(a <= b + c);
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_counts(entries in entries_strategy(12, 10)) {
        let h = Hypergraph::build("o", &entries);
        let clique = clique_expansion(&h);
        let extra = extra_node_expansion(&h);
        let pairs: BTreeSet<(usize, usize)> = h
            .hyperedges()
            .iter()
            .flat_map(|e| {
                let m = e.members.clone();
                (0..m.len()).flat_map(move |x| (x + 1..m.len()).map({ let m = m.clone(); move |y| (m[x], m[y]) }))
            })
            .collect();
        prop_assert_eq!(clique.edge_count(), pairs.len());
        let large = h.hyperedges().iter().filter(|e| e.size() >= 3).count();
        prop_assert_eq!(extra.extra_node_count(), large);
        prop_assert_eq!(extra.node_count(), h.node_count() + large);
        let spokes: u64 = h.hyperedges().iter().map(|e| spoke_count(e.size())).sum();
        prop_assert_eq!(extra.edge_count() as u64, spokes);
        // clique edges never exceed the per-hyperedge potential count
        let potential: u64 = h.hyperedges().iter().map(|e| clique_edge_count(e.size())).sum();
        prop_assert!(clique.edge_count() as u64 <= potential);
        let table = potential_gain_table(&size_histogram(&h), &SizeRange::standard_bins()).unwrap();
        prop_assert_eq!(table.total.count, entries.len() as u64);
    }

    #[test]
    fn graphs_round_trip_through_json(entries in entries_strategy(8, 6)) {
        let h = Hypergraph::build("o", &entries);
        let back: Hypergraph = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        prop_assert_eq!(&back, &h);
        for g in [clique_expansion(&h), extra_node_expansion(&h)] {
            let back: ExpandedGraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
            prop_assert_eq!(back, g);
        }
    }

    #[test]
    fn layout_json_is_bit_exact(coords in proptest::collection::vec((-1e6f64..1e6, -1e6f64..1e6, 0usize..20), 1..20)) {
        let state = LayoutState {
            computed_on: ViewKind::Clique,
            view: ViewKind::Clique,
            transferred: false,
            seed: 0,
            nodes: coords
                .iter()
                .enumerate()
                .map(|(i, &(x, y, cluster))| PlacedNode { label: format!("n{i}"), x, y, cluster })
                .collect(),
        };
        let back: LayoutState = serde_json::from_str(&serde_json::to_string(&state).unwrap()).unwrap();
        for (a, b) in back.nodes.iter().zip(&state.nodes) {
            prop_assert_eq!(a.x.to_bits(), b.x.to_bits());
            prop_assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
    }

    #[test]
    fn entropy_is_symmetric(c in 0.0f64..=1.0) {
        let h = entropy(c).unwrap();
        prop_assert!((h - entropy(1.0 - c).unwrap()).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&h));
    }

    #[test]
    fn drawing_never_raises_clarity(ops in proptest::collection::vec((-20i64..80, -20i64..80, -20i64..80, -20i64..80, 0u32..5), 1..20)) {
        let mut img = RasterImage::new(60, 60).unwrap();
        let mut last = clarity(&img);
        prop_assert_eq!(last, 1.0);
        for (x0, y0, x1, y1, w) in ops {
            img.draw_line((x0, y0), (x1, y1), w, [1, 2, 3]);
            img.fill_disc(x0, y0, i64::from(w), [9, 0, 0]);
            let c = clarity(&img);
            prop_assert!(c <= last);
            last = c;
        }
    }
}
