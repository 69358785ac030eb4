//! Seeded synthetic corpus with community-structured collaborations.
//!
//! Organisations and keywords are split into groups. Each record draws a
//! home group and takes most of its members from it, so the collaboration
//! graph has clear communities joined by a few cross-group links.

use std::collections::{BTreeMap, BTreeSet};

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ingest::PublicationRecord;

/// Matches every on-topic record produced by [`synthetic_corpus`].
pub const SYNTH_QUERY: &str = "bgo AND (cryst* OR calor*)";

const ON_TOPIC: [&str; 6] = [
    "BGO crystal scintillator light yield",
    "Radiation hardness of BGO crystals",
    "A BGO calorimeter for gamma-ray astronomy",
    "Timing with BGO crystal arrays",
    "Energy resolution of a BGO calorimeter",
    "Growth of large BGO crystals",
];

const OFF_TOPIC: [&str; 4] = [
    "Silicon strip tracker alignment",
    "Muon chamber efficiency",
    "Lead tungstate ageing studies",
    "Trigger firmware for pixel detectors",
];

/// Relative frequency of collaboration sizes 2..=10; the mean is about 5.1.
const SIZE_WEIGHTS: [u32; 9] = [10, 16, 18, 16, 12, 9, 7, 5, 4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub records: usize,
    pub seed: u64,
    pub org_groups: usize,
    pub orgs_per_group: usize,
    pub keyword_topics: usize,
    pub keywords_per_topic: usize,
    /// Chance that a member is drawn from outside the home group.
    pub cross_group: f64,
    /// Share of records whose title misses the query.
    pub off_topic: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            records: 200,
            seed: 2012,
            org_groups: 8,
            orgs_per_group: 15,
            keyword_topics: 10,
            keywords_per_topic: 12,
            cross_group: 0.1,
            off_topic: 0.1,
        }
    }
}

fn draw_members(
    rng: &mut ChaCha8Rng,
    k: usize,
    home: usize,
    groups: usize,
    per_group: usize,
    cross: f64,
    label: impl Fn(usize, usize) -> String,
) -> BTreeSet<String> {
    let k = k.min(groups * per_group);
    let mut out = BTreeSet::new();
    while out.len() < k {
        let g = if rng.gen_bool(cross) { rng.gen_range(0..groups) } else { home };
        out.insert(label(g, rng.gen_range(0..per_group)));
    }
    out
}

pub fn synthetic_corpus(cfg: &SynthConfig) -> Vec<PublicationRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sizes = WeightedIndex::new(SIZE_WEIGHTS).expect("static weights are valid");
    (0..cfg.records)
        .map(|n| {
            let on_topic = !rng.gen_bool(cfg.off_topic);
            let title = if on_topic { ON_TOPIC.choose(&mut rng) } else { OFF_TOPIC.choose(&mut rng) }
                .expect("non-empty title list")
                .to_string();
            let org_home = rng.gen_range(0..cfg.org_groups);
            let k = sizes.sample(&mut rng) + 2;
            let orgs = draw_members(&mut rng, k, org_home, cfg.org_groups, cfg.orgs_per_group, cfg.cross_group, |g, i| {
                format!("ORG-{g:02}-{i:02}")
            });
            let topic = rng.gen_range(0..cfg.keyword_topics);
            let kw_count = rng.gen_range(3..=7);
            let keywords = draw_members(
                &mut rng,
                kw_count,
                topic,
                cfg.keyword_topics,
                cfg.keywords_per_topic,
                cfg.cross_group,
                |g, i| format!("topic{g:02}-term{i:02}"),
            );
            PublicationRecord {
                id: format!("syn-{n:04}"),
                abstract_text: format!("We study {}.", title.to_lowercase()),
                title,
                attributes: BTreeMap::from([("organisation".to_string(), orgs), ("keyword".to_string(), keywords)]),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::ingest::{extract_attribute_sets, filter_records, SearchQuery};

    #[test]
    fn seeded_and_sized() {
        let cfg = SynthConfig::default();
        let a = synthetic_corpus(&cfg);
        assert_eq!(a, synthetic_corpus(&cfg));
        assert_eq!(a.len(), 200);
        let other = synthetic_corpus(&SynthConfig { seed: 1, ..cfg });
        assert_ne!(a, other);
    }

    #[test]
    fn query_selects_on_topic_records() {
        let records = synthetic_corpus(&SynthConfig::default());
        let q: SearchQuery = SYNTH_QUERY.parse().unwrap();
        let hits = filter_records(&records, &q);
        assert!(hits.len() > 150 && hits.len() < 200);
        assert!(hits.iter().all(|r| ON_TOPIC.contains(&r.title.as_str())));
        for attr in ["organisation", "keyword"] {
            let h = Hypergraph::build(attr, &extract_attribute_sets(&hits, attr));
            assert!(h.summary_stats().average_size.unwrap() >= 4.0, "{attr}");
        }
    }
}
