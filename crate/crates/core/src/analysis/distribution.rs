//! Collaboration-size histograms with their log-log power-law fit and the
//! potential edge-gain table.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expand::{clique_edge_count, spoke_count};
use crate::hypergraph::Hypergraph;

/// Occurrence count per hyperedge size. Weight-expanded: a hyperedge of
/// weight `w` counts `w` times.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeHistogram {
    bins: BTreeMap<usize, u64>,
}

impl SizeHistogram {
    /// Zero counts are dropped.
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut bins = BTreeMap::new();
        for (k, c) in counts {
            if c > 0 {
                *bins.entry(k).or_insert(0) += c;
            }
        }
        SizeHistogram { bins }
    }

    pub fn bins(&self) -> &BTreeMap<usize, u64> {
        &self.bins
    }

    pub fn count(&self, size: usize) -> u64 {
        self.bins.get(&size).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.bins.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }
}

pub fn size_histogram(h: &Hypergraph) -> SizeHistogram {
    SizeHistogram::from_counts(h.hyperedges().iter().map(|e| (e.size(), e.weight)))
}

/// `log10 N = intercept + exponent · log10 k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub intercept: f64,
    pub exponent: f64,
    pub r_squared: f64,
    pub fit_range: (usize, usize),
    pub points: usize,
}

impl PowerLawFit {
    pub fn predict(&self, size: usize) -> f64 {
        10f64.powf(self.intercept) * (size as f64).powf(self.exponent)
    }
}

/// The default linear region: from the modal size (smallest on ties) to the
/// largest size seen at least twice.
pub fn default_fit_range(hist: &SizeHistogram) -> Option<(usize, usize)> {
    let (&modal, _) = hist.bins.iter().fold(None, |best: Option<(&usize, &u64)>, (k, c)| match best {
        Some((_, bc)) if bc >= c => best,
        _ => Some((k, c)),
    })?;
    let (&last, _) = hist.bins.iter().rev().find(|(_, &c)| c >= 2)?;
    (last >= modal).then_some((modal, last))
}

/// Ordinary least squares of `log10 N` on `log10 k` over the sizes inside
/// `fit_range` (inclusive), or [`default_fit_range`] when `None`.
pub fn fit_power_law(hist: &SizeHistogram, fit_range: Option<(usize, usize)>) -> Result<PowerLawFit> {
    let range = match fit_range.or_else(|| default_fit_range(hist)) {
        Some(r) => r,
        None => return Err(Error::TooFewPoints(0)),
    };
    let samples: Vec<(f64, f64)> =
        hist.bins.range(range.0.max(1)..=range.1).map(|(&k, &c)| (k as f64, c as f64)).collect();
    let (intercept, exponent, r_squared) = fit_log_log(&samples)?;
    Ok(PowerLawFit { intercept, exponent, r_squared, fit_range: range, points: samples.len() })
}

/// OLS of `log10 count` on `log10 size` over positive samples. Returns
/// `(intercept, exponent, r²)`.
pub fn fit_log_log(samples: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    let pts: Vec<(f64, f64)> =
        samples.iter().filter(|(k, c)| *k > 0.0 && *c > 0.0).map(|(k, c)| (k.log10(), c.log10())).collect();
    if pts.len() < 3 {
        return Err(Error::TooFewPoints(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::TooFewPoints(1));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - (intercept + exponent * p.0)).powi(2)).sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok((intercept, exponent, r_squared))
}

/// Inclusive size range; `hi = None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl SizeRange {
    pub fn exactly(k: usize) -> Self {
        SizeRange { lo: k, hi: Some(k) }
    }

    pub fn between(lo: usize, hi: usize) -> Self {
        SizeRange { lo, hi: Some(hi) }
    }

    pub fn above(k: usize) -> Self {
        SizeRange { lo: k + 1, hi: None }
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= self.lo && self.hi.map_or(true, |hi| k <= hi)
    }

    /// 1, 2, 3, 4, 5, 6–10, 11–15, 16–20, 21–50, 51–100, >100.
    pub fn standard_bins() -> Vec<SizeRange> {
        let mut v: Vec<_> = (1..=5).map(SizeRange::exactly).collect();
        v.extend([(6, 10), (11, 15), (16, 20), (21, 50), (51, 100)].map(|(a, b)| SizeRange::between(a, b)));
        v.push(SizeRange::above(100));
        v
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(hi) if hi == self.lo => write!(f, "k={}", self.lo),
            Some(hi) => write!(f, "{}<=k<={}", self.lo, hi),
            None => write!(f, "k>{}", self.lo - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainRow {
    pub label: String,
    pub count: u64,
    /// `None` when the row holds only size-1 hyperedges (no edges at all).
    pub clique_edges: Option<u64>,
    pub extra_node_edges: Option<u64>,
    pub gain: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainTable {
    pub rows: Vec<GainRow>,
    pub total: GainRow,
}

fn gain_row(label: String, hist: &SizeHistogram, filter: impl Fn(usize) -> bool) -> GainRow {
    let mut count = 0;
    let mut clique = 0;
    let mut extra = 0;
    let mut any_edges = false;
    for (&k, &c) in hist.bins.iter().filter(|(k, _)| filter(**k)) {
        count += c;
        clique += c * clique_edge_count(k);
        extra += c * spoke_count(k);
        any_edges |= k >= 2;
    }
    let gain = (any_edges && extra > 0).then(|| clique as f64 / extra as f64);
    GainRow {
        label,
        count,
        clique_edges: any_edges.then_some(clique),
        extra_node_edges: any_edges.then_some(extra),
        gain,
    }
}

/// Potential edge counts per size range: clique `k(k−1)/2` and extra-node
/// spokes per hyperedge occurrence, with no deduplication across
/// hyperedges.
pub fn potential_gain_table(hist: &SizeHistogram, bins: &[SizeRange]) -> Result<GainTable> {
    if let Some(&k) = hist.bins.keys().find(|&&k| !bins.iter().any(|b| b.contains(k))) {
        return Err(Error::UncoveredSize(k));
    }
    let rows = bins.iter().map(|b| gain_row(b.to_string(), hist, |k| b.contains(k))).collect();
    let total = gain_row("Sum".to_string(), hist, |_| true);
    Ok(GainTable { rows, total })
}

impl GainTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("range,count,clique_edges,extra_node_edges,gain\n");
        for r in self.rows.iter().chain(std::iter::once(&self.total)) {
            let opt = |x: Option<u64>| x.map_or("x".to_string(), |v| v.to_string());
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.label,
                r.count,
                opt(r.clique_edges),
                opt(r.extra_node_edges),
                r.gain.map_or("x".to_string(), |g| format!("{g:.2}"))
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let header = ["|E|", "count", "edges clique view", "edges extra-node view", "G_edge"];
        let mut cells: Vec<[String; 5]> = vec![header.map(str::to_string)];
        for r in self.rows.iter().chain(std::iter::once(&self.total)) {
            let opt = |x: Option<u64>| x.map_or("x".to_string(), group_thousands);
            cells.push([
                r.label.clone(),
                group_thousands(r.count),
                opt(r.clique_edges),
                opt(r.extra_node_edges),
                r.gain.map_or("x".to_string(), |g| format!("{g:.2}")),
            ]);
        }
        crate::pipeline::align_table(&cells)
    }
}

pub(crate) fn group_thousands(v: u64) -> String {
    let s = v.to_string();
    let mut out = String::new();
    for (i, ch) in s.chars().enumerate() {
        if i > 0 && (s.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    out
}
