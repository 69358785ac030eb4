use serde::{Deserialize, Serialize};

use crate::analysis::distribution::group_thousands;
use crate::expand::ViewKind;
use crate::pipeline::table::align_table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewCounts {
    pub nodes: usize,
    pub edges: usize,
}

/// Metrics of one rendered image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageMetrics {
    /// File name of the image within the report directory.
    pub image: String,
    pub clarity: f64,
    pub entropy: f64,
    pub transferred: bool,
}

/// One comparison protocol: a layout computed on `computed_on`, rendered
/// there and transferred to the other view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolMetrics {
    pub computed_on: ViewKind,
    pub clique: ImageMetrics,
    pub extra_node: ImageMetrics,
    /// `clarity(extra) / clarity(clique)`; absent when the clique image has
    /// no black pixel.
    pub clarity_gain: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewReport {
    pub search_id: String,
    pub query: String,
    pub attr_type: String,
    pub seed: u64,
    pub collaborations: u64,
    pub hyperedges: usize,
    pub average_size: Option<f64>,
    pub clique: ViewCounts,
    pub extra_node: ViewCounts,
    pub extra_nodes: usize,
    /// `clique.edges / extra_node.edges`; absent when the extra-node view has no edge.
    pub edge_gain: Option<f64>,
    /// Empty when the search matched nothing.
    pub protocols: Vec<ProtocolMetrics>,
}

fn fmt_opt(v: Option<f64>, digits: usize) -> String {
    v.map_or("x".to_string(), |v| format!("{v:.digits$}"))
}

impl ViewReport {
    pub fn protocol(&self, computed_on: ViewKind) -> Option<&ProtocolMetrics> {
        self.protocols.iter().find(|p| p.computed_on == computed_on)
    }

    /// Search statistics followed by one line per rendered image.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "search {}  attr {}  seed {}\nquery: {}\n\n",
            self.search_id, self.attr_type, self.seed, self.query
        );
        let stats = [
            ["statistic".to_string(), "value".to_string()],
            ["collaborations".to_string(), group_thousands(self.collaborations)],
            ["distinct hyperedges".to_string(), group_thousands(self.hyperedges as u64)],
            ["average size".to_string(), fmt_opt(self.average_size, 2)],
            ["clique view nodes".to_string(), group_thousands(self.clique.nodes as u64)],
            ["clique view edges".to_string(), group_thousands(self.clique.edges as u64)],
            ["extra-node view nodes".to_string(), group_thousands(self.extra_node.nodes as u64)],
            ["extra-node view edges".to_string(), group_thousands(self.extra_node.edges as u64)],
            ["G_edge".to_string(), fmt_opt(self.edge_gain, 2)],
        ];
        out.push_str(&align_table(&stats));
        if self.protocols.is_empty() {
            out.push_str("\nno images: the search produced no collaboration\n");
            return out;
        }
        let mut rows = vec![["layout on", "view", "transferred", "clarity", "entropy", "G_C"].map(str::to_string)];
        for p in &self.protocols {
            for (view, m) in [(ViewKind::Clique, &p.clique), (ViewKind::ExtraNode, &p.extra_node)] {
                rows.push([
                    p.computed_on.to_string(),
                    view.to_string(),
                    m.transferred.to_string(),
                    format!("{:.4}", m.clarity),
                    format!("{:.4}", m.entropy),
                    if view == ViewKind::ExtraNode { fmt_opt(p.clarity_gain, 4) } else { String::new() },
                ]);
            }
        }
        out.push('\n');
        out.push_str(&align_table(&rows));
        out
    }
}

/// Summary statistics of one metric (population standard deviation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Describe {
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

/// Linear interpolation between order statistics at position `p (n − 1)`.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = p * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn describe(values: &[f64]) -> Option<Describe> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    let var = sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Some(Describe {
        n: sorted.len(),
        mean,
        std_dev: var.sqrt(),
        q1: quantile(&sorted, 0.25),
        q2: quantile(&sorted, 0.5),
        q3: quantile(&sorted, 0.75),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub metric: String,
    pub stats: Option<Describe>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateSummary {
    pub reports: usize,
    pub metrics: Vec<MetricSummary>,
    /// Share of reports with a defined G_edge below 1, in percent.
    pub edge_gain_below_one_pct: Option<f64>,
}

pub(crate) fn image_stem(computed_on: ViewKind, view: ViewKind) -> String {
    if computed_on == view {
        format!("{}_on_{}", view.short(), view.short())
    } else {
        format!("{}_from_{}", view.short(), computed_on.short())
    }
}

/// Summarize G_edge and every image metric across reports. Metrics that are
/// undefined for a report are left out of that metric's sample.
pub fn aggregate_reports(reports: &[ViewReport]) -> AggregateSummary {
    let mut metrics = Vec::new();
    let mut push = |name: String, values: Vec<f64>| metrics.push(MetricSummary { metric: name, stats: describe(&values) });

    let gains: Vec<f64> = reports.iter().filter_map(|r| r.edge_gain).collect();
    push("edge_gain".into(), gains.clone());
    for computed_on in [ViewKind::Clique, ViewKind::ExtraNode] {
        let protocols: Vec<&ProtocolMetrics> = reports.iter().filter_map(|r| r.protocol(computed_on)).collect();
        for view in [ViewKind::Clique, ViewKind::ExtraNode] {
            let pick = |p: &ProtocolMetrics| if view == ViewKind::Clique { p.clique.clone() } else { p.extra_node.clone() };
            let stem = image_stem(computed_on, view);
            push(format!("clarity_{stem}"), protocols.iter().map(|p| pick(p).clarity).collect());
            push(format!("entropy_{stem}"), protocols.iter().map(|p| pick(p).entropy).collect());
        }
        push(
            format!("clarity_gain_layout_{}", computed_on.short()),
            protocols.iter().filter_map(|p| p.clarity_gain).collect(),
        );
    }
    let below = (!gains.is_empty())
        .then(|| 100.0 * gains.iter().filter(|&&g| g < 1.0).count() as f64 / gains.len() as f64);
    AggregateSummary { reports: reports.len(), metrics, edge_gain_below_one_pct: below }
}

impl AggregateSummary {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,n,mean,std_dev,q1,q2,q3\n");
        for m in &self.metrics {
            match &m.stats {
                Some(s) => out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    m.metric, s.n, s.mean, s.std_dev, s.q1, s.q2, s.q3
                )),
                None => out.push_str(&format!("{},0,,,,,\n", m.metric)),
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut rows = vec![["metric", "n", "average", "std dev", "Q1", "Q2", "Q3"].map(str::to_string)];
        for m in &self.metrics {
            let f = |v: f64| format!("{v:.2}");
            rows.push(match &m.stats {
                Some(s) => [m.metric.clone(), s.n.to_string(), f(s.mean), f(s.std_dev), f(s.q1), f(s.q2), f(s.q3)],
                None => [m.metric.clone(), "0".into(), "x".into(), "x".into(), "x".into(), "x".into(), "x".into()],
            });
        }
        let mut out = format!("{} reports\n", self.reports);
        out.push_str(&align_table(&rows));
        out.push_str(&format!("G_edge < 1: {}%\n", fmt_opt(self.edge_gain_below_one_pct, 1)));
        out
    }
}

/// CSV of (average hyperedge size, G_edge), one row per report. Reports
/// without a defined G_edge or average size are skipped with a warning.
pub fn emit_gain_scatter(reports: &[ViewReport]) -> String {
    let mut out = String::from("search_id,attr_type,average_size,edge_gain\n");
    for r in reports {
        match (r.average_size, r.edge_gain) {
            (Some(avg), Some(gain)) => {
                out.push_str(&format!("{},{},{avg},{gain}\n", csv_field(&r.search_id), csv_field(&r.attr_type)))
            }
            _ => log::warn!("skipping {}/{}: G_edge undefined", r.search_id, r.attr_type),
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
