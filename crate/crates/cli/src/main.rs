//! `hyperview`: run the clique vs extra-node comparison end to end, or one
//! stage at a time with JSON files in between.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use hyperview_core::analysis::{
    clustering_coefficient, fit_power_law, potential_gain_table, size_histogram, SizeRange,
};
use hyperview_core::expand::{expand, ViewKind};
use hyperview_core::ingest::{extract_attribute_sets, filter_records, parse_corpus, write_corpus, SearchQuery};
use hyperview_core::layout::{compute_layout, transfer_coordinates, LayoutParams, LayoutState};
use hyperview_core::pipeline::{aggregate_reports, emit_gain_scatter, run_pipeline, RunConfig, ViewReport};
use hyperview_core::render::{clarity, entropy, parse_palette, render_view, RenderStyle};
use hyperview_core::synth::{synthetic_corpus, SynthConfig};
use hyperview_core::{ExpandedGraph, Hypergraph};

#[derive(Parser)]
#[command(name = "hyperview", version, about = "Compare clique and extra-node views of attribute hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage for one search and write all artifacts
    All(AllArgs),
    /// Filter a corpus with a keyword query
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        query: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the hypergraph of one attribute type
    Build {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        attr: String,
        /// Optional query applied before building
        #[arg(long)]
        query: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Expand a hypergraph into the clique or extra-node view
    Expand {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, value_enum)]
        view: View,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cluster and lay out a graph, optionally transferring to the other view
    Layout {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Graph of the other view to receive transferred coordinates
        #[arg(long, requires = "target_out")]
        target: Option<PathBuf>,
        #[arg(long)]
        target_out: Option<PathBuf>,
        #[command(flatten)]
        layout: LayoutFlags,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Transfer an existing layout to the other view
    Transfer {
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rasterize a positioned graph to PPM and print its clarity and entropy
    Render {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        style: StyleFlags,
    },
    /// Statistics and cross-search summaries
    #[command(subcommand)]
    Report(ReportCommand),
    /// Write the seeded synthetic corpus
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 200)]
        records: usize,
        #[arg(long, default_value_t = SynthConfig::default().seed)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Size histogram, power-law fit and potential gain table of a hypergraph
    Stats {
        #[arg(long)]
        hypergraph: PathBuf,
        /// Fit range as `LO-HI`; defaults to modal size through the last size seen twice
        #[arg(long)]
        fit_range: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Mean, standard deviation and quartiles across report.json files
    Aggregate {
        /// report.json files, or directories searched recursively
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the (average size, G_edge) scatter CSV here
        #[arg(long)]
        scatter: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    Clique,
    Extra,
}

impl From<View> for ViewKind {
    fn from(v: View) -> Self {
        match v {
            View::Clique => ViewKind::Clique,
            View::Extra => ViewKind::ExtraNode,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct AllArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    query: String,
    /// Comma-separated attribute types
    #[arg(long, value_delimiter = ',', default_value = "organisation,keyword")]
    attr: Vec<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Identifier written into every report; defaults to the output directory name
    #[arg(long)]
    search_id: Option<String>,
    #[command(flatten)]
    layout: LayoutFlags,
    #[command(flatten)]
    style: StyleFlags,
}

#[derive(Args)]
struct LayoutFlags {
    #[arg(long, default_value_t = LayoutParams::default().iterations)]
    iterations: usize,
    /// Repulsion strength
    #[arg(long, default_value_t = LayoutParams::default().repulsion)]
    kr: f64,
    #[arg(long, default_value_t = LayoutParams::default().gravity)]
    gravity: f64,
}

impl LayoutFlags {
    fn params(&self, seed: u64) -> LayoutParams {
        LayoutParams { iterations: self.iterations, repulsion: self.kr, gravity: self.gravity, seed, ..LayoutParams::default() }
    }
}

#[derive(Args)]
struct StyleFlags {
    #[arg(long, default_value_t = RenderStyle::default().width)]
    width: u32,
    #[arg(long, default_value_t = RenderStyle::default().height)]
    height: u32,
    /// Radius of real nodes in pixels
    #[arg(long, default_value_t = RenderStyle::default().real_radius)]
    node_radius: u32,
    #[arg(long, default_value_t = RenderStyle::default().extra_radius)]
    extra_radius: u32,
    /// Comma-separated RRGGBB colours, at least 16
    #[arg(long)]
    palette: Option<String>,
}

impl StyleFlags {
    fn style(&self) -> Result<RenderStyle> {
        let mut style = RenderStyle {
            width: self.width,
            height: self.height,
            real_radius: self.node_radius,
            extra_radius: self.extra_radius,
            ..RenderStyle::default()
        };
        if let Some(p) = &self.palette {
            style.palette = parse_palette(p)?;
        }
        style.validate()?;
        Ok(style)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_corpus(path: &Path) -> Result<Vec<hyperview_core::PublicationRecord>> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_corpus(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s.split_once('-').context("fit range must look like LO-HI")?;
    let range = (lo.trim().parse()?, hi.trim().parse()?);
    if range.0 > range.1 {
        bail!("fit range {s} is empty");
    }
    Ok(range)
}

fn collect_reports(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> =
                fs::read_dir(p)?.map(|e| e.map(|e| e.path())).collect::<std::io::Result<_>>()?;
            entries.sort();
            for e in entries {
                if e.is_dir() {
                    out.extend(collect_reports(&[e])?);
                } else if e.file_name().is_some_and(|n| n == "report.json") {
                    out.push(e);
                }
            }
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn stats(h: &Hypergraph, fit_range: Option<(usize, usize)>, format: Format) -> Result<String> {
    let hist = size_histogram(h);
    let table = potential_gain_table(&hist, &SizeRange::standard_bins())?;
    let fit = fit_power_law(&hist, fit_range);
    if let Err(e) = &fit {
        log::warn!("no power-law fit: {e}");
    }
    let fit = fit.ok();
    let summary = h.summary_stats();
    let cc = clustering_coefficient(h);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "summary": summary,
            "clustering_coefficient": cc,
            "histogram": hist,
            "fit": fit,
            "gain_table": table,
        }))? + "\n",
        Format::Csv => {
            let mut out = String::from("size,count\n");
            for (k, c) in hist.bins() {
                out.push_str(&format!("{k},{c}\n"));
            }
            out.push('\n');
            if let Some(f) = &fit {
                out.push_str("intercept,exponent,r_squared,fit_lo,fit_hi\n");
                out.push_str(&format!("{},{},{},{},{}\n\n", f.intercept, f.exponent, f.r_squared, f.fit_range.0, f.fit_range.1));
            }
            out + &table.to_csv()
        }
        Format::Text => {
            let opt = |v: Option<usize>| v.map_or("x".to_string(), |v| v.to_string());
            let mut out = format!(
                "{} nodes, {} distinct hyperedges, {} collaborations\nrank {}, anti-rank {}, average size {}\n",
                summary.order,
                summary.hyperedge_count,
                summary.collaborations,
                opt(summary.rank),
                opt(summary.anti_rank),
                summary.average_size.map_or("x".to_string(), |a| format!("{a:.2}")),
            );
            out.push_str(&format!(
                "clustering coefficient {}\n",
                cc.value.map_or("undefined".to_string(), |v| format!("{v:.4}"))
            ));
            match &fit {
                Some(f) => out.push_str(&format!(
                    "log10 N = {:.3} {:+.3} log10 k  (r² = {:.4}, sizes {}..={})\n\n",
                    f.intercept, f.exponent, f.r_squared, f.fit_range.0, f.fit_range.1
                )),
                None => out.push_str("no power-law fit\n\n"),
            }
            out + &table.to_text()
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::All(args) => {
            let search_id = args.search_id.clone().unwrap_or_else(|| {
                args.out.file_name().map_or("search".into(), |n| n.to_string_lossy().into_owned())
            });
            let config = RunConfig {
                search_id,
                corpus: args.corpus.clone(),
                query: args.query.clone(),
                attr_types: args.attr.clone(),
                layout: args.layout.params(args.seed),
                style: args.style.style()?,
                out_dir: args.out.clone(),
                seed: args.seed,
            };
            for r in run_pipeline(&config)? {
                println!("{}", r.to_text());
            }
        }
        Command::Ingest { corpus, query, out } => {
            let query: SearchQuery = query.parse()?;
            let records = read_corpus(&corpus)?;
            let hits = filter_records(&records, &query);
            let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_corpus(&hits, std::io::BufWriter::new(file))?;
            eprintln!("{} of {} records match", hits.len(), records.len());
        }
        Command::Build { corpus, attr, query, out } => {
            let mut records = read_corpus(&corpus)?;
            if let Some(q) = query {
                records = filter_records(&records, &q.parse()?);
            }
            let h = Hypergraph::build(attr.as_str(), &extract_attribute_sets(&records, &attr));
            write_json(&out, &h)?;
            eprintln!("{} nodes, {} hyperedges", h.node_count(), h.hyperedge_count());
        }
        Command::Expand { hypergraph, view, out } => {
            let h: Hypergraph = read_json(&hypergraph)?;
            let g = expand(&h, view.into());
            write_json(&out, &g)?;
            eprintln!("{} view: {} nodes, {} edges", g.view_kind(), g.node_count(), g.edge_count());
        }
        Command::Layout { graph, out, target, target_out, layout, seed } => {
            let g: ExpandedGraph = read_json(&graph)?;
            let state = compute_layout(&g, &layout.params(seed))?;
            write_json(&out, &state)?;
            if let (Some(target), Some(target_out)) = (target, target_out) {
                let t: ExpandedGraph = read_json(&target)?;
                write_json(&target_out, &transfer_coordinates(&state, &g, &t)?)?;
            }
        }
        Command::Transfer { layout, from, to, out } => {
            let state: LayoutState = read_json(&layout)?;
            let (from, to): (ExpandedGraph, ExpandedGraph) = (read_json(&from)?, read_json(&to)?);
            write_json(&out, &transfer_coordinates(&state, &from, &to)?)?;
        }
        Command::Render { graph, layout, out, style } => {
            let g: ExpandedGraph = read_json(&graph)?;
            let state: LayoutState = read_json(&layout)?;
            let img = render_view(&g, &state, &style.style()?)?;
            img.write_ppm(&out)?;
            let c = clarity(&img);
            println!("clarity {c:.6}  entropy {:.6}", entropy(c)?);
        }
        Command::Report(ReportCommand::Stats { hypergraph, fit_range, format }) => {
            let h: Hypergraph = read_json(&hypergraph)?;
            let range = fit_range.as_deref().map(parse_range).transpose()?;
            print!("{}", stats(&h, range, format)?);
        }
        Command::Report(ReportCommand::Aggregate { reports, format, scatter }) => {
            let paths = collect_reports(&reports)?;
            if paths.is_empty() {
                bail!("no report.json found");
            }
            let reports: Vec<ViewReport> = paths.iter().map(|p| read_json(p)).collect::<Result<_>>()?;
            let summary = aggregate_reports(&reports);
            match format {
                Format::Text => print!("{}", summary.to_text()),
                Format::Csv => print!("{}", summary.to_csv()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
            }
            if let Some(path) = scatter {
                fs::write(&path, emit_gain_scatter(&reports)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Synth { out, records, seed } => {
            let corpus = synthetic_corpus(&SynthConfig { records, seed, ..SynthConfig::default() });
            let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_corpus(&corpus, std::io::BufWriter::new(file))?;
        }
    }
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
