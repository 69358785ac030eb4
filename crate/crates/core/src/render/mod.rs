//! Rasterization of a positioned view and the pixel metrics computed on it.
//!
//! Everything after the affine map is integer arithmetic: Bresenham lines
//! with a square brush and discs from the `dx² + dy² ≤ r²` test. With no
//! anti-aliasing every pixel is either untouched black or a palette colour.

mod metrics;
mod raster;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expand::{ExpandedGraph, NodeKind};
use crate::layout::LayoutState;

pub use metrics::{clarity, clarity_gain, entropy};
pub(crate) use metrics::ratio;
pub use raster::{RasterImage, Rgb, BLACK};

/// Grey used for edges whose endpoints sit in different clusters.
pub const INTER_CLUSTER_GREY: Rgb = [128, 128, 128];

pub const DEFAULT_PALETTE: [Rgb; 16] = [
    [230, 25, 75],
    [60, 180, 75],
    [255, 225, 25],
    [67, 99, 216],
    [245, 130, 49],
    [145, 30, 180],
    [66, 212, 244],
    [240, 50, 230],
    [191, 239, 69],
    [250, 190, 212],
    [70, 153, 144],
    [220, 190, 255],
    [154, 99, 36],
    [255, 250, 200],
    [128, 0, 0],
    [170, 255, 195],
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderStyle {
    pub width: u32,
    pub height: u32,
    pub real_radius: u32,
    pub extra_radius: u32,
    /// Stroke for weight 1; heavier edges grow with `log2(1 + w)`.
    pub base_stroke: u32,
    pub max_stroke: u32,
    pub palette: Vec<Rgb>,
    /// Fraction of each canvas side left empty on both ends.
    pub margin: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            width: 2000,
            height: 2000,
            real_radius: 6,
            extra_radius: 3,
            base_stroke: 1,
            max_stroke: 4,
            palette: DEFAULT_PALETTE.to_vec(),
            margin: 0.05,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidImage(m));
        if self.width == 0 || self.height == 0 {
            return bad(format!("canvas {}x{} is empty", self.width, self.height));
        }
        if !(0.0..0.5).contains(&self.margin) {
            return bad(format!("margin {} outside [0, 0.5)", self.margin));
        }
        if self.base_stroke == 0 || self.max_stroke < self.base_stroke {
            return bad(format!("stroke range {}..={} is invalid", self.base_stroke, self.max_stroke));
        }
        if self.palette.len() < 16 {
            return bad(format!("palette needs at least 16 colours, got {}", self.palette.len()));
        }
        for (i, c) in self.palette.iter().enumerate() {
            if *c == BLACK {
                return bad(format!("palette entry {i} is black"));
            }
            if self.palette[..i].contains(c) {
                return bad(format!("palette entry {i} repeats an earlier colour"));
            }
        }
        Ok(())
    }

    /// `base · clamp(round(log2(1 + w)), 1, max/base)`, so weight 1 keeps the base stroke.
    pub fn stroke_for(&self, w: f64) -> u32 {
        let steps = (1.0 + w).log2().round().max(1.0) as u32;
        (self.base_stroke * steps).min(self.max_stroke)
    }

    pub fn cluster_color(&self, cluster: usize) -> Rgb {
        self.palette[cluster % self.palette.len()]
    }
}

/// Parse a palette given as comma-separated `RRGGBB` hex triples (a leading
/// `#` is accepted).
pub fn parse_palette(list: &str) -> Result<Vec<Rgb>> {
    list.split(',')
        .map(|s| {
            let hex = s.trim().trim_start_matches('#');
            let bad = || Error::InvalidImage(format!("`{s}` is not an RRGGBB colour"));
            if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
                return Err(bad());
            }
            let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
            Ok([byte(0)?, byte(2)?, byte(4)?])
        })
        .collect()
}

/// Affine world→canvas map fitted to one view's bounding box.
struct CanvasMap {
    scale: f64,
    center: [f64; 2],
    canvas_center: [f64; 2],
}

impl CanvasMap {
    fn fit(points: &[[f64; 2]], style: &RenderStyle) -> CanvasMap {
        let canvas_center = [f64::from(style.width) / 2.0, f64::from(style.height) / 2.0];
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        if points.is_empty() {
            return CanvasMap { scale: 0.0, center: [0.0; 2], canvas_center };
        }
        let center = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        let avail = [
            f64::from(style.width) * (1.0 - 2.0 * style.margin),
            f64::from(style.height) * (1.0 - 2.0 * style.margin),
        ];
        let spans = [hi[0] - lo[0], hi[1] - lo[1]];
        let scale = (0..2)
            .filter(|&d| spans[d] > 0.0)
            .map(|d| avail[d] / spans[d])
            .fold(f64::INFINITY, f64::min);
        if scale.is_infinite() {
            if points.len() > 1 {
                log::warn!("all {} nodes share one position; drawing them at the canvas centre", points.len());
            }
            return CanvasMap { scale: 0.0, center, canvas_center };
        }
        CanvasMap { scale, center, canvas_center }
    }

    /// Canvas pixel for a world point; y grows upward in the world.
    fn apply(&self, p: [f64; 2]) -> (i64, i64) {
        let x = self.canvas_center[0] + (p[0] - self.center[0]) * self.scale;
        let y = self.canvas_center[1] - (p[1] - self.center[1]) * self.scale;
        (x.round() as i64, y.round() as i64)
    }
}

/// Draw `g` at the positions in `layout`: edges first, then extra nodes,
/// then real nodes on top.
pub fn render_view(g: &ExpandedGraph, layout: &LayoutState, style: &RenderStyle) -> Result<RasterImage> {
    style.validate()?;
    let (points, clusters) = layout.aligned_to(g)?;
    let mut img = RasterImage::new(style.width, style.height)?;
    let map = CanvasMap::fit(&points, style);
    let pixels: Vec<(i64, i64)> = points.iter().map(|&p| map.apply(p)).collect();

    for e in g.edges() {
        let color = if clusters[e.a] == clusters[e.b] {
            style.cluster_color(clusters[e.a])
        } else {
            INTER_CLUSTER_GREY
        };
        img.draw_line(pixels[e.a], pixels[e.b], style.stroke_for(e.w), color);
    }
    for kind in [NodeKind::Extra, NodeKind::Real] {
        let r = match kind {
            NodeKind::Real => style.real_radius,
            NodeKind::Extra => style.extra_radius,
        };
        for (i, node) in g.nodes().iter().enumerate() {
            if node.kind == kind {
                let (x, y) = pixels[i];
                img.fill_disc(x, y, i64::from(r), style.cluster_color(clusters[i]));
            }
        }
    }
    Ok(img)
}
