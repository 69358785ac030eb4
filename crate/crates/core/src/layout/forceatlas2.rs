//! ForceAtlas2 force-directed layout (linear attraction, exact repulsion).
//!
//! Per iteration every node receives
//! - repulsion `k_r (d_i+1)(d_j+1) / dist` from every other node,
//! - attraction `dist · w^δ` along each incident edge,
//! - gravity `k_g (d_i+1)` toward the origin,
//!
//! and moves by its force scaled with an adaptive local speed. The global
//! speed follows the swinging/traction balance of the whole graph, with the
//! jitter-tolerance rules of the reference implementation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expand::ExpandedGraph;
use crate::layout::LayoutParams;

pub type Point = [f64; 2];

/// Seeded uniform square centred on the origin (centroid subtracted), in
/// the graph's own node order. Node `i` receives the `rank[i]`-th draw, so
/// the placement per label does not depend on node order.
fn initial_positions(n: usize, rank: &[usize], seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 10.0 * (n as f64).sqrt().max(1.0);
    let draws: Vec<Point> =
        (0..n).map(|_| [rng.gen_range(-side / 2.0..side / 2.0), rng.gen_range(-side / 2.0..side / 2.0)]).collect();
    let mut pos: Vec<Point> = rank.iter().map(|&r| draws[r]).collect();
    if n > 0 {
        let cx = draws.iter().map(|p| p[0]).sum::<f64>() / n as f64;
        let cy = draws.iter().map(|p| p[1]).sum::<f64>() / n as f64;
        for p in &mut pos {
            p[0] -= cx;
            p[1] -= cy;
        }
    }
    pos
}

/// Run the layout and return one position per node of `g`, in node order.
///
/// `initial` overrides the seeded start; it must hold one point per node.
pub fn force_atlas2(g: &ExpandedGraph, params: &LayoutParams, initial: Option<&[Point]>) -> Result<Vec<Point>> {
    let n = g.node_count();
    // Normalize to label order; every loop below runs in that order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.nodes()[a].label.cmp(&g.nodes()[b].label));
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }

    let start = match initial {
        Some(points) => {
            if points.len() != n {
                return Err(Error::InvalidLayout(format!("{} initial positions for {n} nodes", points.len())));
            }
            points.to_vec()
        }
        None => initial_positions(n, &rank, params.seed),
    };
    let mut pos: Vec<Point> = order.iter().map(|&i| start[i]).collect();

    let degree = g.degrees();
    let mass: Vec<f64> = order.iter().map(|&i| degree[i] as f64 + 1.0).collect();
    let mut edges: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (rank[e.a].min(rank[e.b]), rank[e.a].max(rank[e.b]));
            (a, b, e.w.powf(params.edge_weight_influence))
        })
        .collect();
    edges.sort_by_key(|&(a, b, _)| (a, b));

    let mut force = vec![[0.0; 2]; n];
    let mut old_force = vec![[0.0; 2]; n];
    let mut speed = 1.0;
    let mut speed_efficiency = 1.0;

    for iteration in 0..params.iterations {
        std::mem::swap(&mut force, &mut old_force);
        for f in force.iter_mut() {
            *f = [0.0; 2];
        }

        for i in 0..n {
            for j in i + 1..n {
                let dx = pos[i][0] - pos[j][0];
                let dy = pos[i][1] - pos[j][1];
                let d2 = dx * dx + dy * dy;
                if d2 > 0.0 {
                    let factor = params.repulsion * mass[i] * mass[j] / d2;
                    force[i][0] += dx * factor;
                    force[i][1] += dy * factor;
                    force[j][0] -= dx * factor;
                    force[j][1] -= dy * factor;
                }
            }
        }

        for i in 0..n {
            let d = (pos[i][0] * pos[i][0] + pos[i][1] * pos[i][1]).sqrt();
            if d > 0.0 {
                let factor = params.gravity * mass[i] / d;
                force[i][0] -= pos[i][0] * factor;
                force[i][1] -= pos[i][1] * factor;
            }
        }

        for &(a, b, w) in &edges {
            let dx = pos[a][0] - pos[b][0];
            let dy = pos[a][1] - pos[b][1];
            force[a][0] -= dx * w;
            force[a][1] -= dy * w;
            force[b][0] += dx * w;
            force[b][1] += dy * w;
        }

        let mut total_swinging = 0.0;
        let mut total_traction = 0.0;
        for i in 0..n {
            let sx = old_force[i][0] - force[i][0];
            let sy = old_force[i][1] - force[i][1];
            let tx = old_force[i][0] + force[i][0];
            let ty = old_force[i][1] + force[i][1];
            total_swinging += mass[i] * (sx * sx + sy * sy).sqrt();
            total_traction += 0.5 * mass[i] * (tx * tx + ty * ty).sqrt();
        }

        if total_swinging > 0.0 && total_traction > 0.0 {
            let nf = n as f64;
            let estimated = 0.05 * nf.sqrt();
            let min_jt = estimated.sqrt();
            let max_jt: f64 = 10.0;
            let mut jt = params.jitter_tolerance
                * min_jt.max(max_jt.min(estimated * total_traction / (nf * nf)));
            let min_speed_efficiency = 0.05;
            if total_swinging / total_traction > 2.0 {
                if speed_efficiency > min_speed_efficiency {
                    speed_efficiency *= 0.5;
                }
                jt = jt.max(params.jitter_tolerance);
            }
            let target_speed = jt * speed_efficiency * total_traction / total_swinging;
            if total_swinging > jt * total_traction {
                if speed_efficiency > min_speed_efficiency {
                    speed_efficiency *= 0.7;
                }
            } else if speed < params.max_speed {
                speed_efficiency *= 1.3;
            }
            let max_rise = 0.5;
            speed += (target_speed - speed).min(max_rise * speed);
        }

        for i in 0..n {
            let sx = old_force[i][0] - force[i][0];
            let sy = old_force[i][1] - force[i][1];
            let swinging = mass[i] * (sx * sx + sy * sy).sqrt();
            let factor = speed / (1.0 + (speed * swinging).sqrt());
            pos[i][0] += force[i][0] * factor;
            pos[i][1] += force[i][1] * factor;
        }

        if pos.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) || !speed.is_finite() {
            return Err(Error::NonFinite { iteration });
        }
    }

    let mut out = vec![[0.0; 2]; n];
    for (r, &i) in order.iter().enumerate() {
        out[i] = pos[r];
    }
    Ok(out)
}
