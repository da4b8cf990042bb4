//! Straight-line SVG drawings.
//!
//! Stored coordinates are used when every vertex has one. Otherwise the
//! outer face is pinned to a regular polygon and every other vertex is
//! placed at the average of its neighbours (Tutte's barycentric embedding),
//! which is a planar straight-line drawing for 3-connected plane graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::connectivity::{vertex_connectivity, ConnectivityError};
use crate::map::{Dart, PlaneGraph, Point};
use crate::validate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("no coordinates and the graph is not 3-connected (connectivity {0})")]
    LayoutUnavailable(usize),
    #[error("outer face boundary repeats a vertex")]
    OuterNotSimple,
    #[error("barycentric solve did not converge")]
    NoConvergence,
}

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    pub hamilton: Option<Vec<usize>>,
    pub paths: Vec<Vec<usize>>,
    pub face_labels: bool,
    /// Canvas side in pixels; 600 when zero.
    pub size: u32,
}

const PALETTE: [&str; 8] = [
    "#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const PATH_PALETTE: [&str; 4] = ["#000000", "#555555", "#888888", "#bbbbbb"];

pub const LAYOUT_TOLERANCE: f64 = 1e-9;

/// Positions for every vertex.
pub fn layout(g: &PlaneGraph) -> Result<Vec<Point>, RenderError> {
    if let Some(coords) = g.full_coords() {
        return Ok(coords);
    }
    let kappa = match vertex_connectivity(g.adjacency()) {
        Ok(c) => c.kappa,
        Err(ConnectivityError::Disconnected(_)) => 0,
        Err(_) => 0,
    };
    if kappa < 3 {
        return Err(RenderError::LayoutUnavailable(kappa));
    }
    barycentric(g)
}

/// Outer face (declared, else the longest, lowest id on ties) pinned to a
/// unit regular polygon; interior vertices solved by Gauss-Seidel until the
/// largest residual is below [`LAYOUT_TOLERANCE`].
pub fn barycentric(g: &PlaneGraph) -> Result<Vec<Point>, RenderError> {
    let outer = outer_face(g);
    let boundary: Vec<usize> = g.faces()[outer].vertices().collect();
    let n = g.vertex_count();
    let mut fixed = vec![false; n];
    for &v in &boundary {
        if fixed[v] {
            return Err(RenderError::OuterNotSimple);
        }
        fixed[v] = true;
    }
    let mut pos = vec![Point::new(0.0, 0.0); n];
    let k = boundary.len() as f64;
    // Faces are traced with the face on the right, so the outer boundary
    // runs counterclockwise around the drawing.
    for (i, &v) in boundary.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / k;
        pos[v] = Point::new(a.cos(), a.sin());
    }
    let adj = g.adjacency();
    for _ in 0..1_000_000 {
        let mut worst: f64 = 0.0;
        for v in 0..n {
            if fixed[v] {
                continue;
            }
            let nb = adj.neighbors(v);
            let (sx, sy) = nb
                .iter()
                .fold((0.0, 0.0), |(x, y), &w| (x + pos[w].x, y + pos[w].y));
            let next = Point::new(sx / nb.len() as f64, sy / nb.len() as f64);
            worst = worst
                .max((next.x - pos[v].x).abs())
                .max((next.y - pos[v].y).abs());
            pos[v] = next;
        }
        if worst < LAYOUT_TOLERANCE {
            return Ok(pos);
        }
    }
    Err(RenderError::NoConvergence)
}

fn outer_face(g: &PlaneGraph) -> usize {
    g.outer().map(|d| g.face_of(d)).unwrap_or_else(|| {
        g.faces()
            .iter()
            .max_by_key(|f| (f.len(), std::cmp::Reverse(f.id)))
            .map(|f| f.id)
            .unwrap_or(0)
    })
}

fn to_canvas(p: Point, min: Point, scale: f64, margin: f64) -> (f64, f64) {
    (
        margin + (p.x - min.x) * scale,
        margin + (p.y - min.y) * scale,
    )
}

pub fn render_svg(g: &PlaneGraph, options: &RenderOptions) -> Result<String, RenderError> {
    let pos = layout(g)?;
    let size = if options.size == 0 {
        600.0
    } else {
        options.size as f64
    };
    let margin = 30.0;
    let (mut min, mut max) = (
        Point::new(f64::MAX, f64::MAX),
        Point::new(f64::MIN, f64::MIN),
    );
    for p in &pos {
        min = Point::new(min.x.min(p.x), min.y.min(p.y));
        max = Point::new(max.x.max(p.x), max.y.max(p.y));
    }
    let span = (max.x - min.x).max(max.y - min.y).max(1e-9);
    let scale = (size - 2.0 * margin) / span;
    // SVG's y axis points down; flip so the drawing keeps its orientation.
    let pos: Vec<(f64, f64)> = pos
        .iter()
        .map(|&p| {
            let (x, y) = to_canvas(p, min, scale, margin);
            (x, size - y)
        })
        .collect();

    let curve_of = g.curves().ok();
    let mut out = String::new();
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">
<rect width="100%" height="100%" fill="white"/>"#
    )
    .unwrap();

    // Parallel edges are bowed apart so each stays visible.
    let mut bundle: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    out.push_str("<g id=\"edges\" fill=\"none\" stroke-width=\"2\">\n");
    for &(a, b) in g.edges() {
        let (u, v) = (a.vertex(), b.vertex());
        let key = (u.min(v), u.max(v));
        let rank = *bundle.entry(key).and_modify(|r| *r += 1).or_insert(0);
        let curve = curve_of.as_ref().map_or(0, |c| c.curve_of(a));
        let color = PALETTE[curve % PALETTE.len()];
        let d = edge_path(pos[u], pos[v], rank, u == v, a);
        writeln!(
            out,
            r#"<path class="edge curve-{curve}" stroke="{color}" d="{d}"/>"#
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    if let Some(cycle) = &options.hamilton {
        out.push_str("<g id=\"hamilton\" fill=\"none\" stroke=\"#000\" stroke-width=\"5\" stroke-opacity=\"0.35\">\n");
        for i in 0..cycle.len() {
            let (a, b) = (pos[cycle[i]], pos[cycle[(i + 1) % cycle.len()]]);
            writeln!(
                out,
                r#"<path class="hamilton" d="M {:.3} {:.3} L {:.3} {:.3}"/>"#,
                a.0, a.1, b.0, b.1
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    if !options.paths.is_empty() {
        out.push_str(
            "<g id=\"certificate\" fill=\"none\" stroke-width=\"4\" stroke-dasharray=\"6 4\">\n",
        );
        for (i, path) in options.paths.iter().enumerate() {
            let color = PATH_PALETTE[i % PATH_PALETTE.len()];
            let mut d = String::new();
            for (k, &v) in path.iter().enumerate() {
                let cmd = if k == 0 { "M" } else { "L" };
                write!(d, "{cmd} {:.3} {:.3} ", pos[v].0, pos[v].1).unwrap();
            }
            writeln!(
                out,
                r#"<path class="cert-path" stroke="{color}" d="{}"/>"#,
                d.trim_end()
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g id=\"vertices\" fill=\"#222\">\n");
    for (v, &(x, y)) in pos.iter().enumerate() {
        writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="3"><title>{v}</title></circle>"#
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    if options.face_labels {
        if let Ok(report) = validate::venn_check(g) {
            let outer = outer_face(g);
            out.push_str("<g id=\"labels\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">\n");
            for face in g.faces() {
                let (x, y) = if face.id == outer {
                    (margin, margin / 2.0)
                } else {
                    let k = face.len() as f64;
                    let (sx, sy) = face
                        .vertices()
                        .fold((0.0, 0.0), |(x, y), v| (x + pos[v].0, y + pos[v].1));
                    (sx / k, sy / k)
                };
                writeln!(
                    out,
                    r#"<text class="face-label" x="{x:.3}" y="{y:.3}">{}</text>"#,
                    report.labels[face.id]
                )
                .unwrap();
            }
            out.push_str("</g>\n");
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn edge_path(a: (f64, f64), b: (f64, f64), rank: usize, is_loop: bool, dart: Dart) -> String {
    if is_loop {
        let r = 12.0 + 6.0 * (dart.slot() as f64);
        return format!(
            "M {:.3} {:.3} c {r:.3} {:.3} {r:.3} {r:.3} 0 {r:.3}",
            a.0, a.1, -r
        );
    }
    if rank == 0 {
        return format!("M {:.3} {:.3} L {:.3} {:.3}", a.0, a.1, b.0, b.1);
    }
    let (mx, my) = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = dx.hypot(dy).max(1e-9);
    let side = if rank % 2 == 1 { 1.0 } else { -1.0 };
    let bow = side * 0.25 * len * rank.div_ceil(2) as f64;
    let (cx, cy) = (mx - dy / len * bow, my + dx / len * bow);
    format!(
        "M {:.3} {:.3} Q {cx:.3} {cy:.3} {:.3} {:.3}",
        a.0, a.1, b.0, b.1
    )
}
