//! Arrangement generators: circle arrangements, iterated extension and the
//! two-curve weave.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dual::{winkler_extend, ExtendError};
use crate::map::{Dart, PlaneGraph, Point};
use crate::validate;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub const fn new(x: f64, y: f64, radius: f64) -> Self {
        Circle {
            center: Point::new(x, y),
            radius,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        (p.x - self.center.x).hypot(p.y - self.center.y) < self.radius
    }

    /// Polar angle of `p` about the centre, in `[0, 2pi)`.
    pub fn angle_of(&self, p: Point) -> f64 {
        (p.y - self.center.y)
            .atan2(p.x - self.center.x)
            .rem_euclid(TAU)
    }

    pub fn point_at(&self, angle: f64) -> Point {
        Point::new(
            self.center.x + self.radius * angle.cos(),
            self.center.y + self.radius * angle.sin(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("circles {0} and {1} are tangent or coincide")]
    Degenerate(usize, usize),
    #[error("circle {0} crosses no other circle")]
    IsolatedCircle(usize),
    #[error("three circles meet at one point")]
    TriplePoint,
    #[error("venn(n) needs n >= 3, got {0}")]
    VennTooSmall(usize),
    #[error("weave(k) needs k >= 2, got {0}")]
    WeaveTooSmall(usize),
    #[error("extension to {n} curves failed: {source}")]
    Extend { n: usize, source: ExtendError },
    #[error("generated 3-circle arrangement is not a simple Venn diagram")]
    NotVenn,
    #[error("unrecognised generator spec {0:?}")]
    BadSpec(String),
}

/// A generator request, as accepted by the CLI: `venn3`, `venn:<n>` /
/// `venn(<n>)`, `weave:<k>` / `weave(<k>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    Venn(usize),
    Weave(usize),
}

impl FromStr for GeneratorSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "venn3" {
            return Ok(GeneratorSpec::Venn(3));
        }
        let parse = |prefix: &str| -> Option<usize> {
            let rest = t.strip_prefix(prefix)?;
            let arg = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))?;
            arg.trim().parse().ok()
        };
        if let Some(n) = parse("venn") {
            return Ok(GeneratorSpec::Venn(n));
        }
        if let Some(k) = parse("weave") {
            return Ok(GeneratorSpec::Weave(k));
        }
        Err(GenError::BadSpec(s.to_string()))
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Venn(n) => write!(f, "venn:{n}"),
            GeneratorSpec::Weave(k) => write!(f, "weave:{k}"),
        }
    }
}

impl GeneratorSpec {
    pub fn generate(self) -> Result<PlaneGraph, GenError> {
        match self {
            GeneratorSpec::Venn(n) => gen_venn(n),
            GeneratorSpec::Weave(k) => gen_weave(k),
        }
    }
}

const EPS: f64 = 1e-9;

/// Which circle a dart runs along, and whether counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DartArc {
    pub circle: usize,
    pub forward: bool,
}

#[derive(Debug, Clone)]
pub struct CircleArrangement {
    pub graph: PlaneGraph,
    /// Indexed by dart.
    pub arcs: Vec<DartArc>,
}

/// Reduce circles in general position to their combinatorial map.
///
/// Crossings are numbered by circle pair `(i, j)`, `i < j`, and then by angle
/// on circle `i`. At each crossing the four darts (forward and backward along
/// both circles, forward meaning counterclockwise) are sorted by tangent
/// angle. The outer dart runs counterclockwise along the circle reaching
/// furthest right, over the arc through that extreme point.
pub fn circle_arrangement(circles: &[Circle]) -> Result<CircleArrangement, GenError> {
    // (circle i, circle j, point)
    let mut crossings: Vec<(usize, usize, Point)> = Vec::new();
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            let (a, b) = (circles[i], circles[j]);
            let dx = b.center.x - a.center.x;
            let dy = b.center.y - a.center.y;
            let dist = dx.hypot(dy);
            if dist < EPS {
                return Err(GenError::Degenerate(i, j));
            }
            if dist > a.radius + b.radius + EPS || dist < (a.radius - b.radius).abs() - EPS {
                continue;
            }
            if (dist - a.radius - b.radius).abs() <= EPS
                || (dist - (a.radius - b.radius).abs()).abs() <= EPS
            {
                return Err(GenError::Degenerate(i, j));
            }
            let along = (dist * dist + a.radius * a.radius - b.radius * b.radius) / (2.0 * dist);
            let h = (a.radius * a.radius - along * along).sqrt();
            let mx = a.center.x + along * dx / dist;
            let my = a.center.y + along * dy / dist;
            let mut pts = [
                Point::new(mx - h * dy / dist, my + h * dx / dist),
                Point::new(mx + h * dy / dist, my - h * dx / dist),
            ];
            pts.sort_by(|p, q| a.angle_of(*p).total_cmp(&a.angle_of(*q)));
            for p in pts {
                crossings.push((i, j, p));
            }
        }
    }
    for (k, &(_, _, p)) in crossings.iter().enumerate() {
        for &(_, _, q) in &crossings[k + 1..] {
            if (p.x - q.x).hypot(p.y - q.y) < 1e-7 {
                return Err(GenError::TriplePoint);
            }
        }
    }

    // Per circle: crossing ids sorted by angle.
    let mut on_circle: Vec<Vec<usize>> = vec![Vec::new(); circles.len()];
    for (id, &(i, j, _)) in crossings.iter().enumerate() {
        on_circle[i].push(id);
        on_circle[j].push(id);
    }
    for (c, list) in on_circle.iter_mut().enumerate() {
        if list.is_empty() {
            return Err(GenError::IsolatedCircle(c));
        }
        let circle = circles[c];
        list.sort_by(|&x, &y| {
            circle
                .angle_of(crossings[x].2)
                .total_cmp(&circle.angle_of(crossings[y].2))
        });
    }

    // slot_of[v][(circle, forward)] via a small table per vertex.
    let mut slots: Vec<[(usize, bool); 4]> = Vec::with_capacity(crossings.len());
    for &(i, j, p) in &crossings {
        let mut dirs: Vec<(f64, (usize, bool))> = Vec::with_capacity(4);
        for c in [i, j] {
            let circle = circles[c];
            let (tx, ty) = (-(p.y - circle.center.y), p.x - circle.center.x);
            dirs.push((ty.atan2(tx), (c, true)));
            dirs.push(((-ty).atan2(-tx), (c, false)));
        }
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        slots.push([dirs[0].1, dirs[1].1, dirs[2].1, dirs[3].1]);
    }
    let slot_of = |v: usize, key: (usize, bool)| -> usize {
        slots[v]
            .iter()
            .position(|&k| k == key)
            .expect("dart exists")
    };

    let mut table = vec![[(0usize, 0usize); 4]; crossings.len()];
    for (c, list) in on_circle.iter().enumerate() {
        for (k, &v) in list.iter().enumerate() {
            let w = list[(k + 1) % list.len()];
            let sv = slot_of(v, (c, true));
            let sw = slot_of(w, (c, false));
            table[v][sv] = (w, sw);
            table[w][sw] = (v, sv);
        }
    }

    let (rightmost, _) = circles
        .iter()
        .enumerate()
        .map(|(c, k)| (c, k.center.x + k.radius))
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    let last = *on_circle[rightmost].last().unwrap();
    let outer = Dart::new(last, slot_of(last, (rightmost, true)));

    let coords = crossings.iter().map(|&(_, _, p)| Some(p)).collect();
    let graph = PlaneGraph::build(crossings.len(), &table)
        .expect("circle arrangement yields a valid rotation table")
        .with_coords(coords)
        .with_outer(Some(outer))
        .expect("outer dart in range");
    let arcs = slots
        .iter()
        .flat_map(|row| {
            row.iter()
                .map(|&(circle, forward)| DartArc { circle, forward })
        })
        .collect();
    Ok(CircleArrangement { graph, arcs })
}

/// The 3-circle Venn diagram: unit radius, centres on a unit equilateral
/// triangle.
pub fn venn3_circles() -> [Circle; 3] {
    let h = 3f64.sqrt() / 2.0;
    [
        Circle::new(0.0, 0.0, 1.0),
        Circle::new(1.0, 0.0, 1.0),
        Circle::new(0.5, h, 1.0),
    ]
}

pub fn gen_venn3() -> PlaneGraph {
    circle_arrangement(&venn3_circles())
        .expect("fixed circles are in general position")
        .graph
}

/// `gen_venn3` followed by `n - 3` extension steps, each validated.
pub fn gen_venn(n: usize) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::VennTooSmall(n));
    }
    let mut g = gen_venn3();
    if !validate::venn_check(&g).is_ok_and(|r| r.is_simple_venn) {
        return Err(GenError::NotVenn);
    }
    for m in 4..=n {
        g = winkler_extend(&g).map_err(|source| GenError::Extend { n: m, source })?;
        match validate::venn_check(&g) {
            Ok(r) if r.is_simple_venn && r.n == m => {}
            _ => {
                return Err(GenError::Extend {
                    n: m,
                    source: ExtendError::NotVenn,
                })
            }
        }
    }
    Ok(g)
}

/// Two curves crossing at `2k` points `0..2k` placed counterclockwise on a
/// ring. Between consecutive crossings one curve bulges outward and the other
/// inward, bounding a digon; the roles swap at every crossing.
///
/// Slots at crossing `i`: 0 outer arc to `i+1`, 1 inner arc to `i+1`,
/// 2 inner arc to `i-1`, 3 outer arc to `i-1`.
pub fn gen_weave(k: usize) -> Result<PlaneGraph, GenError> {
    if k < 2 {
        return Err(GenError::WeaveTooSmall(k));
    }
    let m = 2 * k;
    let table: Vec<[(usize, usize); 4]> = (0..m)
        .map(|i| {
            let next = (i + 1) % m;
            let prev = (i + m - 1) % m;
            [(next, 3), (next, 2), (prev, 1), (prev, 0)]
        })
        .collect();
    let coords = (0..m)
        .map(|i| {
            let a = PI / 2.0 + TAU * i as f64 / m as f64;
            Some(Point::new(a.cos(), a.sin()))
        })
        .collect();
    Ok(PlaneGraph::build(m, &table)
        .expect("weave table is a valid rotation system")
        .with_coords(coords)
        .with_outer(Some(Dart::new(0, 0)))
        .expect("outer dart in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::venn_check;

    /// Region label of the face right of every dart, read off the geometry:
    /// a point just off the middle of the dart's arc, on its right side.
    fn geometric_labels(circles: &[Circle]) -> (PlaneGraph, Vec<(Dart, u64)>) {
        let arr = circle_arrangement(circles).unwrap();
        let g = arr.graph;
        let coords = g.full_coords().unwrap();
        let mut out = Vec::new();
        for d in g.darts() {
            let arc = arr.arcs[d.index()];
            let c = circles[arc.circle];
            let a_p = c.angle_of(coords[d.vertex()]);
            let a_q = c.angle_of(coords[g.twin(d).vertex()]);
            let (mid, r) = if arc.forward {
                (a_p + (a_q - a_p).rem_euclid(TAU) / 2.0, c.radius + 1e-6)
            } else {
                (a_p - (a_p - a_q).rem_euclid(TAU) / 2.0, c.radius - 1e-6)
            };
            let p = Circle::new(c.center.x, c.center.y, r).point_at(mid);
            let bits = circles
                .iter()
                .enumerate()
                .filter(|(_, k)| k.contains(p))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            out.push((d, bits));
        }
        (g, out)
    }

    fn flower() -> [Circle; 3] {
        let h = 3f64.sqrt();
        [
            Circle::new(0.0, 0.0, 1.1),
            Circle::new(2.0, 0.0, 1.1),
            Circle::new(1.0, h, 1.1),
        ]
    }

    #[test]
    fn venn3_counts() {
        let g = gen_venn3();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.face_count(), 8);
        let r = venn_check(&g).unwrap();
        assert!(r.is_simple_venn);
        assert_eq!(r.distinct_labels, 8);
    }

    #[test]
    fn combinatorial_labels_match_geometry() {
        for circles in [venn3_circles(), flower()] {
            let (g, samples) = geometric_labels(&circles);
            let curves = g.curves().unwrap();
            let arcs = circle_arrangement(&circles).unwrap().arcs;
            // Curve id -> circle index.
            let circle_of: Vec<usize> = (0..curves.len())
                .map(|c| arcs[curves.curves[c].darts[0].index()].circle)
                .collect();
            let report = venn_check(&g).unwrap();
            for (d, bits) in samples {
                let label = report.labels[g.face_of(d)].bits;
                let mapped = (0..curves.len())
                    .filter(|&c| label & (1 << c) != 0)
                    .fold(0u64, |acc, c| acc | 1 << circle_of[c]);
                assert_eq!(mapped, bits, "dart {d}");
            }
        }
    }

    #[test]
    fn flower_misses_the_triple_region() {
        let g = circle_arrangement(&flower()).unwrap().graph;
        let r = venn_check(&g).unwrap();
        assert!(!r.is_simple_venn);
        let missing: Vec<String> = r.missing_labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(missing, ["111"]);
        let dup: Vec<String> = r.duplicated_labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(dup, ["000"]);
    }

    #[test]
    fn degenerate_circles_rejected() {
        let touching = [Circle::new(0.0, 0.0, 1.0), Circle::new(2.0, 0.0, 1.0)];
        assert_eq!(
            circle_arrangement(&touching).unwrap_err(),
            GenError::Degenerate(0, 1)
        );
        let apart = [
            Circle::new(0.0, 0.0, 1.0),
            Circle::new(1.0, 0.0, 1.0),
            Circle::new(9.0, 0.0, 1.0),
        ];
        assert_eq!(
            circle_arrangement(&apart).unwrap_err(),
            GenError::IsolatedCircle(2)
        );
    }

    #[test]
    fn weave_shape() {
        let g = gen_weave(3).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.face_count(), 8);
        assert_eq!(g.curves().unwrap().len(), 2);
        assert_eq!(gen_weave(1).unwrap_err(), GenError::WeaveTooSmall(1));
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            "venn3".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::Venn(3)
        );
        assert_eq!(
            "venn:5".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::Venn(5)
        );
        assert_eq!(
            "weave(4)".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::Weave(4)
        );
        assert!("venn:".parse::<GeneratorSpec>().is_err());
        assert_eq!(GeneratorSpec::Weave(2).to_string(), "weave:2");
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(gen_venn(5).unwrap(), gen_venn(5).unwrap());
        assert_eq!(gen_venn(2).unwrap_err(), GenError::VennTooSmall(2));
    }
}
