//! Dart-based combinatorial map of a curve arrangement.
//!
//! Every vertex is a transverse crossing of two curves and owns four darts,
//! numbered by slot in counterclockwise order. A dart is identified by
//! `4 * vertex + slot`, so the derived ordering is lexicographic in
//! `(vertex, slot)`. Three permutations drive everything:
//!
//! * `twin`: the other end of the same edge (a fixed-point-free involution),
//! * `rot`: the next slot counterclockwise at the same vertex,
//! * `opposite`: the slot straight across the crossing (`rot` twice).
//!
//! Faces are orbits of `rot . twin` and trace the face on the right-hand side
//! of each dart. Curves are orbits of `opposite . twin`: arriving at a crossing
//! and leaving through the opposite slot continues along the same curve.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// A directed edge-end: a vertex together with one of its four rotation slots.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(usize);

impl Dart {
    pub const fn new(vertex: usize, slot: usize) -> Self {
        debug_assert!(slot < 4);
        Dart(vertex * 4 + slot)
    }

    pub const fn from_index(index: usize) -> Self {
        Dart(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub const fn vertex(self) -> usize {
        self.0 / 4
    }

    pub const fn slot(self) -> usize {
        self.0 % 4
    }

    /// Next dart counterclockwise around the same vertex.
    pub const fn rot(self) -> Self {
        Dart::new(self.vertex(), (self.slot() + 1) % 4)
    }

    /// Previous dart counterclockwise (i.e. next clockwise).
    pub const fn rot_inv(self) -> Self {
        Dart::new(self.vertex(), (self.slot() + 3) % 4)
    }

    /// The dart straight across the crossing.
    pub const fn opposite(self) -> Self {
        Dart::new(self.vertex(), (self.slot() + 2) % 4)
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.vertex(), self.slot())
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.vertex(), self.slot())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("rotation table has {got} rows but vertex count is {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("dart {dart} refers to {vertex}.{slot}, which is not a dart of this graph")]
    BadSlot {
        dart: Dart,
        vertex: usize,
        slot: usize,
    },
    #[error("dart {dart} is its own twin")]
    SelfTwin { dart: Dart },
    #[error("twin is not an involution: {dart} -> {twin} but {twin} -> {back}")]
    NonInvolutiveTwin { dart: Dart, twin: Dart, back: Dart },
    #[error("arrangement has no vertices")]
    Empty,
    #[error("outer dart {dart} is not a dart of this graph")]
    BadOuter { dart: Dart },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("a curve passes through vertex {vertex} twice")]
    SelfCrossingCurve { vertex: usize },
    #[error("both strands at vertex {vertex} belong to curve {curve}")]
    SameCurveCrossing { vertex: usize, curve: usize },
}

/// A face: one orbit of `rot . twin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub boundary: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|d| d.vertex())
    }
}

/// A closed curve recovered from the map, in its canonical orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: usize,
    /// Darts leaving each visited vertex along the curve, starting at the
    /// smallest dart of the curve.
    pub darts: Vec<Dart>,
}

impl Curve {
    /// Number of edges on the curve.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.vertex()).collect()
    }
}

/// The curves of an arrangement plus a per-dart curve index.
#[derive(Debug, Clone)]
pub struct CurveSet {
    pub curves: Vec<Curve>,
    curve_of: Vec<usize>,
}

impl CurveSet {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curve_of(&self, d: Dart) -> usize {
        self.curve_of[d.index()]
    }

    /// The two curves crossing at `v`, in slot order (slots 0/2 then 1/3).
    pub fn curves_at(&self, v: usize) -> (usize, usize) {
        (
            self.curve_of(Dart::new(v, 0)),
            self.curve_of(Dart::new(v, 1)),
        )
    }

    pub fn is_on(&self, v: usize, curve: usize) -> bool {
        let (a, b) = self.curves_at(v);
        a == curve || b == curve
    }
}

/// Deduplicated simple-graph view: sorted neighbour lists, no loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut neighbors = vec![Vec::new(); vertex_count];
        for (a, b) in edges {
            if a != b {
                neighbors[a].push(b);
                neighbors[b].push(a);
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Adjacency { neighbors }
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Simple edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.neighbors.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Connected components of the graph with `removed` vertices deleted,
    /// each sorted, ordered by smallest member.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &r in removed {
            gone[r] = true;
        }
        let mut seen = gone.clone();
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.neighbors[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).len() <= 1
    }
}

/// A vertex pair at distance two with every common neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance2Pair {
    pub u: usize,
    pub v: usize,
    pub witnesses: Vec<usize>,
}

/// A 4-regular plane graph stored as a rotation system over darts.
///
/// Immutable after [`PlaneGraph::build`]; faces and the simple adjacency are
/// computed once at build time.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    twin: Vec<Dart>,
    coords: Vec<Option<Point>>,
    outer: Option<Dart>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
    edge_of: Vec<usize>,
    edges: Vec<(Dart, Dart)>,
    adjacency: Adjacency,
    connected: bool,
}

impl PartialEq for PlaneGraph {
    /// Dart identity: same twins, same coordinates, same outer marker.
    fn eq(&self, other: &Self) -> bool {
        self.twin == other.twin && self.coords == other.coords && self.outer == other.outer
    }
}

impl PlaneGraph {
    /// Build from a rotation table: row `v` lists, for slots 0..3, the twin
    /// `(vertex, slot)` of each dart at `v`.
    pub fn build(vertex_count: usize, table: &[[(usize, usize); 4]]) -> Result<Self, BuildError> {
        if table.len() != vertex_count {
            return Err(BuildError::TableLength {
                expected: vertex_count,
                got: table.len(),
            });
        }
        if vertex_count == 0 {
            return Err(BuildError::Empty);
        }
        let mut twin = Vec::with_capacity(4 * vertex_count);
        for (v, row) in table.iter().enumerate() {
            for (s, &(tv, ts)) in row.iter().enumerate() {
                if tv >= vertex_count || ts >= 4 {
                    return Err(BuildError::BadSlot {
                        dart: Dart::new(v, s),
                        vertex: tv,
                        slot: ts,
                    });
                }
                twin.push(Dart::new(tv, ts));
            }
        }
        Self::from_twins(twin)
    }

    /// Build from a twin array indexed by dart.
    pub fn from_twins(twin: Vec<Dart>) -> Result<Self, BuildError> {
        if twin.is_empty() {
            return Err(BuildError::Empty);
        }
        let dart_count = twin.len();
        assert!(
            dart_count.is_multiple_of(4),
            "dart count must be a multiple of 4"
        );
        for (i, &t) in twin.iter().enumerate() {
            let d = Dart(i);
            if t.index() >= dart_count {
                return Err(BuildError::BadSlot {
                    dart: d,
                    vertex: t.vertex(),
                    slot: t.slot(),
                });
            }
            if t == d {
                return Err(BuildError::SelfTwin { dart: d });
            }
            let back = twin[t.index()];
            if back != d {
                return Err(BuildError::NonInvolutiveTwin {
                    dart: d,
                    twin: t,
                    back,
                });
            }
        }
        let vertex_count = dart_count / 4;

        let face_perm: Vec<usize> = (0..dart_count).map(|i| twin[i].rot().index()).collect();
        let mut face_of = vec![usize::MAX; dart_count];
        let faces: Vec<Face> = orbits(&face_perm)
            .into_iter()
            .enumerate()
            .map(|(id, orbit)| {
                for &d in &orbit {
                    face_of[d] = id;
                }
                Face {
                    id,
                    boundary: orbit.into_iter().map(Dart).collect(),
                }
            })
            .collect();

        let mut edge_of = vec![usize::MAX; dart_count];
        let mut edges = Vec::with_capacity(dart_count / 2);
        for i in 0..dart_count {
            if edge_of[i] == usize::MAX {
                let t = twin[i].index();
                edge_of[i] = edges.len();
                edge_of[t] = edges.len();
                edges.push((Dart(i), Dart(t)));
            }
        }

        let adjacency = Adjacency::from_edges(
            vertex_count,
            edges.iter().map(|&(a, b)| (a.vertex(), b.vertex())),
        );
        let connected = adjacency.is_connected();

        Ok(PlaneGraph {
            twin,
            coords: vec![None; vertex_count],
            outer: None,
            faces,
            face_of,
            edge_of,
            edges,
            adjacency,
            connected,
        })
    }

    pub fn with_coords(mut self, coords: Vec<Option<Point>>) -> Self {
        assert_eq!(coords.len(), self.vertex_count());
        self.coords = coords;
        self
    }

    pub fn with_outer(mut self, outer: Option<Dart>) -> Result<Self, BuildError> {
        if let Some(d) = outer {
            if d.index() >= self.dart_count() {
                return Err(BuildError::BadOuter { dart: d });
            }
        }
        self.outer = outer;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.twin.len() / 4
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart)
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d.index()]
    }

    /// Vertex at the far end of `d`.
    pub fn head(&self, d: Dart) -> usize {
        self.twin(d).vertex()
    }

    /// Neighbour of `v` through slot `slot`.
    pub fn neighbor(&self, v: usize, slot: usize) -> usize {
        self.head(Dart::new(v, slot))
    }

    /// Face permutation `rot . twin`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.twin(d).rot()
    }

    /// Curve permutation `opposite . twin`.
    pub fn curve_next(&self, d: Dart) -> Dart {
        self.twin(d).opposite()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Face on the right-hand side of `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.index()]
    }

    /// Undirected edges as dart pairs, ordered by smaller dart.
    pub fn edges(&self) -> &[(Dart, Dart)] {
        &self.edges
    }

    pub fn edge_of(&self, d: Dart) -> usize {
        self.edge_of[d.index()]
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn coords(&self) -> &[Option<Point>] {
        &self.coords
    }

    /// All vertex coordinates, if every vertex has one.
    pub fn full_coords(&self) -> Option<Vec<Point>> {
        self.coords.iter().copied().collect()
    }

    pub fn outer(&self) -> Option<Dart> {
        self.outer
    }

    /// Euler characteristic `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Raw orbits of the curve permutation, each starting at its smallest dart.
    pub fn curve_orbits(&self) -> Vec<Vec<Dart>> {
        let perm: Vec<usize> = (0..self.dart_count())
            .map(|i| self.curve_next(Dart(i)).index())
            .collect();
        orbits(&perm)
            .into_iter()
            .map(|o| o.into_iter().map(Dart).collect())
            .collect()
    }

    /// Recover the curves. Each closed curve appears as two reverse orbits;
    /// the one holding the curve's smallest dart is kept. Curve ids follow
    /// the order of those smallest darts.
    pub fn curves(&self) -> Result<CurveSet, CurveError> {
        let raw = self.curve_orbits();
        let mut orbit_of = vec![usize::MAX; self.dart_count()];
        for (i, orbit) in raw.iter().enumerate() {
            let mut seen = std::collections::HashSet::with_capacity(orbit.len());
            for &d in orbit {
                if !seen.insert(d.vertex()) {
                    return Err(CurveError::SelfCrossingCurve { vertex: d.vertex() });
                }
                orbit_of[d.index()] = i;
            }
        }

        let mut curve_of = vec![usize::MAX; self.dart_count()];
        let mut curves = Vec::new();
        // `raw` is sorted by smallest dart, so the first unassigned orbit of a
        // pair is the canonical one.
        for orbit in &raw {
            if curve_of[orbit[0].index()] != usize::MAX {
                continue;
            }
            let id = curves.len();
            let reverse = orbit_of[self.twin(orbit[0]).index()];
            for &d in orbit.iter().chain(raw[reverse].iter()) {
                curve_of[d.index()] = id;
            }
            curves.push(Curve {
                id,
                darts: orbit.clone(),
            });
        }

        for v in 0..self.vertex_count() {
            let a = curve_of[Dart::new(v, 0).index()];
            let b = curve_of[Dart::new(v, 1).index()];
            if a == b {
                return Err(CurveError::SameCurveCrossing {
                    vertex: v,
                    curve: a,
                });
            }
        }
        Ok(CurveSet { curves, curve_of })
    }

    /// Non-adjacent vertex pairs sharing a neighbour, each with every
    /// common neighbour, ordered by `(u, v)` with `u < v`.
    pub fn distance2_pairs(&self) -> Vec<Distance2Pair> {
        distance2_pairs(&self.adjacency)
    }
}

/// Distance-two pairs of an arbitrary simple graph.
pub fn distance2_pairs(adj: &Adjacency) -> Vec<Distance2Pair> {
    let n = adj.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        let mut witnesses: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &z in adj.neighbors(u) {
            for &v in adj.neighbors(z) {
                if v > u && !adj.adjacent(u, v) {
                    witnesses[v].push(z);
                }
            }
        }
        for (v, mut w) in witnesses.into_iter().enumerate() {
            if !w.is_empty() {
                w.sort_unstable();
                w.dedup();
                out.push(Distance2Pair { u, v, witnesses: w });
            }
        }
    }
    out
}

/// Orbits of a permutation given as an index array, each starting at its
/// smallest element and ordered by that element.
pub(crate) fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = perm[x];
        }
        out.push(orbit);
    }
    out
}
