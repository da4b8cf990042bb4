//! Planar dual and curve extension through a Hamilton cycle of the dual.

use thiserror::Error;

use crate::hamilton::{self, HamiltonError, SearchConfig};
use crate::map::{orbits, Adjacency, BuildError, Dart, PlaneGraph};
use crate::validate::{self, VennError};

/// The dual map. It shares the primal darts: a dual dart crosses the primal
/// edge of the same dart, the twin involution is unchanged, and the rotation
/// at a dual vertex is the boundary order of the primal face.
#[derive(Debug, Clone)]
pub struct DualGraph {
    rotation: Vec<Dart>,
    twin: Vec<Dart>,
    vertex_of: Vec<usize>,
    vertex_count: usize,
    adjacency: Adjacency,
}

impl DualGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn degree(&self, f: usize) -> usize {
        self.vertex_of.iter().filter(|&&x| x == f).count()
    }

    /// Dual vertex (primal face) a dart leaves from.
    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d.index()]
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d.index()]
    }

    /// Next dart counterclockwise at the same dual vertex.
    pub fn rot(&self, d: Dart) -> Dart {
        self.rotation[d.index()]
    }

    /// Primal edge crossed by the dual edge of `d`.
    pub fn crossing(&self, primal: &PlaneGraph, d: Dart) -> usize {
        primal.edge_of(d)
    }

    /// Dual faces: orbits of `rot . twin`, one per primal vertex.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let perm: Vec<usize> = (0..self.twin.len())
            .map(|i| self.rot(self.twin[i]).index())
            .collect();
        orbits(&perm)
            .into_iter()
            .map(|o| o.into_iter().map(Dart::from_index).collect())
            .collect()
    }

    /// Darts at dual vertex `f` in rotation order.
    pub fn rotation_at(&self, f: usize) -> Vec<Dart> {
        let Some(start) = self.vertex_of.iter().position(|&x| x == f) else {
            return Vec::new();
        };
        let start = Dart::from_index(start);
        let mut out = vec![start];
        let mut d = self.rot(start);
        while d != start {
            out.push(d);
            d = self.rot(d);
        }
        out
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }
}

pub fn dual(g: &PlaneGraph) -> DualGraph {
    let rotation: Vec<Dart> = g.darts().map(|d| g.face_next(d)).collect();
    let twin: Vec<Dart> = g.darts().map(|d| g.twin(d)).collect();
    let vertex_of: Vec<usize> = g.darts().map(|d| g.face_of(d)).collect();
    let adjacency = Adjacency::from_edges(
        g.face_count(),
        g.edges().iter().map(|&(a, b)| (g.face_of(a), g.face_of(b))),
    );
    DualGraph {
        rotation,
        twin,
        vertex_of,
        vertex_count: g.face_count(),
        adjacency,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("input is not a simple Venn diagram")]
    NotVenn,
    #[error(transparent)]
    Venn(#[from] VennError),
    /// The dual admits no Hamilton cycle: the diagram cannot be extended.
    #[error("dual of the {n}-Venn diagram is not Hamiltonian")]
    DualNotHamiltonian { n: usize },
    #[error("Hamilton search on the dual gave up: {0}")]
    Search(HamiltonError),
    #[error("extended map is malformed: {0}")]
    Build(#[from] BuildError),
}

/// Extension output plus the bookkeeping that produced it.
#[derive(Debug, Clone)]
pub struct Extension {
    pub graph: PlaneGraph,
    /// Hamilton cycle of the dual used as the new curve's route.
    pub face_cycle: Vec<usize>,
    /// Primal edge crossed between `face_cycle[i]` and `face_cycle[i + 1]`.
    pub crossed_edges: Vec<usize>,
    /// New vertex on `crossed_edges[i]` is `first_new_vertex + i`.
    pub first_new_vertex: usize,
}

pub fn winkler_extend(g: &PlaneGraph) -> Result<PlaneGraph, ExtendError> {
    winkler_extend_with(g, SearchConfig::default()).map(|e| e.graph)
}

/// Add one curve that visits every face once, following a Hamilton cycle
/// `f_0 .. f_{F-1}` of the dual.
///
/// For each step `f_i -> f_{i+1}` the lowest-id shared edge `e_i` is
/// subdivided by a new vertex `x_i`. Let `d_i` be the dart of `e_i` with
/// `f_i` on its right, running `p -> q`. Facing along `d_i` at `x_i`, the
/// counterclockwise slots are:
///
/// * 0: toward `q` (old curve, twin of `twin(d_i)`'s old position),
/// * 1: into `f_{i+1}` (left side), toward `x_{i+1}`,
/// * 2: toward `p` (old curve, twin of `d_i`),
/// * 3: into `f_i` (right side), toward `x_{i-1}`.
///
/// Slots 1 and 3 are the new curve and cross the old one transversally. The
/// chord `x_{i-1} x_i` runs inside `f_i`, which it meets exactly once.
pub fn winkler_extend_with(g: &PlaneGraph, config: SearchConfig) -> Result<Extension, ExtendError> {
    let report = validate::venn_check(g)?;
    if !report.is_simple_venn {
        return Err(ExtendError::NotVenn);
    }
    let n = report.n;
    let d = dual(g);
    let cycle = match hamilton::find_hamilton_with(d.adjacency(), config) {
        Ok(c) => c.order,
        Err(HamiltonError::Exhausted) => return Err(ExtendError::DualNotHamiltonian { n }),
        Err(e) => return Err(ExtendError::Search(e)),
    };
    let face_count = cycle.len();

    // For each step, the dart on the f_i side of the chosen edge.
    let mut steps: Vec<Dart> = Vec::with_capacity(face_count);
    for i in 0..face_count {
        let (f, h) = (cycle[i], cycle[(i + 1) % face_count]);
        let dart = g
            .edges()
            .iter()
            .find_map(|&(a, b)| {
                if g.face_of(a) == f && g.face_of(b) == h {
                    Some(a)
                } else if g.face_of(b) == f && g.face_of(a) == h {
                    Some(b)
                } else {
                    None
                }
            })
            .expect("consecutive dual cycle vertices share an edge");
        steps.push(dart);
    }

    let old_v = g.vertex_count();
    let mut twin: Vec<Dart> = g.darts().map(|x| g.twin(x)).collect();
    twin.resize(4 * (old_v + face_count), Dart::from_index(0));
    for (i, &di) in steps.iter().enumerate() {
        let ti = g.twin(di);
        let x = old_v + i;
        let next = old_v + (i + 1) % face_count;
        let prev = old_v + (i + face_count - 1) % face_count;
        let pairs = [
            (Dart::new(x, 0), ti),
            (Dart::new(x, 2), di),
            (Dart::new(x, 1), Dart::new(next, 3)),
            (Dart::new(x, 3), Dart::new(prev, 1)),
        ];
        for (a, b) in pairs {
            twin[a.index()] = b;
            twin[b.index()] = a;
        }
    }
    let graph = PlaneGraph::from_twins(twin)?.with_outer(g.outer())?;
    Ok(Extension {
        graph,
        face_cycle: cycle,
        crossed_edges: steps.iter().map(|&x| g.edge_of(x)).collect(),
        first_new_vertex: old_v,
    })
}
