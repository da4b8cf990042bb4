//! Vertex connectivity with Menger certificates.
//!
//! Two independent routes certify 4-connectivity of a V-graph: unit-capacity
//! max-flow ([`max_disjoint_paths`], [`vertex_connectivity`]) and the
//! constructive disjoint-path builder in [`proof`], which only needs to be
//! run on vertex pairs at distance two ([`certify_distance_two`]).

mod flow;
pub mod proof;

use thiserror::Error;

use crate::map::{distance2_pairs, Adjacency, PlaneGraph};
use flow::SplitFlow;
pub use proof::{
    proof_paths, proof_paths_with, CrossingChoice, PathRole, ProofCase, ProofError, ProofPath,
    ProofPathsResult,
};

/// Internally vertex-disjoint `u,v`-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCertificate {
    pub u: usize,
    pub v: usize,
    pub paths: Vec<Vec<usize>>,
}

/// A vertex set whose removal separates `sides.0` from `sides.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub cut: Vec<usize>,
    pub sides: (Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPaths {
    pub k: usize,
    pub certificate: PathCertificate,
    /// A minimum `u,v`-separator; absent when `u` and `v` are adjacent.
    pub cut: Option<CutCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("u and v are the same vertex {0}")]
    SameVertex(usize),
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),
    #[error("graph is disconnected")]
    Disconnected(CutCertificate),
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("no vertex pair is at distance two; the distance-two criterion is vacuous")]
    NoDistanceTwoPairs,
}

/// Connectivity value with its witness. `cut` is `None` for complete graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub kappa: usize,
    pub cut: Option<CutCertificate>,
}

impl PathCertificate {
    /// Every path is simple, runs from `u` to `v` along edges of `adj`, and
    /// no two paths share a vertex other than `u` and `v`.
    pub fn verify(&self, adj: &Adjacency) -> bool {
        verify_disjoint_paths(adj, self.u, self.v, &self.paths)
    }
}

impl CutCertificate {
    /// Removing `cut` leaves both sides non-empty with no edge between them,
    /// and the three sets are disjoint.
    pub fn verify(&self, adj: &Adjacency) -> bool {
        let n = adj.vertex_count();
        let mut tag = vec![0u8; n];
        for &x in &self.cut {
            if x >= n || tag[x] != 0 {
                return false;
            }
            tag[x] = 1;
        }
        for (side, mark) in [(&self.sides.0, 2u8), (&self.sides.1, 3u8)] {
            if side.is_empty() {
                return false;
            }
            for &x in side {
                if x >= n || tag[x] != 0 {
                    return false;
                }
                tag[x] = mark;
            }
        }
        self.sides
            .0
            .iter()
            .all(|&a| adj.neighbors(a).iter().all(|&b| tag[b] != 3))
    }
}

pub fn verify_disjoint_paths(adj: &Adjacency, u: usize, v: usize, paths: &[Vec<usize>]) -> bool {
    let n = adj.vertex_count();
    let mut owner = vec![usize::MAX; n];
    let mut direct = 0;
    for (i, p) in paths.iter().enumerate() {
        if p.len() < 2 || p[0] != u || p[p.len() - 1] != v {
            return false;
        }
        if p.iter().any(|&x| x >= n) {
            return false;
        }
        if !p.windows(2).all(|w| adj.adjacent(w[0], w[1])) {
            return false;
        }
        if p.len() == 2 {
            direct += 1;
        }
        for &x in &p[1..p.len() - 1] {
            if x == u || x == v || owner[x] != usize::MAX {
                return false;
            }
            owner[x] = i;
        }
    }
    direct <= 1
}

/// Maximum number of internally disjoint `u,v`-paths (simple-graph sense:
/// parallel edges count as one direct path), with the paths and, for
/// non-adjacent pairs, a minimum separator.
pub fn max_disjoint_paths(
    adj: &Adjacency,
    u: usize,
    v: usize,
) -> Result<DisjointPaths, ConnectivityError> {
    let n = adj.vertex_count();
    for x in [u, v] {
        if x >= n {
            return Err(ConnectivityError::NoSuchVertex(x));
        }
    }
    if u == v {
        return Err(ConnectivityError::SameVertex(u));
    }
    let outcome = SplitFlow::new(adj, u, v).run();
    debug_assert_eq!(outcome.paths.len(), outcome.value);
    let cut = if adj.adjacent(u, v) {
        None
    } else {
        Some(cut_certificate(adj, outcome.cut, u))
    };
    Ok(DisjointPaths {
        k: outcome.value,
        certificate: PathCertificate {
            u,
            v,
            paths: outcome.paths,
        },
        cut,
    })
}

/// Side 0 is the component of `anchor` after deleting `cut`; side 1 is
/// everything else outside the cut.
fn cut_certificate(adj: &Adjacency, mut cut: Vec<usize>, anchor: usize) -> CutCertificate {
    cut.sort_unstable();
    let comps = adj.components_without(&cut);
    let mut near = Vec::new();
    let mut far = Vec::new();
    for comp in comps {
        if comp.binary_search(&anchor).is_ok() {
            near = comp;
        } else {
            far.extend(comp);
        }
    }
    far.sort_unstable();
    CutCertificate {
        cut,
        sides: (near, far),
    }
}

/// Exact vertex connectivity. A minimum-degree vertex `s` is paired with all
/// its non-neighbours, and each neighbour of `s` with all of its own
/// non-neighbours; some pair in that cover straddles every minimum cut.
pub fn vertex_connectivity(adj: &Adjacency) -> Result<Connectivity, ConnectivityError> {
    let n = adj.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::TooSmall);
    }
    let comps = adj.components_without(&[]);
    if comps.len() > 1 {
        let first = comps[0].clone();
        let mut rest: Vec<usize> = comps[1..].iter().flatten().copied().collect();
        rest.sort_unstable();
        return Err(ConnectivityError::Disconnected(CutCertificate {
            cut: Vec::new(),
            sides: (first, rest),
        }));
    }
    let s = (0..n).min_by_key(|&x| (adj.degree(x), x)).unwrap();
    let mut best: Option<(usize, CutCertificate)> = None;
    let mut consider = |a: usize| {
        for b in 0..n {
            if b == a || adj.adjacent(a, b) {
                continue;
            }
            let res = max_disjoint_paths(adj, a, b).expect("distinct in-range vertices");
            if best.as_ref().is_none_or(|(k, _)| res.k < *k) {
                best = Some((res.k, res.cut.expect("non-adjacent pair has a separator")));
            }
        }
    };
    consider(s);
    for &a in adj.neighbors(s) {
        consider(a);
    }
    Ok(match best {
        Some((k, cut)) if k < n - 1 => Connectivity {
            kappa: k,
            cut: Some(cut),
        },
        _ => Connectivity {
            kappa: n - 1,
            cut: None,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifiedBy {
    Construction,
    Flow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCertificate {
    pub z: usize,
    pub certificate: PathCertificate,
    pub by: CertifiedBy,
    pub used_fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub u: usize,
    pub v: usize,
    pub flow: usize,
    pub cut: CutCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    /// Every distance-two pair has `k` disjoint paths, so the graph is
    /// `k`-connected.
    Certified {
        k: usize,
        pairs: Vec<PairCertificate>,
        fallbacks: usize,
    },
    Counterexample(Counterexample),
}

/// Certify `k`-connectivity through distance-two pairs. With `k == 4` on a
/// V-graph the constructive paths are used; otherwise max-flow.
pub fn certify_distance_two(g: &PlaneGraph, k: usize) -> Result<CertifyOutcome, ConnectivityError> {
    let adj = g.adjacency();
    if !g.is_connected() {
        return match vertex_connectivity(adj) {
            Err(e) => Err(e),
            Ok(_) => unreachable!("disconnected graph reported connected"),
        };
    }
    let pairs = distance2_pairs(adj);
    if pairs.is_empty() {
        return Err(ConnectivityError::NoDistanceTwoPairs);
    }
    let constructive = if k == 4 {
        proof::VGraphView::new(g).ok()
    } else {
        None
    };
    let mut out = Vec::with_capacity(pairs.len());
    let mut fallbacks = 0;
    for pair in pairs {
        let z = pair.witnesses[0];
        if let Some(view) = &constructive {
            let res = view
                .build(pair.u, z, pair.v, CrossingChoice::First)
                .expect("distance-two triple");
            if res.used_fallback {
                fallbacks += 1;
            }
            if res.paths.len() >= k {
                out.push(PairCertificate {
                    z,
                    certificate: PathCertificate {
                        u: pair.u,
                        v: pair.v,
                        paths: res.paths.into_iter().map(|p| p.vertices).collect(),
                    },
                    by: CertifiedBy::Construction,
                    used_fallback: res.used_fallback,
                });
                continue;
            }
        }
        let res = max_disjoint_paths(adj, pair.u, pair.v)?;
        if res.k < k {
            return Ok(CertifyOutcome::Counterexample(Counterexample {
                u: pair.u,
                v: pair.v,
                flow: res.k,
                cut: res.cut.expect("distance-two pair is non-adjacent"),
            }));
        }
        out.push(PairCertificate {
            z,
            certificate: res.certificate,
            by: CertifiedBy::Flow,
            used_fallback: false,
        });
    }
    Ok(CertifyOutcome::Certified {
        k,
        pairs: out,
        fallbacks,
    })
}
