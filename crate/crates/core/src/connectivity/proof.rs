//! Constructive four disjoint paths between vertices at distance two in a
//! V-graph.
//!
//! Given `u` and `v` both adjacent to `z`, call the curve through `z` and `u`
//! green and the other curve through `z` red. The four faces around `z` form,
//! with `z` removed, a single perimeter cycle (the z-face). The perimeter
//! carries two of the paths and the green and red curves carry the other two.
//!
//! * Case 1, `v` on green: `u z v`, the rest of the green curve, and the two
//!   halves of the perimeter (through `a` and through `b`, the red
//!   neighbours of `z`).
//! * Case 2, `v` on red: A is the perimeter arc of the corner face holding
//!   `u` and `v`; B is the rest of the perimeter, through `a` and `b`; C walks
//!   green away from `z` to a red crossing `w` and then follows red toward
//!   `z` until `v`; D is `u z v`.
//!
//! For C, `w` is by default the first red crossing after `u`. The green
//! segment `u..w` then holds no other red vertex, so the red arc `w..v`
//! cannot run back into it. Taking the last crossing before the walk returns
//! to `z` ([`CrossingChoice::Last`]) can revisit a vertex of the green
//! segment; that choice is kept for comparison.
//!
//! Every construction is checked. A failed check falls back to max-flow
//! paths and is flagged, so a result is always a valid certificate.

use thiserror::Error;

use super::{max_disjoint_paths, verify_disjoint_paths};
use crate::map::{CurveSet, Dart, PlaneGraph};
use crate::validate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofCase {
    /// `u` and `v` lie on the same curve through `z`.
    SameCurve,
    /// `u` and `v` lie on different curves through `z`.
    DifferentCurves,
}

impl ProofCase {
    pub fn number(self) -> u8 {
        match self {
            ProofCase::SameCurve => 1,
            ProofCase::DifferentCurves => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathRole {
    /// `u z v`.
    Direct,
    /// Case 1: the green curve minus `z`.
    GreenRemainder,
    /// Case 1: perimeter half through `a`.
    PerimeterA,
    /// Case 1: perimeter half through `b`.
    PerimeterB,
    /// Case 2: perimeter arc of the face holding `u` and `v`.
    FaceArc,
    /// Case 2: the rest of the perimeter, through `a` and `b`.
    PerimeterRest,
    /// Case 2: green to a red crossing, then red to `v`.
    GreenThenRed,
    /// Substituted by the max-flow oracle.
    Flow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofPath {
    pub role: PathRole,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofPathsResult {
    pub case: ProofCase,
    pub u: usize,
    pub v: usize,
    pub z: usize,
    /// The neighbours of `z` other than `u` and `v`. Both are red in case 1;
    /// in case 2 `a` is red (opposite `v`) and `b` green (opposite `u`).
    pub a: usize,
    pub b: usize,
    pub green: usize,
    pub red: usize,
    pub paths: Vec<ProofPath>,
    pub used_fallback: bool,
}

impl ProofPathsResult {
    pub fn path(&self, role: PathRole) -> Option<&[usize]> {
        self.paths
            .iter()
            .find(|p| p.role == role)
            .map(|p| p.vertices.as_slice())
    }
}

/// Which red crossing on the green walk path C turns at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossingChoice {
    #[default]
    First,
    Last,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("graph is not a V-graph")]
    NotVGraph,
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),
    #[error("({u}, {z}, {v}) is not a distance-two triple")]
    NotDistanceTwo { u: usize, z: usize, v: usize },
}

/// Build the four paths for the triple `(u, z, v)` in a V-graph.
pub fn proof_paths(
    g: &PlaneGraph,
    u: usize,
    z: usize,
    v: usize,
) -> Result<ProofPathsResult, ProofError> {
    VGraphView::new(g)?.build(u, z, v, CrossingChoice::First)
}

pub fn proof_paths_with(
    g: &PlaneGraph,
    u: usize,
    z: usize,
    v: usize,
    choice: CrossingChoice,
) -> Result<ProofPathsResult, ProofError> {
    VGraphView::new(g)?.build(u, z, v, choice)
}

/// A graph already confirmed to be a V-graph, with its curves.
pub(crate) struct VGraphView<'a> {
    g: &'a PlaneGraph,
    curves: CurveSet,
}

impl<'a> VGraphView<'a> {
    pub(crate) fn new(g: &'a PlaneGraph) -> Result<Self, ProofError> {
        if !validate::validate(g).is_vgraph {
            return Err(ProofError::NotVGraph);
        }
        let curves = g.curves().map_err(|_| ProofError::NotVGraph)?;
        Ok(VGraphView { g, curves })
    }

    pub(crate) fn build(
        &self,
        u: usize,
        z: usize,
        v: usize,
        choice: CrossingChoice,
    ) -> Result<ProofPathsResult, ProofError> {
        let g = self.g;
        let n = g.vertex_count();
        for x in [u, z, v] {
            if x >= n {
                return Err(ProofError::NoSuchVertex(x));
            }
        }
        let adj = g.adjacency();
        if u == v || adj.adjacent(u, v) || !adj.adjacent(z, u) || !adj.adjacent(z, v) {
            return Err(ProofError::NotDistanceTwo { u, z, v });
        }
        let nbr = |s: usize| g.neighbor(z, s % 4);
        let su = (0..4).find(|&s| nbr(s) == u).expect("u adjacent to z");
        let sv = [su + 2, su + 1, su + 3]
            .into_iter()
            .find(|&s| nbr(s) == v)
            .expect("v adjacent to z");
        let green = self.curves.curve_of(Dart::new(z, su));

        let mut result = if sv == su + 2 {
            let a = nbr(su + 1);
            let b = nbr(su + 3);
            let via_a = join(&[rev(self.arc(z, su + 1)), rev(self.arc(z, su + 2))]);
            let via_b = join(&[self.arc(z, su), self.arc(z, su + 3)]);
            let paths = vec![
                ProofPath {
                    role: PathRole::Direct,
                    vertices: vec![u, z, v],
                },
                ProofPath {
                    role: PathRole::GreenRemainder,
                    vertices: self.green_remainder(z, su, v),
                },
                ProofPath {
                    role: PathRole::PerimeterA,
                    vertices: via_a,
                },
                ProofPath {
                    role: PathRole::PerimeterB,
                    vertices: via_b,
                },
            ];
            ProofPathsResult {
                case: ProofCase::SameCurve,
                u,
                v,
                z,
                a,
                b,
                green,
                red: self.curves.curve_of(Dart::new(z, (su + 1) % 4)),
                paths,
                used_fallback: false,
            }
        } else {
            let red = self.curves.curve_of(Dart::new(z, sv % 4));
            let a = nbr(sv + 2);
            let b = nbr(su + 2);
            let (face_arc, rest) = if sv == su + 1 {
                (
                    rev(self.arc(z, su + 1)),
                    join(&[self.arc(z, su), self.arc(z, su + 3), self.arc(z, su + 2)]),
                )
            } else {
                (
                    self.arc(z, su),
                    join(&[
                        rev(self.arc(z, su + 1)),
                        rev(self.arc(z, su + 2)),
                        rev(self.arc(z, su + 3)),
                    ]),
                )
            };
            let paths = vec![
                ProofPath {
                    role: PathRole::FaceArc,
                    vertices: face_arc,
                },
                ProofPath {
                    role: PathRole::PerimeterRest,
                    vertices: rest,
                },
                ProofPath {
                    role: PathRole::GreenThenRed,
                    vertices: self.green_then_red(z, su, v, red, choice),
                },
                ProofPath {
                    role: PathRole::Direct,
                    vertices: vec![u, z, v],
                },
            ];
            ProofPathsResult {
                case: ProofCase::DifferentCurves,
                u,
                v,
                z,
                a,
                b,
                green,
                red,
                paths,
                used_fallback: false,
            }
        };

        let roles_distinct = {
            let mut r = [result.a, result.b, u, v];
            r.sort_unstable();
            r.windows(2).all(|w| w[0] != w[1])
        };
        let vertex_lists: Vec<Vec<usize>> =
            result.paths.iter().map(|p| p.vertices.clone()).collect();
        if !roles_distinct
            || vertex_lists.len() != 4
            || !verify_disjoint_paths(adj, u, v, &vertex_lists)
        {
            let flow = max_disjoint_paths(adj, u, v).expect("validated triple");
            result.paths = flow
                .certificate
                .paths
                .into_iter()
                .map(|vertices| ProofPath {
                    role: PathRole::Flow,
                    vertices,
                })
                .collect();
            result.used_fallback = true;
        }
        Ok(result)
    }

    /// Boundary of the face at `z` between slots `s - 1` and `s`, without
    /// `z`: from `z`'s neighbour through slot `s` to its neighbour through
    /// slot `s - 1`.
    fn arc(&self, z: usize, s: usize) -> Vec<usize> {
        let start = Dart::new(z, s % 4);
        let mut out = Vec::new();
        let mut d = self.g.face_next(start);
        while d != start && out.len() <= self.g.dart_count() {
            out.push(d.vertex());
            d = self.g.face_next(d);
        }
        out
    }

    /// The curve through `z` via slot `su`, walked from `u` away from `z`
    /// until `v`.
    fn green_remainder(&self, z: usize, su: usize, v: usize) -> Vec<usize> {
        let mut d = self.g.curve_next(Dart::new(z, su));
        let mut out = vec![d.vertex()];
        for _ in 0..self.g.vertex_count() {
            let w = self.g.head(d);
            out.push(w);
            if w == v || w == z {
                break;
            }
            d = self.g.curve_next(d);
        }
        out
    }

    fn green_then_red(
        &self,
        z: usize,
        su: usize,
        v: usize,
        red: usize,
        choice: CrossingChoice,
    ) -> Vec<usize> {
        // Green walk from u, stopping before it returns to z.
        let mut walk = Vec::new();
        let mut d = self.g.curve_next(Dart::new(z, su));
        for _ in 0..self.g.vertex_count() {
            walk.push(d.vertex());
            if d.vertex() == v {
                return walk;
            }
            if self.g.head(d) == z {
                break;
            }
            d = self.g.curve_next(d);
        }
        let on_red = |&x: &usize| self.curves.is_on(x, red);
        let turn = match choice {
            CrossingChoice::First => walk.iter().position(on_red),
            CrossingChoice::Last => walk.iter().rposition(on_red),
        };
        let Some(turn) = turn else {
            return walk;
        };
        let w = walk[turn];
        walk.truncate(turn + 1);

        // Of the two red directions out of w, take the one reaching v before z.
        let red_slot = (0..4)
            .find(|&s| self.curves.curve_of(Dart::new(w, s)) == red)
            .expect("w lies on red");
        for start in [Dart::new(w, red_slot), Dart::new(w, red_slot).opposite()] {
            let mut tail = Vec::new();
            let mut d = start;
            for _ in 0..self.g.vertex_count() {
                let x = self.g.head(d);
                if x == z {
                    break;
                }
                tail.push(x);
                if x == v {
                    walk.extend(tail);
                    return walk;
                }
                d = self.g.curve_next(d);
            }
        }
        walk
    }
}

fn rev(mut p: Vec<usize>) -> Vec<usize> {
    p.reverse();
    p
}

/// Concatenate arcs that share endpoints.
fn join(parts: &[Vec<usize>]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for part in parts {
        let skip = usize::from(!out.is_empty() && out.last() == part.first());
        out.extend_from_slice(&part[skip..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_shares_endpoints() {
        assert_eq!(
            join(&[vec![1, 2, 3], vec![3, 4], vec![4, 5]]),
            vec![1, 2, 3, 4, 5]
        );
        assert_eq!(rev(vec![1, 2]), vec![2, 1]);
    }

    #[test]
    fn rejects_non_vgraph() {
        let lens = PlaneGraph::build(
            2,
            &[
                [(1, 2), (1, 1), (1, 0), (1, 3)],
                [(0, 2), (0, 1), (0, 0), (0, 3)],
            ],
        )
        .unwrap();
        assert_eq!(
            proof_paths(&lens, 0, 1, 0).unwrap_err(),
            ProofError::NotVGraph
        );
    }
}
