//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use vgraph::generators::{circle_arrangement, gen_venn, gen_venn3, gen_weave, Circle};
use vgraph::{Adjacency, Dart, PlaneGraph};

pub fn lens() -> PlaneGraph {
    PlaneGraph::build(
        2,
        &[
            [(1, 2), (1, 1), (1, 0), (1, 3)],
            [(0, 2), (0, 1), (0, 0), (0, 3)],
        ],
    )
    .unwrap()
}

pub fn figure_eight() -> PlaneGraph {
    PlaneGraph::build(1, &[[(0, 3), (0, 2), (0, 1), (0, 0)]]).unwrap()
}

/// Two lenses side by side: four curves, two components.
pub fn two_lenses() -> PlaneGraph {
    PlaneGraph::build(
        4,
        &[
            [(1, 2), (1, 1), (1, 0), (1, 3)],
            [(0, 2), (0, 1), (0, 0), (0, 3)],
            [(3, 2), (3, 1), (3, 0), (3, 3)],
            [(2, 2), (2, 1), (2, 0), (2, 3)],
        ],
    )
    .unwrap()
}

/// Three pairwise-overlapping circles with no common point.
pub fn flower() -> PlaneGraph {
    let h = 3f64.sqrt();
    circle_arrangement(&[
        Circle::new(0.0, 0.0, 1.1),
        Circle::new(2.0, 0.0, 1.1),
        Circle::new(1.0, h, 1.1),
    ])
    .unwrap()
    .graph
}

/// Every named graph the tests run over.
pub fn corpus() -> Vec<(String, PlaneGraph)> {
    let mut out = vec![
        ("lens".to_string(), lens()),
        ("figure-eight".to_string(), figure_eight()),
        ("two-lenses".to_string(), two_lenses()),
        ("flower".to_string(), flower()),
        ("venn3".to_string(), gen_venn3()),
    ];
    for n in 4..=6 {
        out.push((format!("venn{n}"), gen_venn(n).unwrap()));
    }
    for k in 2..=6 {
        out.push((format!("weave{k}"), gen_weave(k).unwrap()));
    }
    out
}

/// Rename vertex `v` to `perm[v]` and rotate its slots by `shift[v]`.
pub fn relabel(g: &PlaneGraph, perm: &[usize], shift: &[usize]) -> PlaneGraph {
    let map = |d: Dart| Dart::new(perm[d.vertex()], (d.slot() + shift[d.vertex()]) % 4);
    let n = g.vertex_count();
    let mut twin = vec![Dart::new(0, 0); 4 * n];
    for d in g.darts() {
        twin[map(d).index()] = map(g.twin(d));
    }
    let mut coords = vec![None; n];
    for (v, p) in g.coords().iter().enumerate() {
        coords[perm[v]] = *p;
    }
    PlaneGraph::from_twins(twin)
        .unwrap()
        .with_coords(coords)
        .with_outer(g.outer().map(map))
        .unwrap()
}

/// Exhaustive Hamilton cycle test: extend every vertex ordering starting at
/// 0, abandoning a prefix only when its last step is not an edge.
pub fn brute_hamiltonian(adj: &Adjacency) -> bool {
    fn extend(adj: &Adjacency, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = used.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            return adj.adjacent(last, path[0]);
        }
        for w in 0..n {
            if !used[w] && adj.adjacent(last, w) {
                used[w] = true;
                path.push(w);
                if extend(adj, path, used) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }
    let n = adj.vertex_count();
    if n < 3 {
        return false;
    }
    let mut used = vec![false; n];
    used[0] = true;
    extend(adj, &mut vec![0], &mut used)
}

fn separates(adj: &Adjacency, removed: &[usize], u: usize, v: usize) -> bool {
    adj.components_without(removed)
        .iter()
        .any(|c| c.contains(&u) && !c.contains(&v))
}

/// Smallest vertex set avoiding `u`, `v` whose removal separates them,
/// found by trying every subset in order of size. `None` when `u`, `v` are
/// adjacent.
pub fn min_separator(adj: &Adjacency, u: usize, v: usize) -> Option<usize> {
    if adj.adjacent(u, v) {
        return None;
    }
    let others: Vec<usize> = (0..adj.vertex_count())
        .filter(|&x| x != u && x != v)
        .collect();
    let m = others.len();
    let mut best = m;
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed: Vec<usize> = (0..m)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| others[i])
            .collect();
        if separates(adj, &removed, u, v) {
            best = size;
        }
    }
    Some(best)
}

/// Local connectivity by separator enumeration. An adjacent pair counts the
/// edge once plus the separator size of the graph without that edge.
pub fn local_connectivity_oracle(adj: &Adjacency, u: usize, v: usize) -> usize {
    if !adj.adjacent(u, v) {
        return min_separator(adj, u, v).unwrap();
    }
    let edges = adj
        .edges()
        .into_iter()
        .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)));
    let without = Adjacency::from_edges(adj.vertex_count(), edges);
    1 + min_separator(&without, u, v).unwrap()
}
