//! Unit-capacity max-flow on the vertex-split digraph.
//!
//! Vertex `x` becomes `x_in = 2x` and `x_out = 2x + 1` joined by a unit arc;
//! each undirected edge `{x, y}` becomes arcs `x_out -> y_in` and
//! `y_out -> x_in` of unbounded capacity, so every minimum cut is made of
//! vertex arcs. A direct `s -> t` arc has capacity one. Augmenting paths are found by BFS, scanning arcs in
//! insertion order, and arcs are inserted by ascending vertex id, so
//! certificates are reproducible.

use std::collections::VecDeque;

use crate::map::Adjacency;

const UNBOUNDED: u32 = u32::MAX / 2;

struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

pub(crate) struct SplitFlow {
    arcs: Vec<Vec<Arc>>,
    source: usize,
    sink: usize,
}

pub(crate) struct FlowOutcome {
    pub value: usize,
    pub paths: Vec<Vec<usize>>,
    /// Vertices whose split arc is saturated and crosses the min cut.
    pub cut: Vec<usize>,
}

impl SplitFlow {
    pub(crate) fn new(adj: &Adjacency, s: usize, t: usize) -> Self {
        let n = adj.vertex_count();
        let mut flow = SplitFlow {
            arcs: (0..2 * n).map(|_| Vec::new()).collect(),
            source: 2 * s + 1,
            sink: 2 * t,
        };
        for x in 0..n {
            if x != s && x != t {
                flow.add_arc(2 * x, 2 * x + 1, 1);
            }
            for &y in adj.neighbors(x) {
                let cap = if x == s && y == t { 1 } else { UNBOUNDED };
                flow.add_arc(2 * x + 1, 2 * y, cap);
            }
        }
        flow
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            rev: rev_from,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: rev_to,
        });
    }

    fn augment(&mut self) -> bool {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            if x == self.sink {
                break;
            }
            for (i, arc) in self.arcs[x].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = Some((x, i));
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[self.sink] {
            return false;
        }
        let mut x = self.sink;
        while let Some((p, i)) = parent[x] {
            let rev = self.arcs[p][i].rev;
            self.arcs[p][i].cap -= 1;
            self.arcs[x][rev].cap += 1;
            x = p;
        }
        true
    }

    fn residual_reach(&self) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            for arc in &self.arcs[x] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }

    /// Follow saturated forward arcs from the source to read off paths.
    fn extract_paths(&self) -> Vec<Vec<usize>> {
        let s = self.source / 2;
        let t = self.sink / 2;
        let mut used: Vec<Vec<bool>> = self.arcs.iter().map(|a| vec![false; a.len()]).collect();
        let mut paths = Vec::new();
        loop {
            let mut path = vec![s];
            let mut x = self.source;
            let mut advanced = false;
            while x != self.sink {
                // A forward arc carries flow when its reverse has capacity;
                // forward arcs are the ones that started at capacity 1, which
                // are exactly those whose node index parity fits the split.
                let next = self.arcs[x].iter().enumerate().find(|(i, arc)| {
                    !used[x][*i] && is_forward(x, arc.to) && self.arcs[arc.to][arc.rev].cap > 0
                });
                let Some((i, arc)) = next else { break };
                used[x][i] = true;
                advanced = true;
                x = arc.to;
                if x.is_multiple_of(2) {
                    path.push(x / 2);
                }
            }
            if !advanced || x != self.sink {
                break;
            }
            if *path.last().unwrap() != t {
                path.push(t);
            }
            paths.push(path);
        }
        paths
    }

    pub(crate) fn run(mut self) -> FlowOutcome {
        let mut value = 0;
        while self.augment() {
            value += 1;
        }
        let paths = self.extract_paths();
        let reach = self.residual_reach();
        let n = self.arcs.len() / 2;
        let s = self.source / 2;
        let t = self.sink / 2;
        let cut = (0..n)
            .filter(|&x| x != s && x != t && reach[2 * x] && !reach[2 * x + 1])
            .collect();
        FlowOutcome { value, paths, cut }
    }
}

/// Arcs `x_in -> x_out` and `x_out -> y_in` are forward; their reverses are
/// `x_out -> x_in` and `y_in -> x_out`.
fn is_forward(from: usize, to: usize) -> bool {
    if from / 2 == to / 2 {
        from.is_multiple_of(2)
    } else {
        !from.is_multiple_of(2) && to.is_multiple_of(2)
    }
}
