//! Hamilton cycles by edge-decision backtracking.
//!
//! Each simple edge is undecided, in, or out. After every decision the
//! search propagates, in this order:
//!
//! 1. forced edges: a vertex with two in-edges drops the rest; a vertex with
//!    exactly two remaining edges takes both;
//! 2. subcycles: in-edges always form vertex-disjoint paths, and an edge
//!    joining the two ends of one path is only allowed when it closes a
//!    cycle through every vertex;
//! 3. residual connectivity: the graph of non-out edges must stay connected.
//!
//! Branching extends the path ending at the lowest-numbered vertex that has
//! exactly one in-edge, trying its lowest undecided edge as "in" first.

use std::collections::VecDeque;

use thiserror::Error;

use crate::map::Adjacency;

/// A cyclic vertex order, starting at vertex 0 and continuing to the smaller
/// of its two cycle neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonCycle {
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("graph needs at least 3 vertices")]
    TooSmall,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("search space exhausted: no Hamilton cycle")]
    Exhausted,
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 20_000_000,
        }
    }
}

pub fn verify_cycle(adj: &Adjacency, order: &[usize]) -> bool {
    let n = adj.vertex_count();
    if order.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| adj.adjacent(order[i], order[(i + 1) % n]))
}

pub fn find_hamilton(adj: &Adjacency) -> Result<HamiltonCycle, HamiltonError> {
    find_hamilton_with(adj, SearchConfig::default())
}

pub fn find_hamilton_with(
    adj: &Adjacency,
    config: SearchConfig,
) -> Result<HamiltonCycle, HamiltonError> {
    let n = adj.vertex_count();
    if n < 3 {
        return Err(HamiltonError::TooSmall);
    }
    if !adj.is_connected() {
        return Err(HamiltonError::Disconnected);
    }
    let mut search = Search::new(adj, config.node_budget);
    let mut initial = Vec::new();
    for v in 0..n {
        if search.incident[v].len() < 2 {
            return Err(HamiltonError::Exhausted);
        }
        if search.incident[v].len() == 2 {
            initial.extend(search.incident[v].iter().map(|&e| (e, State::In)));
        }
    }
    if search.apply(initial).is_err() {
        return Err(HamiltonError::Exhausted);
    }
    match search.solve() {
        Outcome::Found => {
            let order = canonical(search.cycle());
            debug_assert!(verify_cycle(adj, &order));
            Ok(HamiltonCycle { order })
        }
        Outcome::Exhausted => Err(HamiltonError::Exhausted),
        Outcome::Budget => Err(HamiltonError::BudgetExceeded(config.node_budget)),
    }
}

/// Rotate to start at the smallest vertex and orient toward its smaller
/// cycle neighbour.
pub fn canonical(mut order: Vec<usize>) -> Vec<usize> {
    if order.is_empty() {
        return order;
    }
    let pos = order.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap().0;
    order.rotate_left(pos);
    if order.len() > 2 && order[order.len() - 1] < order[1] {
        order[1..].reverse();
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Undecided,
    In,
    Out,
}

enum Undo {
    Edge(usize),
    End(usize, usize),
}

enum Outcome {
    Found,
    Exhausted,
    Budget,
}

struct Conflict;

struct Search {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Incident edge ids per vertex, ordered by the other endpoint.
    incident: Vec<Vec<usize>>,
    state: Vec<State>,
    in_deg: Vec<usize>,
    avail: Vec<usize>,
    /// For a path end, the other end of its path; `end[v] == v` when isolated.
    end: Vec<usize>,
    in_total: usize,
    trail: Vec<Undo>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn new(adj: &Adjacency, budget: u64) -> Self {
        let n = adj.vertex_count();
        let edges = adj.edges();
        let mut incident = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(i);
            incident[b].push(i);
        }
        for (v, list) in incident.iter_mut().enumerate() {
            list.sort_by_key(|&e| other(edges[e], v));
        }
        let avail = incident.iter().map(Vec::len).collect();
        Search {
            n,
            state: vec![State::Undecided; edges.len()],
            edges,
            incident,
            in_deg: vec![0; n],
            avail,
            end: (0..n).collect(),
            in_total: 0,
            trail: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.incident[a]
            .iter()
            .copied()
            .find(|&e| other(self.edges[e], a) == b)
    }

    fn set_end(&mut self, v: usize, to: usize) {
        self.trail.push(Undo::End(v, self.end[v]));
        self.end[v] = to;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Edge(e) => {
                    let (a, b) = self.edges[e];
                    match self.state[e] {
                        State::In => {
                            self.in_deg[a] -= 1;
                            self.in_deg[b] -= 1;
                            self.in_total -= 1;
                        }
                        State::Out => {
                            self.avail[a] += 1;
                            self.avail[b] += 1;
                        }
                        State::Undecided => unreachable!(),
                    }
                    self.state[e] = State::Undecided;
                }
                Undo::End(v, old) => self.end[v] = old,
            }
        }
    }

    /// Apply decisions and everything they force.
    fn apply(&mut self, decisions: Vec<(usize, State)>) -> Result<(), Conflict> {
        let mut queue: VecDeque<(usize, State)> = decisions.into();
        while let Some((e, want)) = queue.pop_front() {
            match (self.state[e], want) {
                (s, w) if s == w => continue,
                (State::Undecided, _) => {}
                _ => return Err(Conflict),
            }
            let (a, b) = self.edges[e];
            if want == State::In {
                if self.in_deg[a] == 2 || self.in_deg[b] == 2 {
                    return Err(Conflict);
                }
                let (ea, eb) = (self.end[a], self.end[b]);
                let closes = ea == b;
                if closes && self.in_total + 1 != self.n {
                    return Err(Conflict);
                }
                self.trail.push(Undo::Edge(e));
                self.state[e] = want;
                self.in_deg[a] += 1;
                self.in_deg[b] += 1;
                self.in_total += 1;
                if !closes {
                    self.set_end(ea, eb);
                    self.set_end(eb, ea);
                    // The new path's ends may not be joined early.
                    if self.in_total + 1 < self.n {
                        if let Some(f) = self.edge_between(ea, eb).filter(|&f| f != e) {
                            queue.push_back((f, State::Out));
                        }
                    }
                }
                for x in [a, b] {
                    if self.in_deg[x] == 2 {
                        for &f in &self.incident[x] {
                            if self.state[f] == State::Undecided {
                                queue.push_back((f, State::Out));
                            }
                        }
                    }
                }
            } else {
                self.trail.push(Undo::Edge(e));
                self.state[e] = want;
                self.avail[a] -= 1;
                self.avail[b] -= 1;
                for x in [a, b] {
                    if self.avail[x] < 2 {
                        return Err(Conflict);
                    }
                    if self.avail[x] == 2 && self.in_deg[x] < 2 {
                        for &f in &self.incident[x] {
                            if self.state[f] == State::Undecided {
                                queue.push_back((f, State::In));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn residual_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut count = 1;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &e in &self.incident[x] {
                if self.state[e] != State::Out {
                    let y = other(self.edges[e], x);
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == self.n
    }

    fn branch_edge(&self) -> Option<usize> {
        let v = (0..self.n)
            .find(|&v| self.in_deg[v] == 1)
            .or_else(|| (0..self.n).find(|&v| self.in_deg[v] == 0))?;
        self.incident[v]
            .iter()
            .copied()
            .find(|&e| self.state[e] == State::Undecided)
    }

    fn solve(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Budget;
        }
        if self.in_total == self.n {
            return Outcome::Found;
        }
        if !self.residual_connected() {
            return Outcome::Exhausted;
        }
        let Some(e) = self.branch_edge() else {
            return Outcome::Exhausted;
        };
        for choice in [State::In, State::Out] {
            let mark = self.trail.len();
            if self.apply(vec![(e, choice)]).is_ok() {
                match self.solve() {
                    Outcome::Exhausted => {}
                    done => return done,
                }
            }
            self.undo_to(mark);
        }
        Outcome::Exhausted
    }

    fn cycle(&self) -> Vec<usize> {
        let mut order = vec![0];
        let mut prev = usize::MAX;
        let mut cur = 0;
        while order.len() < self.n {
            let next = self.incident[cur]
                .iter()
                .filter(|&&e| self.state[e] == State::In)
                .map(|&e| other(self.edges[e], cur))
                .find(|&y| y != prev)
                .expect("in-edges form a Hamilton cycle");
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    }
}

fn other((a, b): (usize, usize), v: usize) -> usize {
    if a == v {
        b
    } else {
        a
    }
}
