//! Exact minimum red-blue dominating sets.
//!
//! [`brute_force_min`] enumerates subsets and serves as a test oracle for tiny
//! graphs. [`exact_min`] is a time-bounded branch and bound that reports the
//! best solution found, whether it is proven optimal, and a lower bound.

use std::time::{Duration, Instant};

use crate::approx::{approximate, ApproximatorId};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::RbInstance;

pub const BRUTE_FORCE_MAX_N: usize = 24;

/// Minimum valid solution by enumeration in increasing size; among solutions
/// of the same size the lexicographically smallest sorted id list wins.
pub fn brute_force_min(inst: &RbInstance<'_>) -> Result<Vec<Vertex>> {
    let g = inst.graph();
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge(format!(
            "brute force supports at most {BRUTE_FORCE_MAX_N} vertices, got {n}"
        )));
    }
    let closed: Vec<u32> = g
        .vertices()
        .map(|v| g.closed_neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let blue: u32 = inst.blue_vertices().fold(0u32, |m, v| m | (1 << v));
    if blue == 0 {
        return Ok(Vec::new());
    }

    for k in 1..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let covered = idx.iter().fold(0u32, |m, &v| m | closed[v]);
            if covered & blue == blue {
                return Ok(idx);
            }
            // next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set dominates every blue vertex")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// Best solution found, sorted ascending.
    pub solution: Vec<Vertex>,
    pub proven_optimal: bool,
    /// No valid solution is smaller than this.
    pub lower_bound: usize,
    /// Search nodes expanded.
    pub nodes: u64,
}

struct Frame {
    candidates: Vec<Vertex>,
    next: usize,
}

enum NodeOutcome {
    Covered,
    Pruned,
    Branch(Vec<Vertex>),
}

struct Search<'a, 'g> {
    inst: &'a RbInstance<'g>,
    cover: Vec<u32>,
    uncovered: usize,
    forbidden: Vec<bool>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
    packed: Vec<bool>,
}

impl<'a, 'g> Search<'a, 'g> {
    fn choose(&mut self, v: Vertex) {
        self.chosen.push(v);
        for u in self.inst.graph().closed_neighbors(v) {
            if self.cover[u] == 0 && self.inst.is_blue(u) {
                self.uncovered -= 1;
            }
            self.cover[u] += 1;
        }
    }

    fn unchoose(&mut self, v: Vertex) {
        let last = self.chosen.pop();
        debug_assert_eq!(last, Some(v));
        for u in self.inst.graph().closed_neighbors(v) {
            self.cover[u] -= 1;
            if self.cover[u] == 0 && self.inst.is_blue(u) {
                self.uncovered += 1;
            }
        }
    }

    fn allowed(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inst
            .graph()
            .closed_neighbors(v)
            .filter(move |&u| !self.forbidden[u])
    }

    /// Lower bound on the number of further vertices needed: uncovered blue
    /// vertices whose allowed closed neighborhoods are pairwise disjoint each
    /// need their own dominator. Also picks the branching vertex, the
    /// uncovered blue vertex with the fewest allowed dominators.
    fn evaluate(&mut self) -> (usize, Option<(Vertex, usize)>) {
        let g = self.inst.graph();
        let mut pending: Vec<(usize, Vertex)> = self
            .inst
            .blue_vertices()
            .filter(|&v| self.cover[v] == 0)
            .map(|v| (self.allowed(v).count(), v))
            .collect();
        pending.sort_unstable();
        let pick = pending.first().map(|&(c, v)| (v, c));

        let mut bound = 0;
        let mut touched = Vec::new();
        for &(_, v) in &pending {
            if self.allowed(v).any(|u| self.packed[u]) {
                continue;
            }
            bound += 1;
            for u in g.closed_neighbors(v) {
                if !self.forbidden[u] {
                    self.packed[u] = true;
                    touched.push(u);
                }
            }
        }
        for u in touched {
            self.packed[u] = false;
        }
        (bound, pick)
    }

    fn expand(&mut self, root_bound: &mut Option<usize>) -> NodeOutcome {
        if self.uncovered == 0 {
            return NodeOutcome::Covered;
        }
        let (bound, pick) = self.evaluate();
        if root_bound.is_none() {
            *root_bound = Some(bound);
        }
        let (v, count) = pick.expect("uncovered blue vertex exists");
        if count == 0 || self.chosen.len() + bound >= self.best.len() {
            return NodeOutcome::Pruned;
        }
        NodeOutcome::Branch(self.allowed(v).collect())
    }
}

/// Branch and bound for a minimum valid solution.
///
/// Branches on an uncovered blue vertex `v` with the fewest allowed
/// dominators: each branch takes one vertex of `N[v]` (ascending id) and
/// forbids the ones tried before it. The incumbent starts from the greedy
/// cover. When the budget runs out the incumbent is returned with
/// `proven_optimal = false` and the root packing bound.
pub fn exact_min(inst: &RbInstance<'_>, time_budget: Duration) -> ExactResult {
    let start = Instant::now();
    let n = inst.graph().n();
    let mut search = Search {
        inst,
        cover: vec![0; n],
        uncovered: inst.blue_count(),
        forbidden: vec![false; n],
        chosen: Vec::new(),
        best: approximate(inst, ApproximatorId::GreedyCover),
        packed: vec![false; n],
    };

    let mut root_bound: Option<usize> = None;
    let mut stack: Vec<Frame> = Vec::new();
    let mut nodes = 0u64;
    let mut finished = false;

    'search: loop {
        nodes += 1;
        if start.elapsed() >= time_budget {
            break;
        }
        match search.expand(&mut root_bound) {
            NodeOutcome::Covered => {
                if search.chosen.len() < search.best.len() {
                    search.best = search.chosen.clone();
                    log::debug!("exact: incumbent {}", search.best.len());
                }
            }
            NodeOutcome::Pruned => {}
            NodeOutcome::Branch(candidates) => stack.push(Frame {
                candidates,
                next: 0,
            }),
        }

        // advance to the next unexplored child
        loop {
            let Some(top) = stack.last_mut() else {
                finished = true;
                break 'search;
            };
            if top.next > 0 {
                let prev = top.candidates[top.next - 1];
                search.unchoose(prev);
                search.forbidden[prev] = true;
            }
            let top = stack.last_mut().unwrap();
            // a child adds one vertex, so it must end strictly below the incumbent
            if top.next < top.candidates.len() && search.chosen.len() + 1 < search.best.len() {
                let w = top.candidates[top.next];
                top.next += 1;
                search.choose(w);
                continue 'search;
            }
            let frame = stack.pop().unwrap();
            for &w in &frame.candidates[..frame.next] {
                search.forbidden[w] = false;
            }
        }
    }

    let mut solution = search.best;
    solution.sort_unstable();
    let lower_bound = if finished {
        solution.len()
    } else {
        root_bound.unwrap_or(0).min(solution.len())
    };
    ExactResult {
        proven_optimal: finished,
        lower_bound,
        solution,
        nodes,
    }
}
