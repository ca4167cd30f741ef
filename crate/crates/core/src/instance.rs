//! Red-blue dominating set instances.
//!
//! Blue vertices must be dominated, red vertices are already dominated but
//! may still be picked as dominators. Reductions only ever recolor blue
//! vertices red; the underlying graph never changes.

use std::fmt;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

/// Objective value of a candidate solution: its size, or `Infeasible` when
/// some blue vertex is left undominated. `Infeasible` orders above every size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DsValue {
    Size(usize),
    Infeasible,
}

impl DsValue {
    pub fn size(self) -> Option<usize> {
        match self {
            DsValue::Size(s) => Some(s),
            DsValue::Infeasible => None,
        }
    }
}

impl fmt::Display for DsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DsValue::Size(s) => write!(f, "{s}"),
            DsValue::Infeasible => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RbInstance<'g> {
    graph: &'g Graph,
    blue: Vec<bool>,
    blue_count: usize,
}

impl<'g> RbInstance<'g> {
    /// Classical dominating set: every vertex blue.
    pub fn all_blue(graph: &'g Graph) -> Self {
        RbInstance {
            graph,
            blue: vec![true; graph.n()],
            blue_count: graph.n(),
        }
    }

    pub fn all_red(graph: &'g Graph) -> Self {
        RbInstance {
            graph,
            blue: vec![false; graph.n()],
            blue_count: 0,
        }
    }

    /// Instance with exactly the given vertices blue. Ids outside the graph
    /// are ignored.
    pub fn with_blue(graph: &'g Graph, blue_vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut inst = Self::all_red(graph);
        for v in blue_vertices {
            if v < graph.n() && !inst.blue[v] {
                inst.blue[v] = true;
                inst.blue_count += 1;
            }
        }
        inst
    }

    #[inline]
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    #[inline]
    pub fn is_blue(&self, v: Vertex) -> bool {
        self.blue[v]
    }

    pub fn color(&self, v: Vertex) -> Color {
        if self.blue[v] {
            Color::Blue
        } else {
            Color::Red
        }
    }

    #[inline]
    pub fn blue_count(&self) -> usize {
        self.blue_count
    }

    pub fn blue_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.blue
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn blue_mask(&self) -> &[bool] {
        &self.blue
    }

    /// Moves `v` from blue to red. Returns whether the color changed.
    #[inline]
    pub fn make_red(&mut self, v: Vertex) -> bool {
        if self.blue[v] {
            self.blue[v] = false;
            self.blue_count -= 1;
            true
        } else {
            false
        }
    }

    /// Recolors every blue vertex of `N[v]` red and returns them.
    pub fn make_closed_neighborhood_red(&mut self, v: Vertex) -> Vec<Vertex> {
        let graph = self.graph;
        graph
            .closed_neighbors(v)
            .filter(|&u| self.make_red(u))
            .collect()
    }

    /// True iff every blue vertex lies in `N[s]`.
    pub fn is_valid_solution(&self, s: &[Vertex]) -> bool {
        let mut dominated = vec![false; self.graph.n()];
        for &v in s {
            for u in self.graph.closed_neighbors(v) {
                dominated[u] = true;
            }
        }
        self.blue_vertices().all(|v| dominated[v])
    }

    /// `|s|` if `s` is a valid solution, `Infeasible` otherwise. Duplicate ids
    /// in `s` are counted once.
    pub fn ds_value(&self, s: &[Vertex]) -> DsValue {
        if self.is_valid_solution(s) {
            let mut sorted = s.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            DsValue::Size(sorted.len())
        } else {
            DsValue::Infeasible
        }
    }
}
