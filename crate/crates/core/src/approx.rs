//! Drop-in approximation algorithms run on (reduced) red-blue instances.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::Vertex;
use crate::instance::RbInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ApproximatorId {
    /// Greedy set cover: take the vertex dominating the most blue vertices,
    /// lowest id on ties.
    #[default]
    GreedyCover,
    /// Same greedy gain, ties broken by position in the degeneracy order.
    DegeneracyGuided,
}

impl fmt::Display for ApproximatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApproximatorId::GreedyCover => "greedy",
            ApproximatorId::DegeneracyGuided => "degeneracy",
        })
    }
}

impl FromStr for ApproximatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(ApproximatorId::GreedyCover),
            "degeneracy" => Ok(ApproximatorId::DegeneracyGuided),
            other => Err(Error::input(format!("unknown approximator '{other}'"))),
        }
    }
}

/// Returns a set dominating every blue vertex of `inst`, sorted ascending.
/// The caller's instance is not modified.
pub fn approximate(inst: &RbInstance<'_>, which: ApproximatorId) -> Vec<Vertex> {
    let n = inst.graph().n();
    let rank: Vec<usize> = match which {
        ApproximatorId::GreedyCover => (0..n).collect(),
        ApproximatorId::DegeneracyGuided => {
            let (order, _) = inst.graph().degeneracy_order();
            let mut rank = vec![0; n];
            for (i, v) in order.into_iter().enumerate() {
                rank[v] = i;
            }
            rank
        }
    };
    greedy_with_rank(inst, &rank)
}

/// Max-gain greedy where `rank` breaks ties (smaller rank wins). Gains only
/// decrease, so stale heap entries are re-pushed with their current gain on
/// pop and the first fresh entry is a true maximum.
fn greedy_with_rank(inst: &RbInstance<'_>, rank: &[usize]) -> Vec<Vertex> {
    let g = inst.graph();
    let mut scratch = inst.clone();
    let mut gain: Vec<usize> = g
        .vertices()
        .map(|v| {
            g.closed_neighbors(v)
                .filter(|&u| scratch.is_blue(u))
                .count()
        })
        .collect();

    // candidates are exactly the blue vertices and their neighbors
    let mut heap: BinaryHeap<(usize, Reverse<usize>, Vertex)> = g
        .vertices()
        .filter(|&v| gain[v] > 0)
        .map(|v| (gain[v], Reverse(rank[v]), v))
        .collect();

    let mut solution = Vec::new();
    while scratch.blue_count() > 0 {
        let (key, r, v) = heap.pop().expect("a blue vertex always has a candidate");
        if key != gain[v] {
            if gain[v] > 0 {
                heap.push((gain[v], r, v));
            }
            continue;
        }
        solution.push(v);
        for u in g.closed_neighbors(v) {
            if scratch.make_red(u) {
                for w in g.closed_neighbors(u) {
                    gain[w] -= 1;
                }
            }
        }
    }
    solution.sort_unstable();
    solution
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn star_takes_center() {
        let edges: Vec<_> = (1..=9).map(|i| (0, i)).collect();
        let g = Graph::from_edges(10, &edges).unwrap();
        let inst = RbInstance::all_blue(&g);
        for which in [
            ApproximatorId::GreedyCover,
            ApproximatorId::DegeneracyGuided,
        ] {
            assert_eq!(approximate(&inst, which), vec![0]);
        }
    }

    #[test]
    fn all_red_needs_nothing() {
        let g = cycle(5);
        let inst = RbInstance::all_red(&g);
        assert!(approximate(&inst, ApproximatorId::GreedyCover).is_empty());
        assert!(approximate(&inst, ApproximatorId::DegeneracyGuided).is_empty());
    }

    #[test]
    fn c6_greedy_is_optimal() {
        let g = cycle(6);
        let inst = RbInstance::all_blue(&g);
        let s = approximate(&inst, ApproximatorId::GreedyCover);
        // first pick 0 covers {5,0,1}; then 3 covers {2,3,4}
        assert_eq!(s, vec![0, 3]);
        assert!(inst.is_valid_solution(&s));
    }

    #[test]
    fn leaves_caller_instance_untouched() {
        let g = cycle(6);
        let inst = RbInstance::with_blue(&g, [0, 3]);
        let s = approximate(&inst, ApproximatorId::GreedyCover);
        assert_eq!(inst.blue_count(), 2);
        assert!(inst.is_valid_solution(&s));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn red_vertices_can_dominate() {
        // blue leaves 1 and 2 share red neighbor 0
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let inst = RbInstance::with_blue(&g, [1, 2]);
        assert_eq!(approximate(&inst, ApproximatorId::GreedyCover), vec![0]);
    }

    #[test]
    fn parses_ids() {
        assert_eq!(
            "greedy".parse::<ApproximatorId>().unwrap(),
            ApproximatorId::GreedyCover
        );
        assert_eq!(
            "degeneracy".parse::<ApproximatorId>().unwrap(),
            ApproximatorId::DegeneracyGuided
        );
        assert!("lp".parse::<ApproximatorId>().is_err());
    }
}
