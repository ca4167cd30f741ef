//! Immutable simple undirected graphs.
//!
//! Vertices are dense ids `0..n`. Adjacency is stored in compressed sparse
//! row form with every neighbor list sorted ascending.

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Builds a simple graph from an edge list.
    ///
    /// Self-loops and repeated pairs (in either orientation) are dropped.
    /// Fails if an endpoint is not below `n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::input(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        Ok(Self::from_edges_unchecked(n, edges.iter().copied()))
    }

    /// Same as [`Graph::from_edges`] for callers that already guarantee the
    /// endpoint range.
    pub(crate) fn from_edges_unchecked(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)> + Clone,
    ) -> Self {
        let mut degree = vec![0usize; n];
        for (u, v) in edges.clone() {
            if u != v {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for (u, v) in edges {
            if u != v {
                targets[fill[u]] = v;
                fill[u] += 1;
                targets[fill[v]] = u;
                fill[v] += 1;
            }
        }

        // sort + dedup each row, then compact
        let mut compact_offsets = Vec::with_capacity(n + 1);
        compact_offsets.push(0);
        let mut write = 0;
        for v in 0..n {
            let (start, end) = (offsets[v], offsets[v + 1]);
            targets[start..end].sort_unstable();
            let mut last = None;
            for i in start..end {
                let t = targets[i];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            compact_offsets.push(write);
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        Graph {
            offsets: compact_offsets,
            targets,
        }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Open neighborhood `N(v)`, sorted ascending.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Closed neighborhood `N[v]` in ascending order.
    pub fn closed_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let nb = self.neighbors(v);
        let split = nb.partition_point(|&u| u < v);
        nb[..split]
            .iter()
            .copied()
            .chain(std::iter::once(v))
            .chain(nb[split..].iter().copied())
    }

    /// Closed neighborhood collected into a vector.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        self.closed_neighbors(v).collect()
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Average degree `2m / n`.
    pub fn avg_degree(&self) -> Result<f64> {
        if self.n() == 0 {
            return Err(Error::input("average degree of the empty graph"));
        }
        Ok(2.0 * self.m() as f64 / self.n() as f64)
    }

    /// Checks the simple-graph invariants: strictly increasing rows without
    /// self-loops, symmetric adjacency.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for v in self.vertices() {
            let nb = self.neighbors(v);
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("row {v} is not strictly increasing"));
            }
            if nb.contains(&v) {
                return Err(format!("self-loop at {v}"));
            }
            if let Some(&u) = nb.iter().find(|&&u| u >= self.n() || !self.has_edge(u, v)) {
                return Err(format!("edge ({v}, {u}) is not mirrored"));
            }
        }
        if !self.targets.len().is_multiple_of(2) {
            return Err("odd adjacency total".to_string());
        }
        Ok(())
    }

    /// Smallest-last ordering and the degeneracy of the graph.
    ///
    /// Repeatedly removes a vertex of minimum remaining degree (bucket queue,
    /// `O(n + m)`). The returned `d` is the largest degree seen at removal
    /// time, so every vertex has at most `d` neighbors later in the order.
    pub fn degeneracy_order(&self) -> (Vec<Vertex>, usize) {
        let n = self.n();
        if n == 0 {
            return (Vec::new(), 0);
        }
        let mut deg: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        let max_deg = *deg.iter().max().unwrap();

        // vertices sorted by degree, with bucket starts and positions
        let mut bin = vec![0usize; max_deg + 1];
        for &d in &deg {
            bin[d] += 1;
        }
        let mut start = 0;
        for b in bin.iter_mut() {
            let count = *b;
            *b = start;
            start += count;
        }
        let mut pos = vec![0usize; n];
        let mut vert = vec![0usize; n];
        for v in 0..n {
            pos[v] = bin[deg[v]];
            vert[pos[v]] = v;
            bin[deg[v]] += 1;
        }
        for d in (1..=max_deg).rev() {
            bin[d] = bin[d - 1];
        }
        bin[0] = 0;

        let mut degeneracy = 0;
        for i in 0..n {
            let v = vert[i];
            degeneracy = degeneracy.max(deg[v]);
            for &u in self.neighbors(v) {
                if deg[u] > deg[v] {
                    let du = deg[u];
                    let pu = pos[u];
                    let pw = bin[du];
                    let w = vert[pw];
                    if u != w {
                        vert[pu] = w;
                        pos[w] = pu;
                        vert[pw] = u;
                        pos[u] = pw;
                    }
                    bin[du] += 1;
                    deg[u] -= 1;
                }
            }
        }
        (vert, degeneracy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Degeneracy by definition: max over induced subgraphs of the min degree.
    fn brute_degeneracy(g: &Graph) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let min_deg = (0..n)
                .filter(|&v| mask & (1 << v) != 0)
                .map(|v| {
                    g.neighbors(v)
                        .iter()
                        .filter(|&&u| mask & (1 << u) != 0)
                        .count()
                })
                .min()
                .unwrap();
            best = best.max(min_deg);
        }
        best
    }

    #[test]
    fn builds_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn drops_loops_and_duplicates() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = Graph::from_edges(2, &[(0, 1), (1, 7)]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(1, 7)"), "{msg}");
    }

    #[test]
    fn closed_neighborhoods() {
        let p3 = path(3);
        assert_eq!(p3.closed_neighborhood(1), vec![0, 1, 2]);
        assert_eq!(p3.closed_neighborhood(0), vec![0, 1]);
        let g = Graph::empty(3);
        assert_eq!(g.closed_neighborhood(2), vec![2]);
        assert_eq!(star(4).closed_neighborhood(0), vec![0, 1, 2, 3, 4]);
        assert_eq!(star(4).closed_neighborhood(3), vec![0, 3]);
    }

    #[test]
    fn degeneracy_small_families() {
        assert_eq!(path(7).degeneracy_order().1, 1);
        assert_eq!(star(6).degeneracy_order().1, 1);
        assert_eq!(cycle(6).degeneracy_order().1, 2);
        assert_eq!(complete(5).degeneracy_order().1, 4);
        assert_eq!(Graph::empty(4).degeneracy_order().1, 0);
        assert_eq!(Graph::empty(0).degeneracy_order(), (vec![], 0));
    }

    #[test]
    fn degeneracy_matches_brute_force() {
        // K5 and a handful of fixed graphs on <= 6 vertices
        let graphs = vec![
            complete(5),
            complete(6),
            cycle(5),
            Graph::from_edges(
                6,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 4),
                ],
            )
            .unwrap(),
            Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)])
                .unwrap(),
        ];
        for g in &graphs {
            assert_eq!(g.degeneracy_order().1, brute_degeneracy(g));
        }
        assert_eq!(brute_degeneracy(&complete(5)), 4);
    }

    #[test]
    fn degeneracy_order_is_a_permutation_with_bounded_forward_degree() {
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 3),
                (3, 5),
            ],
        )
        .unwrap();
        let (order, d) = g.degeneracy_order();
        let mut rank = vec![usize::MAX; g.n()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        assert!(rank.iter().all(|&r| r != usize::MAX));
        for v in g.vertices() {
            let later = g
                .neighbors(v)
                .iter()
                .filter(|&&u| rank[u] > rank[v])
                .count();
            assert!(later <= d);
        }
        assert!(g.m() <= d * g.n());
    }

    #[test]
    fn average_degree() {
        assert!((path(3).avg_degree().unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(cycle(6).avg_degree().unwrap(), 2.0);
        assert!(Graph::empty(0).avg_degree().is_err());
    }

    #[test]
    fn edges_iterates_each_edge_once() {
        let g = cycle(4);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(0, 2));
    }
}
