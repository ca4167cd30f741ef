//! Seeded random graph models.
//!
//! Every generator is deterministic for a given parameter set and seed
//! (ChaCha8 stream). Streams are not compatible with networkx.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[inline]
fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Erdős–Rényi `G(n, p)` with `p = avg_deg / n`.
///
/// Uses geometric skipping over the `n(n-1)/2` pairs, so the cost is linear in
/// the number of edges produced.
pub fn gen_gnp(n: usize, avg_deg: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("gnp needs n >= 1"));
    }
    if !(avg_deg > 0.0 && avg_deg < n as f64) {
        return Err(Error::input(format!(
            "gnp needs 0 < avg_deg < n, got avg_deg={avg_deg} n={n}"
        )));
    }
    let p = avg_deg / n as f64;
    let mut rng = rng(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();

    // walk the lower triangle (v, w) with w < v
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        if skip > (n * n) as f64 {
            break;
        }
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}

/// Uniform `G(n, m)` with `m = round(n * avg_deg / 2)`.
///
/// Pairs are drawn uniformly and rejected when they repeat or form a loop.
/// When more than half of all pairs are requested the complement is sampled.
pub fn gen_gnm(n: usize, avg_deg: f64, seed: u64) -> Result<Graph> {
    if n == 0 || avg_deg < 0.0 || !avg_deg.is_finite() {
        return Err(Error::input(format!(
            "gnm needs n >= 1 and avg_deg >= 0, got n={n} avg_deg={avg_deg}"
        )));
    }
    let m = (n as f64 * avg_deg / 2.0).round() as usize;
    let max_m = n * (n - 1) / 2;
    if m > max_m {
        return Err(Error::input(format!(
            "gnm with n={n} allows at most {max_m} edges, requested {m}"
        )));
    }
    let mut rng = rng(seed);
    let complement = m > max_m / 2;
    let target = if complement { max_m - m } else { m };

    let mut chosen: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(target);
    let mut order = Vec::with_capacity(target);
    while chosen.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let e = ordered(u, v);
        if chosen.insert(e) {
            order.push(e);
        }
    }

    let graph = if complement {
        let mut edges = Vec::with_capacity(m);
        for u in 0..n {
            for v in u + 1..n {
                if !chosen.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges_unchecked(n, edges)
    } else {
        Graph::from_edges_unchecked(n, order)
    };
    debug_assert_eq!(graph.m(), m);
    Ok(graph)
}

/// Watts–Strogatz small-world graph.
///
/// Starts from a ring lattice where each vertex is joined to its `d / 2`
/// nearest vertices on each side, then rewires every lattice edge `(u, v)` to
/// `(u, w)` with probability `p`, `w` uniform. A rewire that would create a
/// loop or a duplicate edge is skipped, so the edge count is always
/// `n * (d / 2)`.
pub fn gen_watts_strogatz(n: usize, d: usize, p: f64, seed: u64) -> Result<Graph> {
    if d < 2 || d >= n {
        return Err(Error::input(format!(
            "watts-strogatz needs n > d >= 2, got n={n} d={d}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "rewiring probability {p} outside [0, 1]"
        )));
    }
    let half = d / 2;
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let mut rng = rng(seed);
    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[u].contains(&v) || rng.gen::<f64>() >= p {
                continue;
            }
            let w = rng.gen_range(0..n);
            if w == u || adj[u].contains(&w) {
                continue;
            }
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges: Vec<_> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    Ok(Graph::from_edges_unchecked(n, edges))
}

/// Uniform-ish random `d`-regular simple graph.
///
/// Stubs are paired at random; pairs that would form a loop or a repeated
/// edge are kept back and re-paired in the next round. If the leftover stubs
/// can no longer be paired the attempt restarts.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if !(n * d).is_multiple_of(2) {
        return Err(Error::input(format!("n*d must be even, got n={n} d={d}")));
    }
    if d >= n && !(d == 0 && n == 0) {
        return Err(Error::input(format!(
            "degree {d} needs more than {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    loop {
        if let Some(edges) = try_regular(n, d, &mut rng) {
            let g = Graph::from_edges_unchecked(n, edges);
            debug_assert!(g.vertices().all(|v| g.degree(v) == d));
            return Ok(g);
        }
    }
}

fn try_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut edges: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * d / 2);
    let mut order = Vec::with_capacity(n * d / 2);
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();

    while !stubs.is_empty() {
        let mut leftover: HashMap<Vertex, usize> = HashMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (s1, s2) = ordered(pair[0], pair[1]);
            if s1 != s2 && edges.insert((s1, s2)) {
                order.push((s1, s2));
            } else {
                *leftover.entry(s1).or_default() += 1;
                *leftover.entry(s2).or_default() += 1;
            }
        }
        if !leftover_pairable(&edges, &leftover) {
            return None;
        }
        let mut keys: Vec<_> = leftover.keys().copied().collect();
        keys.sort_unstable();
        stubs = keys
            .into_iter()
            .flat_map(|v| std::iter::repeat_n(v, leftover[&v]))
            .collect();
    }
    Some(order)
}

/// Whether some pair of leftover stub owners can still be joined.
fn leftover_pairable(edges: &HashSet<(Vertex, Vertex)>, leftover: &HashMap<Vertex, usize>) -> bool {
    if leftover.is_empty() {
        return true;
    }
    let owners: Vec<Vertex> = leftover.keys().copied().collect();
    for (i, &u) in owners.iter().enumerate() {
        for &v in &owners[i + 1..] {
            if !edges.contains(&ordered(u, v)) {
                return true;
            }
        }
    }
    false
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a clique on `attach` vertices. Each further vertex joins
/// `attach` distinct existing vertices, chosen with probability proportional
/// to degree (the first new vertex joins the whole seed clique). The result has
/// `attach * (attach - 1) / 2 + attach * (n - attach)` edges.
pub fn gen_barabasi_albert(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    if attach == 0 || attach >= n {
        return Err(Error::input(format!(
            "barabasi-albert needs 1 <= attach < n, got attach={attach} n={n}"
        )));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(attach * (attach - 1) / 2 + attach * (n - attach));
    // each vertex appears once per incident edge
    let mut repeated: Vec<Vertex> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..attach {
        for v in u + 1..attach {
            edges.push((u, v));
            repeated.push(u);
            repeated.push(v);
        }
    }

    let mut targets: Vec<Vertex> = Vec::with_capacity(attach);
    let mut picked = HashSet::with_capacity(attach);
    for v in attach..n {
        targets.clear();
        picked.clear();
        if v == attach {
            targets.extend(0..attach);
        } else {
            while targets.len() < attach {
                let t = repeated[rng.gen_range(0..repeated.len())];
                if picked.insert(t) {
                    targets.push(t);
                }
            }
        }
        for &t in &targets {
            edges.push((t, v));
            repeated.push(t);
            repeated.push(v);
        }
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}
