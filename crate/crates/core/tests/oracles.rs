//! Cross-checks against slow, independent reference implementations.

use std::cmp::Reverse;
use std::time::Duration;

use lossy_ds::generators::{gen_gnm, gen_gnp};
use lossy_ds::reductions::second_neighborhood_sizes;
use lossy_ds::{brute_force_min, exact_min, rr_lossy2, verify_psi, Graph, RbInstance, Vertex};

fn closed(g: &Graph, v: Vertex) -> Vec<Vertex> {
    g.closed_neighborhood(v)
}

fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Quadratic re-implementation of the greedy lossy rule straight from its
/// description: everything is recomputed from scratch every round.
fn naive_lossy(g: &Graph, blue_start: &[bool]) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    let mut blue = blue_start.to_vec();
    let scd: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&u| g.neighbors(u).len()).sum())
        .collect();
    let mut dropped = vec![false; n];
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    loop {
        let images: Vec<Vertex> = pairs.iter().map(|&(_, z)| z).collect();
        let x = (0..n)
            .filter(|&x| blue[x] && !dropped[x])
            .filter(|&x| images.iter().all(|&z| !closed(g, z).contains(&x)))
            .max_by_key(|&x| {
                let blue_nb = g.neighbors(x).iter().filter(|&&u| blue[u]).count();
                (blue_nb, Reverse(x))
            });
        let Some(x) = x else { break };
        let z = (0..n)
            .filter(|&z| blue[z] && !closed(g, x).contains(&z))
            .filter(|&z| {
                images
                    .iter()
                    .all(|&w| disjoint(&closed(g, z), &closed(g, w)))
            })
            .min_by_key(|&z| (scd[z], z));
        match z {
            None => dropped[x] = true,
            Some(z) => {
                pairs.push((x, z));
                for w in closed(g, x) {
                    blue[w] = false;
                }
            }
        }
    }
    pairs
}

fn random_graphs(count: u64, max_n: usize) -> impl Iterator<Item = (u64, Graph)> {
    (0..count).map(move |seed| {
        let n = 2 + (seed as usize * 7) % (max_n - 1);
        let avg = 1.0 + (seed % 5) as f64 * 0.8;
        let g = if seed % 2 == 0 {
            gen_gnp(n, avg.min(n as f64 - 0.5), seed).unwrap()
        } else {
            gen_gnm(n, avg.min((n - 1) as f64), seed).unwrap()
        };
        (seed, g)
    })
}

#[test]
fn scd_nbr_matches_definition() {
    for (_, g) in random_graphs(30, 40) {
        let direct: Vec<usize> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().map(|&u| g.degree(u)).sum())
            .collect();
        assert_eq!(second_neighborhood_sizes(&g), direct);
    }
}

#[test]
fn lossy_rule_matches_naive_reference() {
    for (seed, g) in random_graphs(300, 60) {
        // alternate all-blue starts with partially red ones
        let blue: Vec<bool> = (0..g.n())
            .map(|v| seed % 3 != 0 || !(v * 31 + seed as usize).is_multiple_of(4))
            .collect();
        let mut inst = RbInstance::with_blue(&g, (0..g.n()).filter(|&v| blue[v]));
        let before = inst.clone();
        let expected = naive_lossy(&g, &blue);
        let got = rr_lossy2(&mut inst)
            .map(|r| r.psi.unwrap().pairs)
            .unwrap_or_default();
        assert_eq!(got, expected, "seed {seed}");
        let psi = lossy_ds::PsiMap { pairs: got };
        assert!(verify_psi(&before, &psi), "seed {seed}");
    }
}

#[test]
fn p7_trace_confirmed_by_reference() {
    let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
    assert_eq!(naive_lossy(&g, &[true; 7]), vec![(1, 6)]);
    let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert_eq!(naive_lossy(&c4, &[true; 4]), vec![(0, 2)]);
}

#[test]
fn exact_matches_brute_force_on_small_graphs() {
    for (seed, g) in random_graphs(150, 16) {
        let inst = RbInstance::all_blue(&g);
        let brute = brute_force_min(&inst).unwrap();
        let res = exact_min(&inst, Duration::from_secs(5));
        assert!(res.proven_optimal, "seed {seed}");
        assert_eq!(res.solution.len(), brute.len(), "seed {seed}");
        assert!(inst.is_valid_solution(&res.solution));
        assert_eq!(res.lower_bound, res.solution.len());
    }
}

#[test]
fn exact_handles_red_vertices() {
    for (seed, g) in random_graphs(60, 16) {
        let inst = RbInstance::with_blue(
            &g,
            (0..g.n()).filter(|v| !(v + seed as usize).is_multiple_of(3)),
        );
        let brute = brute_force_min(&inst).unwrap();
        let res = exact_min(&inst, Duration::from_secs(5));
        assert!(res.proven_optimal);
        assert_eq!(res.solution.len(), brute.len(), "seed {seed}");
        assert!(inst.is_valid_solution(&res.solution));
    }
}

#[test]
fn brute_force_domination_numbers() {
    // paths: ceil(n / 3); cycles: ceil(n / 3)
    for n in 1..=12 {
        let p: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::from_edges(n, &p).unwrap();
        assert_eq!(
            brute_force_min(&RbInstance::all_blue(&g)).unwrap().len(),
            n.div_ceil(3)
        );
    }
    for n in 3..=12 {
        let c: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(n, &c).unwrap();
        assert_eq!(
            brute_force_min(&RbInstance::all_blue(&g)).unwrap().len(),
            n.div_ceil(3)
        );
    }
}

#[test]
fn gnm_hits_exact_edge_count() {
    // n = 1643, m = 9857
    let g = gen_gnm(1643, 2.0 * 9857.0 / 1643.0, 1).unwrap();
    assert_eq!((g.n(), g.m()), (1643, 9857));
    let avg = g.avg_degree().unwrap();
    assert!((avg - 11.99878).abs() < 1e-4, "{avg}");
}
