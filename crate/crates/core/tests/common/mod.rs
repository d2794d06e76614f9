#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfcm::Graph;

/// Connected graph on `n` vertices: a random spanning tree plus every other
/// pair independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(format!("rand{n}_{seed}"), n, edges).unwrap()
}

/// Components of the active subgraph, by flood fill.
pub fn count_components(g: &Graph, active: &[bool]) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !active[s] || seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if active[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Cut vertices by deletion: `v` is one when removing it raises the
/// component count of the active subgraph.
pub fn brute_cut_vertices(g: &Graph, active: &[bool]) -> Vec<usize> {
    let base = count_components(g, active);
    (0..g.n())
        .filter(|&v| {
            if !active[v] {
                return false;
            }
            let mut a = active.to_vec();
            a[v] = false;
            count_components(g, &a) > base
        })
        .collect()
}
