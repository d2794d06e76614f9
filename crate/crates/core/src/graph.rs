//! Immutable undirected graph with contiguous `0..n` vertex ids.

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Undirected simple graph stored as per-vertex neighbor lists.
///
/// Neighbor order is the insertion order of the edges, which keeps
/// every traversal of the solver reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are dropped; self-loops and out-of-range ids are errors.
    pub fn from_edges(
        name: impl Into<String>,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if seen.insert((u.min(v), u.max(v))) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        Ok(Self { name: name.into(), adjacency, edge_count: seen.len() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        // scan the shorter list; degrees are small on the graphs we target
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].contains(&b)
    }

    /// Edges as `(u, v)` with `u < v`, in first-seen order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Returns a copy whose neighbor lists have been replaced by `adjacency`.
    /// The caller guarantees that each list is a permutation of the original.
    pub(crate) fn with_adjacency(&self, adjacency: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(adjacency.len(), self.n());
        Self { name: self.name.clone(), adjacency, edge_count: self.edge_count }
    }
}

/// Small named graphs used throughout the tests and examples.
pub mod families {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(format!("P{n}"), n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(format!("C{n}"), n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(format!("K{n}"), n, edges).unwrap()
    }

    /// `K_{1,k}` with the center at vertex 0.
    pub fn star(k: usize) -> Graph {
        Graph::from_edges(format!("K1,{k}"), k + 1, (1..=k).map(|i| (0, i))).unwrap()
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges("petersen", 10, edges).unwrap()
    }

    /// Random cubic graph with a planted Hamiltonian cycle: a cycle through
    /// all `n` vertices (in shuffled order) plus a random perfect matching of
    /// chords. Returns the graph and the planted cycle. `n` must be even and
    /// at least 6.
    pub fn planted_cubic(n: usize, seed: u64) -> (Graph, Vec<usize>) {
        assert!(n.is_multiple_of(2) && n >= 6, "planted_cubic needs an even n >= 6");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        loop {
            // positions on the cycle; chords must not join cycle neighbors
            let mut free: Vec<usize> = (0..n).collect();
            let mut chords = Vec::with_capacity(n / 2);
            while !free.is_empty() {
                let a = free.swap_remove(rng.random_range(0..free.len()));
                let ok: Vec<usize> =
                    (0..free.len()).filter(|&i| (a + 1) % n != free[i] && (free[i] + 1) % n != a).collect();
                let Some(&pick) = ok.get(rng.random_range(0..ok.len().max(1))) else {
                    break;
                };
                chords.push((a, free.swap_remove(pick)));
            }
            if chords.len() < n / 2 {
                continue;
            }
            let edges = (0..n).map(|i| (i, (i + 1) % n)).chain(chords).map(|(a, b)| (order[a], order[b]));
            let g = Graph::from_edges(format!("cubic{n}_{seed}"), n, edges).unwrap();
            return (g, order);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_cubic_is_cubic_with_its_cycle() {
        for seed in 0..10 {
            let (g, cycle) = families::planted_cubic(20, seed);
            assert_eq!(g.edge_count(), 30);
            assert!((0..20).all(|v| g.degree(v) == 3));
            assert!(crate::io::verify_sequence(&g, &cycle, crate::io::SequenceKind::Cycle));
        }
        assert_eq!(families::planted_cubic(66, 3).0, families::planted_cubic(66, 3).0);
    }

    #[test]
    fn duplicate_edges_are_merged() {
        let g = Graph::from_edges("g", 3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_self_loops_and_range() {
        assert_eq!(Graph::from_edges("g", 2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges("g", 2, [(0, 2)]), Err(GraphError::OutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn petersen_is_cubic() {
        let g = families::petersen();
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_connected());
    }
}
