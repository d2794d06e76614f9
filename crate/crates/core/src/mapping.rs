//! Initial candidate edge list: a vertex-disjoint union of paths that the
//! reconstruction engine starts from.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::reconstruct::EdgeList;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MappingError {
    #[error("graph is disconnected, no Hamiltonian sequence exists")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("cost of an empty error vector")]
    EmptyCost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingOutcome {
    /// Non-synchronized entries forming paths.
    pub le: EdgeList,
    /// `M_|vH|`: articulation-point computations.
    pub m_vh: u64,
    /// `M_ε`: failed extension attempts.
    pub m_err: u64,
}

pub trait MappingStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn map(&self, graph: &Graph, seed: u64) -> Result<MappingOutcome, MappingError>;
}

fn check(graph: &Graph) -> Result<(), MappingError> {
    if graph.n() == 0 {
        return Err(MappingError::Empty);
    }
    if !graph.is_connected() {
        return Err(MappingError::Disconnected);
    }
    Ok(())
}

/// Randomized path extension with rotations.
///
/// A path is grown at both ends, preferring the unvisited neighbor with the
/// fewest unvisited neighbors of its own. When both ends are stuck, a
/// rotation through an edge from the end to an interior vertex produces a
/// new end. Each stuck end is charged an error; once the rotations stop
/// paying off the search restarts from the vertex with the highest error.
/// Uncovered vertices left by the best path are covered greedily by extra
/// paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationDfs {
    /// Total extension/rotation moves over all restarts, as a multiple of `|V|`.
    pub budget_factor: usize,
    /// Rotations without progress before a restart.
    pub patience: usize,
}

impl Default for RotationDfs {
    fn default() -> Self {
        Self { budget_factor: 64, patience: 32 }
    }
}

/// Greedy path cover, no rotations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Greedy;

impl MappingStrategy for Greedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn map(&self, graph: &Graph, seed: u64) -> Result<MappingOutcome, MappingError> {
        check(graph)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut used = vec![false; graph.n()];
        let mut le = EdgeList::new(graph.n());
        let m_err = cover_rest(graph, &mut used, &mut le, &mut rng);
        Ok(MappingOutcome { le, m_vh: 0, m_err })
    }
}

/// Unvisited neighbor of `v` with the fewest unvisited neighbors; ties broken
/// at random.
fn best_next(graph: &Graph, used: &[bool], v: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut best_deg = usize::MAX;
    for &u in graph.neighbors(v) {
        if used[u] {
            continue;
        }
        let d = graph.neighbors(u).iter().filter(|&&w| !used[w]).count();
        if d < best_deg {
            best_deg = d;
            best.clear();
        }
        if d == best_deg {
            best.push(u);
        }
    }
    best.choose(rng).copied()
}

/// Covers every unused vertex with greedy paths, inserting their edges.
/// Returns the number of dead ends met.
fn cover_rest(graph: &Graph, used: &mut [bool], le: &mut EdgeList, rng: &mut ChaCha8Rng) -> u64 {
    let mut errors = 0;
    loop {
        let start = (0..graph.n())
            .filter(|&v| !used[v])
            .min_by_key(|&v| graph.neighbors(v).iter().filter(|&&w| !used[w]).count());
        let Some(start) = start else { break };
        used[start] = true;
        let mut path = vec![start];
        for _ in 0..2 {
            while let Some(u) = best_next(graph, used, *path.last().unwrap(), rng) {
                used[u] = true;
                path.push(u);
            }
            errors += 1;
            path.reverse();
        }
        for w in path.windows(2) {
            le.insert(w[0], w[1], crate::reconstruct::EdgeStatus::NonSync);
        }
    }
    errors
}

impl MappingStrategy for RotationDfs {
    fn name(&self) -> &'static str {
        "rotation"
    }

    fn map(&self, graph: &Graph, seed: u64) -> Result<MappingOutcome, MappingError> {
        check(graph)?;
        let n = graph.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut err = vec![0u64; n];
        let mut m_err = 0u64;
        let mut best: Vec<usize> = Vec::new();
        let mut budget = self.budget_factor.max(1) * n;
        let mut start = rng.random_range(0..n);

        while budget > 0 && best.len() < n {
            let mut used = vec![false; n];
            let mut path = vec![start];
            used[start] = true;
            let mut stale = 0;
            while budget > 0 && path.len() < n && stale < self.patience {
                budget -= 1;
                if let Some(u) = best_next(graph, &used, *path.last().unwrap(), &mut rng) {
                    used[u] = true;
                    path.push(u);
                    stale = 0;
                    continue;
                }
                err[*path.last().unwrap()] += 1;
                m_err += 1;
                path.reverse();
                if let Some(u) = best_next(graph, &used, *path.last().unwrap(), &mut rng) {
                    used[u] = true;
                    path.push(u);
                    stale = 0;
                    continue;
                }
                err[*path.last().unwrap()] += 1;
                m_err += 1;
                // rotation: end z adjacent to path[i] turns path[i+1..] around
                let z = *path.last().unwrap();
                let mut pos = vec![usize::MAX; n];
                for (i, &w) in path.iter().enumerate() {
                    pos[w] = i;
                }
                let pivots: Vec<usize> = graph
                    .neighbors(z)
                    .iter()
                    .map(|&y| pos[y])
                    .filter(|&i| i != usize::MAX && i + 2 < path.len())
                    .collect();
                let extendable: Vec<usize> = pivots
                    .iter()
                    .copied()
                    .filter(|&i| graph.neighbors(path[i + 1]).iter().any(|&w| !used[w]))
                    .collect();
                let choice = extendable.choose(&mut rng).or_else(|| pivots.choose(&mut rng));
                match choice {
                    Some(&i) => {
                        path[i + 1..].reverse();
                        stale += 1;
                    }
                    None => break,
                }
            }
            if path.len() > best.len() {
                best = path;
            }
            // restart from the most troublesome vertex, lowest id on ties
            let max = *err.iter().max().unwrap();
            start = (0..n).find(|&v| err[v] == max).unwrap();
            err[start] = 0;
        }

        let mut le = EdgeList::new(n);
        let mut used = vec![false; n];
        for &v in &best {
            used[v] = true;
        }
        for w in best.windows(2) {
            le.insert(w[0], w[1], crate::reconstruct::EdgeStatus::NonSync);
        }
        m_err += cover_rest(graph, &mut used, &mut le, &mut rng);
        Ok(MappingOutcome { le, m_vh: 0, m_err })
    }
}

/// Strategy by name, as accepted on the command line.
pub fn strategy_by_name(name: &str) -> Option<Box<dyn MappingStrategy>> {
    match name {
        "rotation" => Some(Box::new(RotationDfs::default())),
        "greedy" => Some(Box::new(Greedy)),
        _ => None,
    }
}

/// Normalized spread of error values,
/// `sum(e_i - min) / ((max - min) * (count - 1))`, in `[0, 1]`.
/// Zero for a single value or when all values agree.
pub fn cost_k(values: &[f64]) -> Result<f64, MappingError> {
    if values.is_empty() {
        return Err(MappingError::EmptyCost);
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if values.len() == 1 || max == min {
        return Ok(0.0);
    }
    let s: f64 = values.iter().map(|e| e - min).sum();
    Ok(s / ((max - min) * (values.len() - 1) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn max_degree(le: &EdgeList) -> usize {
        (0..le.vertex_count()).map(|v| le.degree(v)).max().unwrap_or(0)
    }

    #[test]
    fn path_graph_maps_to_itself() {
        let g = families::path(5);
        for seed in 0..8 {
            let out = RotationDfs::default().map(&g, seed).unwrap();
            let mut pairs = out.le.pairs();
            pairs.sort_unstable();
            assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        }
    }

    #[test]
    fn cycle_maps_to_a_spanning_path() {
        let g = families::cycle(6);
        let out = RotationDfs::default().map(&g, 3).unwrap();
        assert_eq!(out.le.len(), 5);
        assert!(max_degree(&out.le) <= 2);
        assert!(out.le.pairs().iter().all(|&(u, v)| g.has_edge(u, v)));
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edges("two", 4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(RotationDfs::default().map(&g, 0), Err(MappingError::Disconnected));
        assert_eq!(Greedy.map(&g, 0), Err(MappingError::Disconnected));
    }

    #[test]
    fn same_seed_same_output() {
        let g = families::petersen();
        let a = RotationDfs::default().map(&g, 11).unwrap();
        let b = RotationDfs::default().map(&g, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn greedy_covers_with_paths() {
        let g = families::star(4);
        let out = Greedy.map(&g, 0).unwrap();
        assert!(max_degree(&out.le) <= 2);
        assert!(out.le.len() >= 2);
    }

    #[test]
    fn cost_cases() {
        assert_eq!(cost_k(&[]), Err(MappingError::EmptyCost));
        assert_eq!(cost_k(&[3.0]).unwrap(), 0.0);
        assert_eq!(cost_k(&[2.0, 2.0, 2.0]).unwrap(), 0.0);
        assert_eq!(cost_k(&[0.0, 66.0]).unwrap(), 1.0);
        let k = cost_k(&[0.0, 1.0, 4.0]).unwrap();
        assert!((k - 5.0 / 8.0).abs() < 1e-12);
    }
}
