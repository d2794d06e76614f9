//! Cut vertices of an induced subgraph and the decomposition of the
//! subgraph once those cut vertices are taken out.
//!
//! Everything here works on an activity mask over a fixed [`Graph`], which is
//! how the solver represents `H - v` without touching the adjacency lists.

use crate::graph::Graph;

/// Articulation points of the subgraph induced by `active`, in ascending id
/// order. The induced subgraph may be disconnected; each component is handled
/// independently.
///
/// Iterative lowpoint DFS, `O(V + E)`.
pub fn articulation_points(graph: &Graph, active: &[bool]) -> Vec<usize> {
    let n = graph.n();
    debug_assert_eq!(active.len(), n);
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if !active[root] || disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, UNSEEN, 0));

        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            let nbrs = graph.neighbors(v);
            if idx < nbrs.len() {
                frame.2 += 1;
                let w = nbrs[idx];
                if !active[w] || w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }

    (0..n).filter(|&v| is_cut[v]).collect()
}

/// One connected component of `H[active - vh]` together with its
/// `|H^n|` bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    /// Member vertices in discovery order (ascending id of the first member,
    /// BFS order after that).
    pub members: Vec<usize>,
    /// `alpha`: number of distinct cut vertices reached through members that
    /// have exactly one cut-vertex neighbor.
    pub hn_value: usize,
    /// `beta`: the cut vertices counted by `hn_value`, ascending.
    pub hn_boundary: Vec<usize>,
    /// Every cut vertex adjacent to any member, ascending. Superset of
    /// `hn_boundary`; members with two or more cut-vertex neighbors only
    /// show up here.
    pub attachments: Vec<usize>,
}

impl ComponentInfo {
    /// `|H^n| = 0`: the rule flags the component as cut off.
    pub fn is_detached(&self) -> bool {
        self.hn_value == 0
    }
}

/// Partitions `active \ vh` into connected components (edges between two
/// non-cut vertices only) and evaluates the `|H^n|` property of each.
pub fn components_minus_vh(graph: &Graph, active: &[bool], vh: &[usize]) -> Vec<ComponentInfo> {
    let n = graph.n();
    let mut in_vh = vec![false; n];
    for &c in vh {
        debug_assert!(active[c], "cut vertex {c} must be active");
        in_vh[c] = true;
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    let mut queue = Vec::new();

    for start in 0..n {
        if !active[start] || in_vh[start] || comp_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp_of[start] = id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        let mut boundary = Vec::new();
        let mut attachments = Vec::new();
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            let mut cut_nbrs = 0;
            let mut last_cut = usize::MAX;
            for &x in graph.neighbors(w) {
                if !active[x] {
                    continue;
                }
                if in_vh[x] {
                    cut_nbrs += 1;
                    last_cut = x;
                    attachments.push(x);
                } else if comp_of[x] == usize::MAX {
                    comp_of[x] = id;
                    queue.push(x);
                }
            }
            if cut_nbrs == 1 {
                boundary.push(last_cut);
            }
        }
        boundary.sort_unstable();
        boundary.dedup();
        attachments.sort_unstable();
        attachments.dedup();
        out.push(ComponentInfo {
            members: queue.clone(),
            hn_value: boundary.len(),
            hn_boundary: boundary,
            attachments,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn all(g: &Graph) -> Vec<bool> {
        vec![true; g.n()]
    }

    #[test]
    fn path_middle_is_the_cut_vertex() {
        let g = families::path(3);
        assert_eq!(articulation_points(&g, &all(&g)), vec![1]);
    }

    #[test]
    fn triangle_has_none() {
        let g = families::complete(3);
        assert!(articulation_points(&g, &all(&g)).is_empty());
    }

    #[test]
    fn empty_active_set() {
        let g = families::cycle(5);
        assert!(articulation_points(&g, &[false; 5]).is_empty());
        assert!(components_minus_vh(&g, &[false; 5], &[]).is_empty());
    }

    #[test]
    fn respects_the_mask() {
        // removing vertex 0 from C5 leaves the path 1-2-3-4
        let g = families::cycle(5);
        let mut active = all(&g);
        active[0] = false;
        assert_eq!(articulation_points(&g, &active), vec![2, 3]);
    }

    #[test]
    fn star_components_each_see_the_center() {
        let g = families::star(3);
        let comps = components_minus_vh(&g, &all(&g), &[0]);
        assert_eq!(comps.len(), 3);
        for (i, c) in comps.iter().enumerate() {
            assert_eq!(c.members, vec![i + 1]);
            assert_eq!(c.hn_value, 1);
            assert_eq!(c.hn_boundary, vec![0]);
        }
    }

    #[test]
    fn connected_graph_without_cut_vertices() {
        let g = families::cycle(6);
        let comps = components_minus_vh(&g, &all(&g), &[]);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].members.len(), 6);
        assert_eq!(comps[0].hn_value, 0);
        assert!(comps[0].is_detached());
    }

    #[test]
    fn bowtie_splits_into_two_triangles_halves() {
        // triangles {0,1,2} and {2,3,4} sharing cut vertex 2
        let g = Graph::from_edges("bowtie", 5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let vh = articulation_points(&g, &all(&g));
        assert_eq!(vh, vec![2]);
        let comps = components_minus_vh(&g, &all(&g), &vh);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].members, vec![0, 1]);
        assert_eq!(comps[1].members, vec![3, 4]);
        for c in &comps {
            assert_eq!(c.hn_value, 1);
            assert_eq!(c.hn_boundary, vec![2]);
        }
    }

    #[test]
    fn member_between_two_cut_vertices_is_not_in_z() {
        // path 0-1-2-3-4 with vh = {1, 3}: vertex 2 touches two cut vertices,
        // so alpha is 0 although the component is attached on both sides
        let g = Graph::from_edges("g", 5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let vh = vec![1, 3];
        let comps = components_minus_vh(&g, &all(&g), &vh);
        let middle = comps.iter().find(|c| c.members == vec![2]).unwrap();
        assert_eq!(middle.hn_value, 0);
        assert_eq!(middle.attachments, vec![1, 3]);
    }
}
