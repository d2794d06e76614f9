//! The reconstruction subroutines: candidate generation, selection,
//! reordering, path swapping and splitting, and state validation.

use super::edges::EdgeStatus;
use super::state::SolverState;
use super::Signal;
use crate::articulation::components_minus_vh;

impl SolverState {
    /// Candidate next vertices after `v`, classes S1 (`d* = 1`), S2
    /// (`d* >= 2`) and S0 (`d* = 0`) in that order, each in adjacency order.
    ///
    /// With `pass` the `L_e` part keeps partners of `v`; without it, vertices
    /// holding an `L_e` edge to some other vertex. Only priority-1 vertices
    /// are returned. `None` stands for the missing vertex and raises
    /// [`Signal::Expand`].
    pub fn rec_node(&self, v: Option<usize>, pass: bool) -> Result<Vec<usize>, Signal> {
        let v = v.ok_or(Signal::Expand)?;
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for &u in self.graph().neighbors(v) {
            if !self.is_available(u) || !self.labeling.is_high(u) {
                continue;
            }
            let d = self.scene_degree(u);
            let with_v = self.le().contains(v, u);
            let keep = if pass { with_v } else { d > usize::from(with_v) };
            if keep {
                if d == 1 {
                    s1.push(u);
                } else {
                    s2.push(u);
                }
            }
        }
        let s0 = self
            .graph()
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.is_available(u) && self.labeling.is_high(u) && self.scene_degree(u) == 0);
        s1.extend(s2);
        s1.extend(s0);
        Ok(s1)
    }

    /// Every available neighbor of `v` in engine order: both `rec_node`
    /// passes, then the demoted neighbors as a last resort.
    pub(crate) fn candidates(&self, v: usize) -> Vec<usize> {
        let pass = self.flags.pass;
        let mut out = self.rec_node(Some(v), pass).unwrap_or_default();
        for u in self.rec_node(Some(v), !pass).unwrap_or_default() {
            if !out.contains(&u) {
                out.push(u);
            }
        }
        for &u in self.graph().neighbors(v) {
            if self.is_available(u) && !self.labeling.is_high(u) && !out.contains(&u) {
                out.push(u);
            }
        }
        out
    }

    /// Moves the head from `v` to the first candidate.
    ///
    /// `v` leaves the active set even when there is no candidate. A missing
    /// edge `(v, u)` is inserted after pruning one non-visited entry at each
    /// endpoint whose scene degree exceeds 1. The edge becomes synchronized
    /// and `u` is appended to the head path.
    pub fn select_first(&mut self, v: usize, candidates: &[usize]) -> Option<usize> {
        self.deactivate(v);
        let u = *candidates.first()?;
        if !self.le().contains(v, u) {
            for w in [u, v] {
                if self.scene_degree(w) > 1 {
                    let victim = self
                        .le()
                        .incident(w)
                        .find(|e| !e.visited && e.status == EdgeStatus::NonSync)
                        .map(|e| (e.u, e.v));
                    if let Some((a, b)) = victim {
                        self.le_remove(a, b);
                    }
                }
            }
            self.le_insert(v, u);
        }
        self.le_sync(v, u);
        self.push_head(u);
        self.counters.steps += 1;
        self.trace.commit();
        Some(u)
    }

    /// Available neighbors of `v` ordered by error counter (stable), with the
    /// priority-1 block before the demoted block.
    pub fn reorder(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.graph().neighbors(v).iter().copied().filter(|&u| self.is_available(u)).collect();
        let err = &self.labeling.err;
        if self.config.reorder_ascending {
            s.sort_by_key(|&u| err[u]);
        } else {
            s.sort_by_key(|&u| std::cmp::Reverse(err[u]));
        }
        let (mut high, low): (Vec<usize>, Vec<usize>) = s.into_iter().partition(|&u| self.labeling.is_high(u));
        high.extend(low);
        high
    }

    /// Retires the current head, exchanges the roles of the two paths and
    /// takes the next step from the other end.
    pub fn path_swap(&mut self) -> Option<usize> {
        self.swap_ends();
        let x1 = self.x1()?;
        let cands = self.candidates(x1);
        self.select_first(x1, &cands)
    }

    pub(crate) fn swap_ends(&mut self) {
        assert!(self.flags.splitable, "path swap on a split path pair");
        if let Some(x1) = self.x1() {
            self.deactivate(x1);
        }
        self.swap_paths();
        self.set_splitable(false);
    }

    /// Dead-end handling: decides whether growth may continue from the other
    /// end and, if so, swaps the paths. The caller takes the next step.
    pub fn path_split(&mut self) -> Result<(), Signal> {
        if !self.flags.splitable {
            return Err(Signal::Error);
        }
        if self.flags.hc {
            return Err(Signal::Expand);
        }
        if self.x2().is_none_or(|x2| !self.is_active(x2)) {
            return Err(Signal::Expand);
        }
        let vh = self.cut_vertices();
        let excluded = self.excluded_zone();
        let mut low_dangling = 0;
        for comp in components_minus_vh(self.graph(), self.active_mask(), &vh) {
            if comp.members.iter().any(|&w| excluded[w]) {
                continue;
            }
            match comp.attachments.as_slice() {
                [] => return Err(Signal::Expand),
                [b] if !self.labeling.is_high(*b) => low_dangling += 1,
                _ => {}
            }
        }
        if low_dangling > 1 {
            return Err(Signal::Expand);
        }
        self.swap_ends();
        Ok(())
    }

    /// `N[x1] ∪ N[x2]` restricted to active endpoints.
    fn excluded_zone(&self) -> Vec<bool> {
        let mut zone = vec![false; self.n()];
        for x in [self.x1(), self.x2()].into_iter().flatten() {
            if self.is_active(x) {
                zone[x] = true;
                for &w in self.graph().neighbors(x) {
                    zone[w] = true;
                }
            }
        }
        zone
    }

    /// Checks that the active graph can still be covered from the path ends.
    ///
    /// Components of `H - vH` away from both endpoints are inspected. One with
    /// no cut-vertex attachment can never be reached. One hanging from a
    /// single cut vertex must hold a path end, so at most as many are allowed
    /// as there are free ends. Offending attachments are charged errors and
    /// collected into `C`; a counter passing `|V|` restarts the expansion.
    pub fn valid_state(&mut self, v: usize) -> Result<bool, Signal> {
        debug_assert!(self.is_active(v));
        if self.active_count() <= 2 {
            return Ok(true);
        }
        let vh = self.cut_vertices();
        self.labeling.vh_set.clone_from(&vh);
        let endpoint_cuts: Vec<usize> = [self.x1(), self.x2()]
            .into_iter()
            .flatten()
            .filter(|&x| self.is_active(x) && vh.binary_search(&x).is_ok())
            .collect();
        let end_must_be_free = if self.flags.hc {
            endpoint_cuts
        } else if !self.flags.splitable {
            endpoint_cuts.into_iter().filter(|&x| Some(x) == self.x1()).collect()
        } else {
            Vec::new()
        };
        if !end_must_be_free.is_empty() {
            self.c_set.extend(end_must_be_free);
            return Err(Signal::Error);
        }

        let allowed = if self.flags.hc {
            0
        } else if self.flags.splitable {
            2
        } else {
            1
        };
        let excluded = self.excluded_zone();
        let mut isolated = Vec::new();
        let mut dangling = Vec::new();
        let mut low_seen = 0;
        for comp in components_minus_vh(self.graph(), self.active_mask(), &vh) {
            if comp.members.iter().any(|&w| excluded[w]) {
                continue;
            }
            match comp.attachments.as_slice() {
                [] => isolated.push(comp),
                [b] => {
                    if !self.labeling.is_high(*b) {
                        low_seen += 1;
                        if low_seen > 1 {
                            continue;
                        }
                    }
                    dangling.push(comp);
                }
                _ => {}
            }
        }
        if isolated.is_empty() && dangling.len() <= allowed {
            let c = std::mem::take(&mut self.c_set);
            self.a_set.extend(c);
            return Ok(true);
        }

        let n = self.n() as u32;
        for comp in &dangling {
            let b = comp.attachments[0];
            self.labeling.err[b] += 1;
            self.labeling.err_total[b] += 1;
            if self.labeling.err[b] > n {
                self.labeling.err[b] = 0;
                return Err(Signal::Expand);
            }
            self.c_set.insert(b);
            self.c_set.extend(comp.members.iter().copied());
        }
        for comp in &isolated {
            self.c_set.extend(comp.members.iter().copied());
        }
        if !self.flags.restricted {
            self.c_set = vh.into_iter().collect();
        }
        Err(Signal::Error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{families, Graph};
    use crate::reconstruct::edges::EdgeList;
    use crate::reconstruct::state::EngineConfig;

    fn state(g: &Graph, le: &[(usize, usize)]) -> SolverState {
        SolverState::new(g, EdgeList::from_pairs(g.n(), le.iter().copied()), EngineConfig::default())
    }

    #[test]
    fn missing_vertex_raises_expand() {
        let g = families::path(3);
        let s = state(&g, &[]);
        assert_eq!(s.rec_node(None, true), Err(Signal::Expand));
    }

    #[test]
    fn star_center_with_empty_list_lists_leaves_in_adjacency_order() {
        let g = families::star(3);
        let s = state(&g, &[]);
        assert_eq!(s.rec_node(Some(0), true).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn demoted_partner_is_excluded() {
        let g = families::path(3);
        let mut s = state(&g, &[(0, 1)]);
        s.demote(1);
        assert!(s.rec_node(Some(0), true).unwrap().is_empty());
        assert_eq!(s.candidates(0), vec![1]);
    }

    #[test]
    fn classes_are_ordered() {
        let g = Graph::from_edges("g", 5, [(0, 1), (0, 2), (0, 3), (2, 4), (3, 4)]).unwrap();
        let s = state(&g, &[(0, 2), (2, 4), (0, 3)]);
        // pass: partners of 0 are 2 (d*=2) and 3 (d*=1); S0 is 1
        assert_eq!(s.rec_node(Some(0), true).unwrap(), vec![3, 2, 1]);
        // without pass: only 2 has an entry not involving 0
        assert_eq!(s.rec_node(Some(0), false).unwrap(), vec![2, 1]);
    }

    #[test]
    fn select_first_on_empty_candidates() {
        let g = families::path(3);
        let mut s = state(&g, &[]);
        assert_eq!(s.select_first(0, &[]), None);
        assert!(!s.is_active(0));
    }

    #[test]
    fn select_first_existing_edge_only_marks_it() {
        let g = families::path(4);
        let mut s = state(&g, &[(0, 1), (1, 2), (2, 3)]);
        s.seed(1, 0);
        let before = s.le().pairs();
        assert_eq!(s.select_first(1, &[2]), Some(2));
        assert_eq!(s.le().pairs(), before);
        assert_eq!(s.le().get(1, 2).unwrap().status, EdgeStatus::Sync);
        assert_eq!(s.p1(), &[1, 2]);
    }

    #[test]
    fn select_first_prunes_one_entry_at_a_full_vertex() {
        let g = families::complete(5);
        let mut s = state(&g, &[(0, 1), (2, 3), (3, 4)]);
        s.seed(0, 1);
        assert_eq!(s.scene_degree(3), 2);
        s.select_first(0, &[3]);
        assert!(!s.le().contains(2, 3));
        assert!(s.le().contains(3, 4));
        assert_eq!(s.scene_degree(3), 2);
        assert_eq!(s.le().recount_degrees()[3], s.scene_degree(3));
        s.check_invariants().unwrap();
    }

    #[test]
    fn reorder_cases() {
        let g = families::star(4);
        let mut s = state(&g, &[]);
        assert_eq!(s.reorder(0), vec![1, 2, 3, 4]);
        s.demote(2);
        assert_eq!(s.reorder(0), vec![1, 3, 4, 2]);
        s.labeling.err[4] = 0;
        s.labeling.err[1] = 3;
        s.labeling.err[3] = 1;
        assert_eq!(s.reorder(0), vec![4, 3, 1, 2]);
        for v in 1..=4 {
            s.deactivate(v);
        }
        assert!(s.reorder(0).is_empty());
    }

    #[test]
    fn path_swap_continues_from_the_other_end() {
        let g = families::path(4);
        let mut s = state(&g, &[(0, 1), (1, 2), (2, 3)]);
        s.seed(1, 2);
        assert_eq!(s.path_swap(), Some(3));
        assert_eq!(s.p1(), &[2, 3]);
        assert_eq!(s.p2(), &[1]);
        assert!(!s.flags.splitable);
        assert!(!s.is_active(1));
    }

    #[test]
    fn path_swap_without_candidates() {
        let g = families::path(3);
        let mut s = state(&g, &[(0, 1), (1, 2)]);
        s.seed(1, 2);
        assert_eq!(s.path_swap(), None);
    }

    #[test]
    #[should_panic(expected = "split path pair")]
    fn path_swap_requires_splitable() {
        let g = families::path(4);
        let mut s = state(&g, &[]);
        s.seed(1, 2);
        s.flags.splitable = false;
        s.path_swap();
    }

    #[test]
    fn path_split_in_cycle_mode_expands() {
        let g = families::path(4);
        let mut s = state(&g, &[]);
        s.seed(1, 2);
        s.flags.hc = true;
        assert_eq!(s.path_split(), Err(Signal::Expand));
        s.flags.hc = false;
        s.flags.splitable = false;
        assert_eq!(s.path_split(), Err(Signal::Error));
    }

    #[test]
    fn path_split_with_nothing_cut_off_swaps() {
        let g = families::path(4);
        let mut s = state(&g, &[(0, 1), (1, 2), (2, 3)]);
        s.seed(1, 2);
        s.select_first(1, &[0]);
        s.select_first(0, &[]);
        assert_eq!(s.path_split(), Ok(()));
        assert_eq!(s.x1(), Some(2));
    }

    #[test]
    fn cycle_is_valid_after_any_step() {
        let g = families::cycle(5);
        let mut s = state(&g, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        s.seed(0, 1);
        s.select_first(0, &[4]);
        assert_eq!(s.valid_state(4), Ok(true));
        assert_eq!(s.counters.vh_computations, 1);
        assert_eq!(s.valid_state(4), Ok(true));
        assert_eq!(s.counters.vh_computations, 1, "cached");
    }

    #[test]
    fn cycle_mode_rejects_cut_endpoint() {
        // path 0-1-2-3 plus pendant 4 on 2; seed (1,2): 2 is a cut vertex
        let g = Graph::from_edges("g", 5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let mut s = state(&g, &[]);
        s.seed(1, 2);
        s.flags.hc = true;
        assert_eq!(s.valid_state(1), Err(Signal::Error));
        assert!(s.c_set.contains(&1) && s.c_set.contains(&2));
    }

    #[test]
    fn too_many_hanging_components_charge_the_boundary() {
        // spider with legs 0-1-2, 0-3-4, 0-5-6, 0-7-8; the seed sits on the last leg
        let g =
            Graph::from_edges("spider", 9, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (0, 7), (7, 8)]).unwrap();
        let mut s = state(&g, &[]);
        s.seed(8, 7);
        let err = s.valid_state(8);
        assert_eq!(err, Err(Signal::Error));
        for b in [1, 3, 5] {
            assert_eq!(s.labeling.err[b], 1);
            assert_eq!(s.labeling.err_total[b], 1);
            assert!(s.c_set.contains(&b));
        }
        assert!(s.c_set.contains(&2));
    }

    #[test]
    fn boundary_counter_overflow_resets_and_expands() {
        let g =
            Graph::from_edges("spider", 9, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (0, 7), (7, 8)]).unwrap();
        let mut s = state(&g, &[]);
        s.seed(8, 7);
        s.labeling.err[1] = 9;
        assert_eq!(s.valid_state(8), Err(Signal::Expand));
        assert_eq!(s.labeling.err[1], 0);
    }
}
