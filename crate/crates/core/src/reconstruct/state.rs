use std::collections::HashSet;

use indexmap::IndexSet;

use super::edges::{EdgeEntry, EdgeList, EdgeStatus};
use crate::articulation::articulation_points;
use crate::chaos::trace::{TraceConfig, TraceRecorder};
use crate::graph::Graph;

/// Tunables of the reconstruction engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Reorder sorts by error counter ascending (least-error first) when
    /// true, descending otherwise.
    pub reorder_ascending: bool,
    /// Length of the priority ladder `1, 1/2, 1/4, ...`; the last rung is the
    /// bottom. Must be at least 2.
    pub priority_rungs: u8,
    /// An expansion call gives up after `step_factor * |V|^2` steps.
    pub step_factor: u64,
    pub trace: TraceConfig,
    /// Check every structural invariant after each step and compare each
    /// rollback with a snapshot taken at its checkpoint. Slow; a violation
    /// panics.
    pub audit: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            reorder_ascending: true,
            priority_rungs: 3,
            step_factor: 16,
            trace: TraceConfig::default(),
            audit: false,
        }
    }
}

/// Per-vertex priorities and error counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLabeling {
    /// Cut vertices of the active graph at the last validation.
    pub vh_set: Vec<usize>,
    /// Rung on the priority ladder; rung 0 is priority 1.
    pub rung: Vec<u8>,
    /// `|w|_ε`: errors charged to `w` during the current expansion call.
    pub err: Vec<u32>,
    /// `|w|_ε^T`: errors charged to `w` since the last reset by the policy.
    pub err_total: Vec<u64>,
}

impl VertexLabeling {
    fn new(n: usize) -> Self {
        Self { vh_set: Vec::new(), rung: vec![0; n], err: vec![0; n], err_total: vec![0; n] }
    }

    /// Priority value `2^-rung`.
    pub fn priority(&self, v: usize) -> f64 {
        0.5f64.powi(self.rung[v] as i32)
    }

    /// `v^{x >= 1}`.
    pub fn is_high(&self, v: usize) -> bool {
        self.rung[v] == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub splitable: bool,
    pub pass: bool,
    /// Enforce a cycle in the current expansion calls.
    pub hc: bool,
    /// The run targets a cycle.
    pub hcp: bool,
    pub restricted: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// `R_|vH|`: articulation-point computations.
    pub vh_computations: u64,
    /// `R_ε`: error signals raised.
    pub errors: u64,
    pub expansions: u64,
    /// Select-first commits.
    pub steps: u64,
    /// Invariant checks and rollback comparisons done in audit mode.
    pub audits: u64,
}

/// Longest partial sequence seen so far and the `L_e` that carried it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incumbent {
    pub len: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UndoOp {
    Deactivate(usize),
    Insert(usize),
    Remove(usize, EdgeEntry),
    SetEntry(usize, EdgeEntry),
    PushHead,
    SwapPaths,
    Splitable(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Checkpoint {
    pub mark: usize,
    pub vertex: usize,
    pub tried: Vec<usize>,
    pub remaining: Vec<usize>,
    /// State at `mark`, kept in audit mode only.
    pub snapshot: Option<Box<StateSnapshot>>,
}

/// The restorable part of a [`SolverState`], for round-trip checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSnapshot {
    pub active: Vec<bool>,
    pub le: EdgeList,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    pub flags: Flags,
}

/// Mutable working state of reconstruction.
///
/// Every structural change (activity, `L_e`, paths, `splitable`) goes through
/// the undo log. Error counters and `A`/`C` do not: they are meant to survive
/// a rollback.
#[derive(Debug, Clone)]
pub struct SolverState {
    graph: Graph,
    active: Vec<bool>,
    active_count: usize,
    active_version: u64,
    le: EdgeList,
    base: EdgeList,
    p1: Vec<usize>,
    p2: Vec<usize>,
    pub labeling: VertexLabeling,
    /// Attachment sets accumulated across validations.
    pub a_set: IndexSet<usize>,
    pub c_set: IndexSet<usize>,
    pub flags: Flags,
    log: Vec<UndoOp>,
    pub(crate) checkpoints: Vec<Checkpoint>,
    pub counters: Counters,
    ap_cache: Option<(u64, Vec<usize>)>,
    pub(crate) trace: TraceRecorder,
    pub config: EngineConfig,
    /// How often each vertex started a run (`u_LAST`) in this expansion call.
    pub(crate) run_starts: Vec<u32>,
    /// Longest `|P_x1| + |P_x2|` since the policy last cleared it.
    pub(crate) incumbent: Option<Incumbent>,
    /// Longest over the whole solve.
    pub(crate) best: Option<Incumbent>,
}

impl SolverState {
    pub fn new(graph: &Graph, le: EdgeList, config: EngineConfig) -> Self {
        let n = graph.n();
        assert_eq!(le.vertex_count(), n);
        let mut trace = TraceRecorder::new(config.trace);
        trace.start(&le.pairs());
        let base = le.fresh_copy();
        Self {
            graph: graph.clone(),
            active: vec![true; n],
            active_count: n,
            active_version: 0,
            le: base.clone(),
            base,
            p1: Vec::new(),
            p2: Vec::new(),
            labeling: VertexLabeling::new(n),
            a_set: IndexSet::new(),
            c_set: IndexSet::new(),
            flags: Flags { splitable: true, pass: true, hc: false, hcp: false, restricted: true },
            log: Vec::new(),
            checkpoints: Vec::new(),
            counters: Counters::default(),
            ap_cache: None,
            trace,
            config,
            run_starts: vec![0; n],
            incumbent: None,
            best: None,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn le(&self) -> &EdgeList {
        &self.le
    }

    pub fn base(&self) -> &EdgeList {
        &self.base
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn active_mask(&self) -> &[bool] {
        &self.active
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    /// `d*(v)`.
    pub fn scene_degree(&self, v: usize) -> usize {
        self.le.degree(v)
    }

    pub fn p1(&self) -> &[usize] {
        &self.p1
    }

    pub fn p2(&self) -> &[usize] {
        &self.p2
    }

    /// Endpoint of the path being expanded.
    pub fn x1(&self) -> Option<usize> {
        self.p1.last().copied()
    }

    /// Endpoint of the other path.
    pub fn x2(&self) -> Option<usize> {
        self.p2.last().copied()
    }

    pub fn covered(&self) -> usize {
        self.p1.len() + self.p2.len()
    }

    pub fn trace(&self) -> &TraceRecorder {
        &self.trace
    }

    pub fn incumbent(&self) -> Option<&Incumbent> {
        self.incumbent.as_ref()
    }

    pub fn best(&self) -> Option<&Incumbent> {
        self.best.as_ref()
    }

    /// Vertex `u` can be appended: active, and not one of the two endpoints.
    pub fn is_available(&self, u: usize) -> bool {
        self.active[u] && Some(u) != self.x1() && Some(u) != self.x2()
    }

    // ---- priorities -------------------------------------------------------

    pub fn bottom_rung(&self) -> u8 {
        self.config.priority_rungs.max(2) - 1
    }

    pub fn is_bottom(&self, v: usize) -> bool {
        self.labeling.rung[v] >= self.bottom_rung()
    }

    pub fn any_bottom(&self) -> bool {
        (0..self.n()).any(|v| self.is_bottom(v))
    }

    /// One step down the ladder; saturates at the bottom rung.
    pub fn demote(&mut self, v: usize) {
        let bottom = self.bottom_rung();
        let r = &mut self.labeling.rung[v];
        *r = (*r + 1).min(bottom);
    }

    pub fn reset_priorities(&mut self) {
        self.labeling.rung.iter_mut().for_each(|r| *r = 0);
    }

    // ---- base edge list ---------------------------------------------------

    /// Replaces the `L_e` that every expansion call starts from.
    pub fn set_base(&mut self, le: &EdgeList) {
        self.base = le.fresh_copy();
    }

    /// Resets activity, `L_e`, paths and the undo machinery to the base.
    /// Counters, priorities and `A` persist; `C` is cleared.
    pub fn restore_initial(&mut self) {
        let current: HashSet<(usize, usize)> = self.le.pairs().into_iter().collect();
        let target: HashSet<(usize, usize)> = self.base.pairs().into_iter().collect();
        for e in self.le.pairs() {
            if !target.contains(&e) {
                self.trace.removed(e);
            }
        }
        for e in self.base.pairs() {
            if !current.contains(&e) {
                self.trace.added(e);
            }
        }
        self.le = self.base.clone();
        self.active.iter_mut().for_each(|a| *a = true);
        self.active_count = self.n();
        self.active_version += 1;
        self.p1.clear();
        self.p2.clear();
        self.log.clear();
        self.checkpoints.clear();
        self.c_set.clear();
        self.flags.splitable = true;
        self.run_starts.iter_mut().for_each(|c| *c = 0);
    }

    /// Starts the two paths from the seed edge `(x1, x2)`, committing it.
    /// The seed sits below the undo log.
    pub(crate) fn seed(&mut self, x1: usize, x2: usize) {
        debug_assert!(self.p1.is_empty() && self.p2.is_empty());
        if !self.le.contains(x1, x2) {
            self.le.insert(x1, x2, EdgeStatus::NonSync);
            self.trace.added((x1, x2));
        }
        let slot = self.le.slot_of(x1, x2).unwrap();
        let mut e = *self.le.slot(slot).unwrap();
        e.status = EdgeStatus::Sync;
        e.visited = true;
        self.le.set_entry(slot, e);
        self.p1.push(x1);
        self.p2.push(x2);
        self.log.clear();
        self.trace.commit();
    }

    // ---- logged mutations -------------------------------------------------

    pub(crate) fn deactivate(&mut self, v: usize) {
        if self.active[v] {
            self.active[v] = false;
            self.active_count -= 1;
            self.active_version += 1;
            self.log.push(UndoOp::Deactivate(v));
        }
    }

    pub(crate) fn le_insert(&mut self, u: usize, v: usize) -> usize {
        let slot = self.le.insert(u, v, EdgeStatus::NonSync);
        self.trace.added((u, v));
        self.log.push(UndoOp::Insert(slot));
        slot
    }

    /// Removes a non-synchronized entry. Panics on a synchronized one: those
    /// only leave `L_e` through undo.
    pub(crate) fn le_remove(&mut self, u: usize, v: usize) {
        let (slot, entry) = self.le.remove(u, v).unwrap_or_else(|e| panic!("{e}"));
        self.trace.removed((u, v));
        self.log.push(UndoOp::Remove(slot, entry));
    }

    pub(crate) fn le_sync(&mut self, u: usize, v: usize) {
        let slot = self.le.slot_of(u, v).expect("edge in L_e");
        let old = *self.le.slot(slot).unwrap();
        if old.status == EdgeStatus::Sync && old.visited {
            return;
        }
        self.le.set_entry(slot, EdgeEntry { status: EdgeStatus::Sync, visited: true, ..old });
        self.log.push(UndoOp::SetEntry(slot, old));
    }

    pub(crate) fn push_head(&mut self, u: usize) {
        self.p1.push(u);
        self.log.push(UndoOp::PushHead);
    }

    pub(crate) fn swap_paths(&mut self) {
        std::mem::swap(&mut self.p1, &mut self.p2);
        self.log.push(UndoOp::SwapPaths);
    }

    pub(crate) fn set_splitable(&mut self, value: bool) {
        if self.flags.splitable != value {
            self.log.push(UndoOp::Splitable(self.flags.splitable));
            self.flags.splitable = value;
        }
    }

    // ---- undo -------------------------------------------------------------

    pub fn mark(&self) -> usize {
        self.log.len()
    }

    /// Reverts every logged operation after `mark`, newest first.
    pub fn undo_to(&mut self, mark: usize) {
        assert!(mark <= self.log.len(), "undo past the start of the log");
        while self.log.len() > mark {
            match self.log.pop().unwrap() {
                UndoOp::Deactivate(v) => {
                    self.active[v] = true;
                    self.active_count += 1;
                    self.active_version += 1;
                }
                UndoOp::Insert(slot) => {
                    let e = *self.le.slot(slot).expect("inserted slot is live");
                    self.le.pop_slot(slot);
                    self.trace.removed((e.u, e.v));
                }
                UndoOp::Remove(slot, entry) => {
                    self.le.restore_slot(slot, entry);
                    self.trace.added((entry.u, entry.v));
                }
                UndoOp::SetEntry(slot, old) => self.le.set_entry(slot, old),
                UndoOp::PushHead => {
                    self.p1.pop();
                }
                UndoOp::SwapPaths => std::mem::swap(&mut self.p1, &mut self.p2),
                UndoOp::Splitable(old) => self.flags.splitable = old,
            }
        }
    }

    /// Undoes the `k` most recent logged operations.
    pub fn undo(&mut self, k: usize) {
        assert!(k <= self.log.len(), "undo past the start of the log");
        self.undo_to(self.log.len() - k);
    }

    pub fn snapshot(&self) -> StateSnapshot {
        StateSnapshot {
            active: self.active.clone(),
            le: self.le.clone(),
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            flags: self.flags,
        }
    }

    // ---- cut vertices -----------------------------------------------------

    /// Articulation points of the active graph, recomputed only when the
    /// active set changed since the last call. Each recomputation counts
    /// towards `R_|vH|`.
    pub fn cut_vertices(&mut self) -> Vec<usize> {
        if let Some((version, ref vh)) = self.ap_cache {
            if version == self.active_version {
                return vh.clone();
            }
        }
        let vh = articulation_points(&self.graph, &self.active);
        self.counters.vh_computations += 1;
        self.ap_cache = Some((self.active_version, vh.clone()));
        vh
    }

    // ---- neighborhoods ----------------------------------------------------

    /// Replaces the adjacency order (the edge set must be unchanged).
    pub(crate) fn set_adjacency(&mut self, adjacency: Vec<Vec<usize>>) {
        self.graph = self.graph.with_adjacency(adjacency);
    }

    // ---- incumbents -------------------------------------------------------

    pub(crate) fn note_progress(&mut self) {
        let len = self.covered();
        if self.incumbent.as_ref().is_none_or(|inc| len > inc.len) {
            self.incumbent = Some(Incumbent { len, edges: self.le.pairs() });
        }
        if self.best.as_ref().is_none_or(|inc| len > inc.len) {
            self.best = Some(Incumbent { len, edges: self.le.pairs() });
        }
    }

    pub(crate) fn clear_incumbent(&mut self) -> Option<Incumbent> {
        self.incumbent.take()
    }

    // ---- invariants -------------------------------------------------------

    /// Checks every structural invariant; returns a description of the
    /// first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n();
        let recount = self.le.recount_degrees();
        for (v, &count) in recount.iter().enumerate() {
            if count != self.le.degree(v) {
                return Err(format!("d*({v}) cached {} but recount {count}", self.le.degree(v)));
            }
        }
        if !self.le.sync_degree_ok() {
            return Err("synchronized edges exceed degree 2".into());
        }
        if self.active.iter().filter(|&&a| a).count() != self.active_count {
            return Err("active count out of sync".into());
        }
        let mut on_path = vec![0u8; n];
        for &v in self.p1.iter().chain(&self.p2) {
            on_path[v] += 1;
            if on_path[v] > 1 {
                return Err(format!("vertex {v} appears twice on the path pair"));
            }
        }
        let mut path_edges = HashSet::new();
        for p in [&self.p1, &self.p2] {
            for w in p.windows(2) {
                match self.le.get(w[0], w[1]) {
                    Some(e) if e.status == EdgeStatus::Sync => {
                        path_edges.insert(e.key());
                    }
                    _ => return Err(format!("path edge ({}, {}) is not synchronized", w[0], w[1])),
                }
                if self.active[w[0]] {
                    return Err(format!("interior path vertex {} still active", w[0]));
                }
            }
        }
        if let (Some(&a), Some(&b)) = (self.p1.first(), self.p2.first()) {
            path_edges.insert((a.min(b), a.max(b)));
        }
        if self.covered() == n {
            if let (Some(x1), Some(x2)) = (self.x1(), self.x2()) {
                path_edges.insert((x1.min(x2), x1.max(x2)));
            }
        }
        for e in self.le.iter().filter(|e| e.status == EdgeStatus::Sync) {
            if !path_edges.contains(&e.key()) {
                return Err(format!("synchronized edge ({}, {}) is off the path pair", e.u, e.v));
            }
        }
        Ok(())
    }
}
