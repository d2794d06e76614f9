//! One expansion call: grow a path pair from a seed edge until it covers the
//! graph, backtracking through checkpoints on local errors.

use super::state::{Checkpoint, SolverState};
use super::Signal;
use crate::io::{verify_sequence, SequenceKind};

impl SolverState {
    /// Step budget of a single expansion call.
    fn step_limit(&self) -> u64 {
        let n = self.n() as u64;
        (self.config.step_factor * n * n).max(1000)
    }

    /// Reconstructs a Hamiltonian sequence starting from the seed edge `phi`.
    ///
    /// The state is first restored to the base `L_e`. On success every
    /// non-synchronized entry has been dropped from `L_e` and the returned
    /// sequence has been verified against the graph (as a cycle when its ends
    /// are adjacent). [`Signal::Expand`] asks the caller for another seed;
    /// [`Signal::Error`] never escapes.
    pub fn reconstruct(&mut self, phi: (usize, usize)) -> Result<Vec<usize>, Signal> {
        let (x1, x2) = phi;
        assert!(self.graph().has_edge(x1, x2), "seed ({x1}, {x2}) is not an edge");
        self.restore_initial();
        self.counters.expansions += 1;
        self.seed(x1, x2);
        self.note_progress();
        let limit = self.step_limit();
        let mut steps = 0u64;

        loop {
            if self.covered() == self.n() {
                match self.finish() {
                    Ok(seq) => return Ok(seq),
                    Err(Signal::Error) => {
                        self.backtrack()?;
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
            let head = self.x1().ok_or(Signal::Expand)?;
            self.run_starts[head] += 1;
            if self.run_starts[head] as usize >= self.n() {
                return Err(Signal::Expand);
            }
            // one run: extend until the head reaches a vertex with d* = 1
            // or a backtrack resumes somewhere else
            loop {
                steps += 1;
                if steps > limit {
                    return Err(Signal::Expand);
                }
                let outcome = self.step();
                if self.config.audit {
                    if let Err(msg) = self.check_invariants() {
                        panic!("invariant violated after step {}: {msg}", self.counters.steps);
                    }
                    self.counters.audits += 1;
                }
                match outcome {
                    Ok(u) => {
                        self.note_progress();
                        if self.covered() == self.n() || self.scene_degree(u) == 1 {
                            break;
                        }
                    }
                    Err(Signal::Error) => {
                        self.backtrack()?;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }

    /// Extends the head by one vertex, splitting at a dead end.
    fn step(&mut self) -> Result<usize, Signal> {
        let v = self.x1().ok_or(Signal::Expand)?;
        if let Some(u) = self.advance(v)? {
            return Ok(u);
        }
        self.select_first(v, &[]);
        self.path_split()?;
        let w = self.x1().ok_or(Signal::Expand)?;
        self.advance(w)?.ok_or(Signal::Error)
    }

    /// Checkpoints, moves to the first candidate and validates. `None` when
    /// there is no candidate.
    fn advance(&mut self, v: usize) -> Result<Option<usize>, Signal> {
        let cands = self.candidates(v);
        let Some((&first, rest)) = cands.split_first() else {
            return Ok(None);
        };
        let mark = self.mark();
        let snapshot = self.config.audit.then(|| Box::new(self.snapshot()));
        self.checkpoints.push(Checkpoint { mark, vertex: v, tried: vec![first], remaining: rest.to_vec(), snapshot });
        let u = self.select_first(v, &[first]).expect("candidate present");
        self.valid_state(u)?;
        Ok(Some(u))
    }

    /// Handles a local error: unwinds checkpoints until one whose untried
    /// alternatives touch `C` (or the bottom one) and resumes from it with
    /// the alternatives reordered.
    fn backtrack(&mut self) -> Result<(), Signal> {
        self.counters.errors += 1;
        loop {
            let depth = self.checkpoints.len();
            let Some(cp) = self.checkpoints.last() else {
                return Err(Signal::Expand);
            };
            let related = self.c_set.is_empty()
                || cp.remaining.iter().any(|&w| {
                    self.c_set.contains(&w) || self.graph().neighbors(w).iter().any(|x| self.c_set.contains(x))
                });
            if cp.remaining.is_empty() || (!related && depth > 1) {
                self.checkpoints.pop();
                continue;
            }
            let (mark, v) = (cp.mark, cp.vertex);
            self.undo_to(mark);
            if self.config.audit {
                let cp = self.checkpoints.last().unwrap();
                if let Some(snap) = &cp.snapshot {
                    assert!(**snap == self.snapshot(), "rollback to checkpoint at {mark} is not exact");
                    self.counters.audits += 1;
                }
            }
            let remaining = std::mem::take(&mut self.checkpoints.last_mut().unwrap().remaining);
            let mut order: Vec<usize> = self.reorder(v).into_iter().filter(|u| remaining.contains(u)).collect();
            let rest: Vec<usize> = remaining.iter().copied().filter(|u| !order.contains(u)).collect();
            order.extend(rest);
            let u = order[0];
            {
                let cp = self.checkpoints.last_mut().unwrap();
                cp.tried.push(u);
                cp.remaining = order[1..].to_vec();
            }
            self.select_first(v, &[u]);
            match self.valid_state(u) {
                Ok(_) => {
                    self.note_progress();
                    return Ok(());
                }
                Err(Signal::Error) => {
                    self.counters.errors += 1;
                    continue;
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// Closes the sequence once every vertex is on the path pair.
    fn finish(&mut self) -> Result<Vec<usize>, Signal> {
        let (x1, x2) = (self.x1().unwrap(), self.x2().unwrap());
        let closes = self.n() >= 3 && self.graph().has_edge(x1, x2);
        if self.flags.hc && !closes {
            return Err(Signal::Error);
        }
        let mut seq: Vec<usize> = self.p2().iter().rev().copied().collect();
        seq.extend_from_slice(self.p1());
        if closes {
            if !self.le().contains(x1, x2) {
                self.le_insert(x1, x2);
            }
            self.le_sync(x1, x2);
        }
        let loose: Vec<(usize, usize)> =
            self.le().iter().filter(|e| e.status != super::EdgeStatus::Sync).map(|e| (e.u, e.v)).collect();
        for (u, v) in loose {
            self.le_remove(u, v);
        }
        self.trace.commit_final();
        let kind = if closes { SequenceKind::Cycle } else { SequenceKind::Path };
        assert!(verify_sequence(self.graph(), &seq, kind), "engine produced an invalid sequence");
        self.note_progress();
        Ok(seq)
    }
}
