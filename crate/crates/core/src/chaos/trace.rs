//! Recording of the `L_e` trajectory and its reduction to the similarity
//! signal `x_t = 1 - |L_e(t) ∩ L_e*| / |L_e*|`, where `L_e*` is the edge set
//! of the final (or best) solution.

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("reference edge set is empty")]
    EmptyReference,
}

/// Recording granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceConfig {
    pub enabled: bool,
    /// Keep one frame every `decimation` commits.
    pub decimation: usize,
    /// When the frame count reaches this bound, adjacent frames are merged
    /// pairwise and the decimation doubles.
    pub max_frames: usize,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self { enabled: true, decimation: 1, max_frames: 1 << 20 }
    }
}

/// Ordered edge deltas; `true` is an insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Frame {
    ops: Vec<((usize, usize), bool)>,
}

/// Delta-encoded sequence of `L_e` snapshots, one per select commit.
#[derive(Debug, Clone)]
pub struct TraceRecorder {
    config: TraceConfig,
    initial: Vec<(usize, usize)>,
    frames: Vec<Frame>,
    pending: Frame,
    commits: u64,
    decimation: usize,
    /// Frame index at which each policy round started.
    round_marks: Vec<usize>,
}

fn norm((u, v): (usize, usize)) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl TraceRecorder {
    pub fn new(config: TraceConfig) -> Self {
        Self {
            config,
            initial: Vec::new(),
            frames: Vec::new(),
            pending: Frame::default(),
            commits: 0,
            decimation: config.decimation.max(1),
            round_marks: Vec::new(),
        }
    }

    pub fn disabled() -> Self {
        Self::new(TraceConfig { enabled: false, ..TraceConfig::default() })
    }

    pub fn is_enabled(&self) -> bool {
        self.config.enabled
    }

    /// Sets the starting edge set (mapping output). Clears any frames.
    pub fn start(&mut self, initial: &[(usize, usize)]) {
        self.initial = initial.iter().copied().map(norm).collect();
        self.frames.clear();
        self.pending = Frame::default();
        self.round_marks.clear();
        self.commits = 0;
        self.decimation = self.config.decimation.max(1);
    }

    pub fn added(&mut self, edge: (usize, usize)) {
        if self.config.enabled {
            self.pending.ops.push((norm(edge), true));
        }
    }

    pub fn removed(&mut self, edge: (usize, usize)) {
        if self.config.enabled {
            self.pending.ops.push((norm(edge), false));
        }
    }

    /// Closes the current snapshot. Returns true when a frame was stored.
    pub fn commit(&mut self) -> bool {
        if !self.config.enabled {
            return false;
        }
        self.commits += 1;
        if !self.commits.is_multiple_of(self.decimation as u64) {
            return false;
        }
        self.push_pending();
        true
    }

    /// Stores the current snapshot regardless of decimation.
    pub fn commit_final(&mut self) {
        if self.config.enabled {
            self.commits += 1;
            self.push_pending();
        }
    }

    fn push_pending(&mut self) {
        let frame = std::mem::take(&mut self.pending);
        self.frames.push(frame);
        if self.frames.len() >= self.config.max_frames.max(2) {
            self.compact();
        }
    }

    fn compact(&mut self) {
        let old = std::mem::take(&mut self.frames);
        let mut it = old.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                a.ops.extend(b.ops);
            }
            self.frames.push(a);
        }
        for m in &mut self.round_marks {
            *m /= 2;
        }
        self.decimation *= 2;
    }

    pub fn mark_round(&mut self) {
        if self.config.enabled {
            self.round_marks.push(self.frames.len());
        }
    }

    pub fn round_marks(&self) -> &[usize] {
        &self.round_marks
    }

    /// Number of stored snapshots.
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn commits(&self) -> u64 {
        self.commits
    }

    pub fn decimation(&self) -> usize {
        self.decimation
    }

    /// Replays the deltas and reduces every snapshot against `reference`.
    pub fn finalize(&self, reference: &[(usize, usize)]) -> Result<TraceSeries, TraceError> {
        let target: HashSet<(usize, usize)> = reference.iter().copied().map(norm).collect();
        if target.is_empty() {
            return Err(TraceError::EmptyReference);
        }
        let mut current: HashSet<(usize, usize)> = self.initial.iter().copied().collect();
        let mut overlap = current.iter().filter(|e| target.contains(e)).count();
        let total = target.len() as f64;
        let mut values = Vec::with_capacity(self.frames.len());
        for frame in &self.frames {
            for &(e, add) in &frame.ops {
                if !target.contains(&e) {
                    continue;
                }
                if add && current.insert(e) {
                    overlap += 1;
                } else if !add && current.remove(&e) {
                    overlap -= 1;
                }
            }
            values.push(1.0 - overlap as f64 / total);
        }
        Ok(TraceSeries { values, round_marks: self.round_marks.clone() })
    }
}

/// The scalar similarity signal, one value per stored snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSeries {
    pub values: Vec<f64>,
    pub round_marks: Vec<usize>,
}

impl TraceSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Mean percent similarity, `100 * mean(1 - x_t)`.
    pub fn mean_similarity_percent(&self) -> Option<f64> {
        if self.values.is_empty() {
            return None;
        }
        let s: f64 = self.values.iter().map(|x| 1.0 - x).sum();
        Some(100.0 * s / self.values.len() as f64)
    }

    /// The last value of every round, a coarser view of the same signal.
    pub fn per_round(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for w in self.round_marks.windows(2) {
            if w[1] > 0 && w[1] > w[0] {
                out.push(self.values[w[1] - 1]);
            }
        }
        if let Some(&last) = self.values.last() {
            out.push(last);
        }
        out
    }
}

/// `x_t` for explicit snapshots against `final_le`.
pub fn difference_signal(
    snapshots: &[Vec<(usize, usize)>],
    final_le: &[(usize, usize)],
) -> Result<Vec<f64>, TraceError> {
    let target: HashSet<(usize, usize)> = final_le.iter().copied().map(norm).collect();
    if target.is_empty() {
        return Err(TraceError::EmptyReference);
    }
    Ok(snapshots
        .iter()
        .map(|snap| {
            let snap: HashSet<(usize, usize)> = snap.iter().copied().map(norm).collect();
            let hit = snap.iter().filter(|e| target.contains(e)).count();
            1.0 - hit as f64 / target.len() as f64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signal_endpoints() {
        let fin = vec![(0, 1), (1, 2), (2, 3), (3, 4)];
        let s = difference_signal(&[fin.clone(), vec![], vec![(5, 6)], vec![(1, 0), (2, 1)]], &fin).unwrap();
        assert_eq!(s, vec![0.0, 1.0, 1.0, 0.5]);
        assert_eq!(difference_signal(&[vec![]], &[]), Err(TraceError::EmptyReference));
    }

    #[test]
    fn replay_matches_explicit_snapshots() {
        let mut rec = TraceRecorder::new(TraceConfig::default());
        rec.start(&[(0, 1), (2, 3)]);
        let mut snaps = Vec::new();
        let mut cur: Vec<(usize, usize)> = vec![(0, 1), (2, 3)];

        rec.added((1, 2));
        cur.push((1, 2));
        rec.commit();
        snaps.push(cur.clone());

        rec.removed((3, 2));
        cur.retain(|&e| e != (2, 3));
        rec.added((3, 0));
        cur.push((0, 3));
        rec.commit();
        snaps.push(cur.clone());

        let fin = vec![(0, 1), (1, 2), (0, 3)];
        let a = rec.finalize(&fin).unwrap();
        let b = difference_signal(&snaps, &fin).unwrap();
        assert_eq!(a.values, b);
        assert_eq!(*a.values.last().unwrap(), 0.0);
    }

    #[test]
    fn compaction_halves_frames() {
        let mut rec = TraceRecorder::new(TraceConfig { enabled: true, decimation: 1, max_frames: 8 });
        rec.start(&[]);
        for i in 0..8 {
            rec.added((i, i + 1));
            rec.commit();
        }
        assert_eq!(rec.len(), 4);
        assert_eq!(rec.decimation(), 2);
        let s = rec.finalize(&[(6, 7), (7, 8)]).unwrap();
        assert_eq!(s.values.last(), Some(&0.0));
    }

    #[test]
    fn disabled_recorder_stores_nothing() {
        let mut rec = TraceRecorder::disabled();
        rec.start(&[(0, 1)]);
        rec.added((1, 2));
        assert!(!rec.commit());
        assert!(rec.is_empty());
    }
}
