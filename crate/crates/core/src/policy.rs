//! The restart controller around the reconstruction engine and the `solve`
//! entry point.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chaos::trace::TraceSeries;
use crate::graph::Graph;
use crate::io::{verify_sequence, SequenceKind};
use crate::mapping::{MappingError, MappingStrategy, RotationDfs};
use crate::reconstruct::{EdgeList, EngineConfig, Signal, SolverState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolicyConfig {
    pub max_rounds: usize,
    /// Target a cycle first; a path is still accepted.
    pub hcp: bool,
    pub seed: u64,
    /// Expansion calls per round; 0 picks `16 * |E|` (at least 64).
    pub expansions_per_round: u64,
    pub time_limit: Option<Duration>,
    pub engine: EngineConfig,
}

impl Default for PolicyConfig {
    fn default() -> Self {
        Self {
            max_rounds: 8,
            hcp: true,
            seed: 0,
            expansions_per_round: 0,
            time_limit: None,
            engine: EngineConfig::default(),
        }
    }
}

/// Result of one `solve` call.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub instance: String,
    pub vertices: usize,
    pub edges: usize,
    /// `None` when no sequence was found.
    pub outcome: Option<SequenceKind>,
    pub sequence: Option<Vec<usize>>,
    pub rounds: usize,
    /// `M_|vH|`, `M_ε`.
    pub m_vh: u64,
    pub m_err: u64,
    /// `R_|vH|`, `R_ε`.
    pub r_vh: u64,
    pub r_err: u64,
    pub expansions: u64,
    /// Select-first commits, one trace snapshot each.
    pub iterations: u64,
    /// Checks done by the engine in audit mode.
    pub audits: u64,
    /// Longest `|P_x1| + |P_x2|` reached.
    pub longest: usize,
    pub mapping_secs: f64,
    pub reconstruct_secs: f64,
    pub timed_out: bool,
    pub seed: u64,
    /// Similarity series against the solution (or the longest path when
    /// unsolved).
    pub trace: Option<TraceSeries>,
}

impl RunReport {
    pub fn outcome_label(&self) -> &'static str {
        match self.outcome {
            Some(SequenceKind::Cycle) => "HC",
            Some(SequenceKind::Path) => "HP",
            None => "none",
        }
    }

    pub fn solved(&self) -> bool {
        self.outcome.is_some()
    }
}

/// Randomly permutes every neighbor list. The edge set is unchanged.
pub fn shuffle_neighborhoods<R: Rng + ?Sized>(state: &mut SolverState, rng: &mut R) {
    let mut adj = state.graph().adjacency().to_vec();
    for list in &mut adj {
        list.shuffle(rng);
    }
    state.set_adjacency(adj);
}

/// Controller state that lives for one round.
struct Round<'a> {
    rng: &'a mut ChaCha8Rng,
    hcp: bool,
    expansion_limit: u64,
    deadline: Option<Instant>,
    expansions: u64,
    timed_out: bool,
}

#[derive(Debug, PartialEq, Eq)]
enum RoundEnd {
    Solved(Vec<usize>),
    Stopped,
}

impl Round<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
            return true;
        }
        self.expansions >= self.expansion_limit
    }

    /// Random untried seed from the base edge list.
    fn random_seed(&mut self, state: &SolverState, tried: &HashSet<(usize, usize)>) -> Option<(usize, usize)> {
        let open: Vec<(usize, usize)> = state
            .base()
            .pairs()
            .into_iter()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .filter(|e| !tried.contains(e))
            .collect();
        open.choose(self.rng).copied()
    }

    /// First untried edge `(v, u)` with `v` taken from `A`, then from `V`.
    fn ordered_seed(state: &SolverState, tried: &HashSet<(usize, usize)>) -> Option<(usize, usize)> {
        let order = state.a_set.iter().copied().chain(0..state.n());
        for v in order {
            for &u in state.graph().neighbors(v) {
                if !tried.contains(&(v, u)) {
                    return Some((v, u));
                }
            }
        }
        None
    }

    fn run(&mut self, state: &mut SolverState) -> RoundEnd {
        let mut last_lpf: Option<usize> = None;
        let mut notfound_cycles = 0usize;
        state.flags.hc = self.hcp;
        shuffle_neighborhoods(state, self.rng);
        state.trace.mark_round();
        let mut tried: HashSet<(usize, usize)> = HashSet::new();
        let mut after_expand = false;

        loop {
            if self.out_of_budget() {
                return RoundEnd::Stopped;
            }
            let phi = if after_expand {
                state.labeling.err.iter_mut().for_each(|e| *e = 0);
                Self::ordered_seed(state, &tried)
            } else {
                self.random_seed(state, &tried)
            };
            if let Some(phi) = phi {
                tried.insert(phi);
                self.expansions += 1;
                match state.reconstruct(phi) {
                    Ok(seq) => return RoundEnd::Solved(seq),
                    Err(Signal::Expand | Signal::Error | Signal::NotFound) => {
                        after_expand = true;
                        continue;
                    }
                }
            }

            // no seed left: revise L_e, priorities and modes
            tried.clear();
            after_expand = false;
            let step2 = notfound_cycles >= 1;
            notfound_cycles += 1;
            revive_uncovered(state);
            let freq_max = argmax(&state.labeling.err_total);
            state.labeling.err_total.iter_mut().for_each(|e| *e = 0);
            state.a_set.clear();
            state.c_set.clear();
            if state.is_bottom(freq_max) && state.base().degree(freq_max) == 2 {
                let first = state.base().incident(freq_max).next().map(|e| (e.u, e.v));
                if let Some((u, v)) = first {
                    let mut base = state.base().clone();
                    let _ = base.remove(u, v);
                    state.set_base(&base);
                }
            }
            let Some(lpf) = state.clear_incumbent() else {
                return RoundEnd::Stopped;
            };
            if step2 && !state.any_bottom() {
                let mut skip = false;
                // no progress since the previous cycle: give up on the cycle
                // requirement
                if last_lpf.is_some_and(|last| last >= lpf.len) {
                    if state.flags.restricted {
                        state.demote(freq_max);
                    }
                    state.flags.restricted = state.flags.hc;
                    skip = true;
                    state.flags.hc = false;
                }
                if !skip {
                    if state.flags.restricted {
                        state.demote(freq_max);
                        state.flags.restricted = false;
                    } else {
                        state.set_base(&EdgeList::from_pairs(state.n(), lpf.edges.iter().copied()));
                        state.flags.restricted = true;
                    }
                }
            }
            if state.any_bottom() {
                return RoundEnd::Stopped;
            }
            last_lpf = Some(lpf.len);
        }
    }
}

/// Gives every vertex outside `L_e` one entry, towards the first neighbor
/// that still has room.
fn revive_uncovered(state: &mut SolverState) {
    let mut base = state.base().clone();
    for z in 0..state.n() {
        if base.degree(z) == 0 {
            let w = state.graph().neighbors(z).iter().copied().find(|&w| base.degree(w) < 2);
            if let Some(w) = w {
                base.insert(z, w, crate::reconstruct::EdgeStatus::NonSync);
            }
        }
    }
    state.set_base(&base);
}

/// Index of the largest value, lowest index on ties.
fn argmax(values: &[u64]) -> usize {
    let max = values.iter().copied().max().unwrap_or(0);
    values.iter().position(|&v| v == max).unwrap_or(0)
}

/// Maps `graph`, then runs restart rounds until a sequence is found or the
/// budgets run out. Every reported sequence has been re-verified.
pub fn solve(graph: &Graph, config: &PolicyConfig) -> RunReport {
    solve_with(graph, config, &RotationDfs::default())
}

pub fn solve_with(graph: &Graph, config: &PolicyConfig, mapping: &dyn MappingStrategy) -> RunReport {
    let started = Instant::now();
    let deadline = config.time_limit.map(|t| started + t);
    let mut report = RunReport {
        instance: graph.name().to_string(),
        vertices: graph.n(),
        edges: graph.edge_count(),
        outcome: None,
        sequence: None,
        rounds: 0,
        m_vh: 0,
        m_err: 0,
        r_vh: 0,
        r_err: 0,
        expansions: 0,
        iterations: 0,
        audits: 0,
        longest: 0,
        mapping_secs: 0.0,
        reconstruct_secs: 0.0,
        timed_out: false,
        seed: config.seed,
        trace: None,
    };

    let n = graph.n();
    if n <= 2 {
        let seq: Vec<usize> = (0..n).collect();
        if n > 0 && verify_sequence(graph, &seq, SequenceKind::Path) {
            report.outcome = Some(SequenceKind::Path);
            report.longest = n;
            report.sequence = Some(seq);
        }
        return report;
    }

    let mapped = match mapping.map(graph, config.seed) {
        Ok(m) => m,
        Err(MappingError::Disconnected | MappingError::Empty | MappingError::EmptyCost) => {
            report.mapping_secs = started.elapsed().as_secs_f64();
            return report;
        }
    };
    report.mapping_secs = started.elapsed().as_secs_f64();
    report.m_vh = mapped.m_vh;
    report.m_err = mapped.m_err;

    let rec_start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed_5eed);
    let mut state = SolverState::new(graph, mapped.le, config.engine);
    state.flags.hcp = config.hcp;
    let expansion_limit = if config.expansions_per_round == 0 {
        (16 * graph.edge_count() as u64).max(64)
    } else {
        config.expansions_per_round
    };

    let mut solution = None;
    for round in 1..=config.max_rounds.max(1) {
        report.rounds = round;
        state.reset_priorities();
        state.flags.restricted = true;
        let mut ctl =
            Round { rng: &mut rng, hcp: config.hcp, expansion_limit, deadline, expansions: 0, timed_out: false };
        let end = ctl.run(&mut state);
        report.expansions += ctl.expansions;
        report.timed_out |= ctl.timed_out;
        if let RoundEnd::Solved(seq) = end {
            solution = Some(seq);
            break;
        }
        if report.timed_out {
            break;
        }
        // next round starts from the longest path found so far
        if let Some(best) = state.best() {
            let le = EdgeList::from_pairs(n, best.edges.iter().copied());
            state.set_base(&le);
        }
    }
    report.reconstruct_secs = rec_start.elapsed().as_secs_f64();
    report.r_vh = state.counters.vh_computations;
    report.r_err = state.counters.errors;
    report.iterations = state.trace().commits();
    report.audits = state.counters.audits;
    report.longest = state.best().map_or(0, |b| b.len);

    let reference: Vec<(usize, usize)> = match &solution {
        Some(_) => state.le().pairs(),
        None => state.best().map(|b| b.edges.clone()).unwrap_or_default(),
    };
    report.trace = state.trace().finalize(&reference).ok();

    if let Some(seq) = solution {
        let kind = if verify_sequence(graph, &seq, SequenceKind::Cycle) {
            Some(SequenceKind::Cycle)
        } else if verify_sequence(graph, &seq, SequenceKind::Path) {
            Some(SequenceKind::Path)
        } else {
            None
        };
        if kind.is_some() {
            report.outcome = kind;
            report.sequence = Some(seq);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn triangle_in_one_expansion() {
        let r = solve(&families::complete(3), &PolicyConfig::default());
        assert_eq!(r.outcome, Some(SequenceKind::Cycle));
        assert_eq!(r.expansions, 1);
        assert_eq!(r.rounds, 1);
    }

    #[test]
    fn path_graph_yields_a_path() {
        let r = solve(&families::path(4), &PolicyConfig { hcp: false, ..PolicyConfig::default() });
        assert_eq!(r.outcome, Some(SequenceKind::Path));
        let seq = r.sequence.unwrap();
        assert!(verify_sequence(&families::path(4), &seq, SequenceKind::Path));
    }

    #[test]
    fn petersen_falls_back_to_a_path() {
        let g = families::petersen();
        for seed in 0..5 {
            let r = solve(&g, &PolicyConfig { seed, ..PolicyConfig::default() });
            assert_eq!(r.outcome, Some(SequenceKind::Path), "seed {seed}");
        }
    }

    #[test]
    fn star_is_never_solved() {
        let r = solve(&families::star(3), &PolicyConfig { max_rounds: 2, ..PolicyConfig::default() });
        assert_eq!(r.outcome, None);
        assert!(r.sequence.is_none());
    }

    #[test]
    fn disconnected_graph_is_unsolved() {
        let g = Graph::from_edges("two", 6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(solve(&g, &PolicyConfig::default()).outcome, None);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = families::petersen();
        let cfg = PolicyConfig { seed: 9, ..PolicyConfig::default() };
        let a = solve(&g, &cfg);
        let b = solve(&g, &cfg);
        assert_eq!(a.sequence, b.sequence);
        assert_eq!((a.r_vh, a.r_err, a.expansions), (b.r_vh, b.r_err, b.expansions));
    }

    #[test]
    fn shuffle_keeps_edges_and_is_seeded() {
        let g = families::petersen();
        let mk = || SolverState::new(&g, EdgeList::new(10), EngineConfig::default());
        let (mut a, mut b) = (mk(), mk());
        shuffle_neighborhoods(&mut a, &mut ChaCha8Rng::seed_from_u64(4));
        shuffle_neighborhoods(&mut b, &mut ChaCha8Rng::seed_from_u64(4));
        assert_eq!(a.graph().adjacency(), b.graph().adjacency());
        let mut ea = a.graph().edges();
        let mut eg = g.edges();
        ea.sort_unstable();
        eg.sort_unstable();
        assert_eq!(ea, eg);
        let s = families::star(3);
        let mut st = SolverState::new(&s, EdgeList::new(4), EngineConfig::default());
        shuffle_neighborhoods(&mut st, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(st.graph().neighbors(2), &[0]);
    }
}
