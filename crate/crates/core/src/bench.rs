//! Batch runs over instance files: solve, re-verify, and emit the results
//! table, solution files and traces.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::chaos::{analyze, ChaosParams, ChaosStats};
use crate::io::{read_instance, verify_sequence, IoError, SequenceKind, SolutionRecord};
use crate::mapping::strategy_by_name;
use crate::policy::{solve_with, PolicyConfig, RunReport};
use crate::report::{write_report, write_trace, ReportRow};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("unknown mapping strategy `{0}`")]
    UnknownStrategy(String),
    #[error("{0}: not a directory")]
    NotADirectory(String),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Wall-clock budget per instance, shared by all seeds.
    pub time_limit: Duration,
    /// Tried in order until one solves the instance.
    pub seeds: Vec<u64>,
    pub workers: usize,
    /// Where reports, solutions and traces go; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
    pub chaos: bool,
    pub trace: bool,
    pub strategy: String,
    pub policy: PolicyConfig,
    pub chaos_params: ChaosParams,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            time_limit: Duration::from_secs(600),
            seeds: vec![0],
            workers: 1,
            out_dir: None,
            chaos: false,
            trace: false,
            strategy: "rotation".into(),
            policy: PolicyConfig::default(),
            chaos_params: ChaosParams::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.workers == 0 {
            return Err(BenchError::Config("worker count must be at least 1"));
        }
        if self.time_limit.is_zero() {
            return Err(BenchError::Config("time limit must be positive"));
        }
        Ok(())
    }
}

/// One instance after solving and re-verification.
#[derive(Debug, Clone)]
pub struct InstanceResult {
    pub report: RunReport,
    pub chaos: Option<ChaosStats>,
    pub row: ReportRow,
}

/// Solves an already-parsed graph under `config`.
pub fn run_graph(graph: &crate::graph::Graph, config: &BenchConfig) -> Result<InstanceResult, BenchError> {
    config.validate()?;
    let strategy =
        strategy_by_name(&config.strategy).ok_or_else(|| BenchError::UnknownStrategy(config.strategy.clone()))?;
    let started = Instant::now();
    let mut report = None;
    for &seed in if config.seeds.is_empty() { &[0][..] } else { &config.seeds[..] } {
        let left = config.time_limit.saturating_sub(started.elapsed());
        if left.is_zero() && report.is_some() {
            break;
        }
        let policy = PolicyConfig { seed, time_limit: Some(left), ..config.policy };
        let r = solve_with(graph, &policy, strategy.as_ref());
        let done = r.solved();
        report = Some(r);
        if done {
            break;
        }
    }
    let mut report = report.expect("at least one seed ran");

    // never trust the solver: a claim that fails verification is dropped
    if let (Some(kind), Some(seq)) = (report.outcome, report.sequence.as_ref()) {
        if !verify_sequence(graph, seq, kind) {
            report.outcome = None;
            report.sequence = None;
        }
    }

    let chaos =
        if config.chaos { report.trace.as_ref().map(|t| analyze(&t.values, &config.chaos_params)) } else { None };
    let row = ReportRow::new(&report, chaos.as_ref());

    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| IoError::io(dir, e))?;
        if let (Some(kind), Some(seq)) = (report.outcome, &report.sequence) {
            let record = SolutionRecord {
                instance: report.instance.clone(),
                kind,
                sequence: seq.clone(),
                seed: report.seed,
                wall_secs: report.mapping_secs + report.reconstruct_secs,
            };
            record.write(&dir.join(format!("{}.sol", report.instance)))?;
        }
        if config.trace {
            if let Some(t) = &report.trace {
                write_trace(&dir.join(format!("{}.trace.csv", report.instance)), t)?;
            }
        }
    }
    Ok(InstanceResult { report, chaos, row })
}

/// Parses, solves and verifies one instance file.
pub fn run_single(path: &Path, config: &BenchConfig) -> Result<InstanceResult, BenchError> {
    let graph = read_instance(path)?;
    run_graph(&graph, config)
}

#[derive(Debug, Clone)]
pub struct SuiteSummary {
    /// Sorted by instance name.
    pub rows: Vec<ReportRow>,
    pub results: Vec<InstanceResult>,
    /// Files that could not be read or parsed, with the error text.
    pub failures: Vec<(PathBuf, String)>,
    pub solved: usize,
    pub total: usize,
}

impl SuiteSummary {
    pub fn summary_line(&self) -> String {
        format!("solved {}/{} ({} unreadable)", self.solved, self.total, self.failures.len())
    }
}

/// Instance files (`*.hcp`) in `dir`, sorted by path.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    if !dir.is_dir() {
        return Err(BenchError::NotADirectory(dir.display().to_string()));
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| IoError::io(dir, e))?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x.eq_ignore_ascii_case("hcp")))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every instance file of `dir` on a pool of `workers` threads. A
/// failing instance is recorded and the suite continues. When `out_dir` is
/// set the table goes to `report.csv` there.
pub fn run_suite(dir: &Path, config: &BenchConfig) -> Result<SuiteSummary, BenchError> {
    config.validate()?;
    let files = instance_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| BenchError::Pool(e.to_string()))?;
    let outcomes: Vec<(PathBuf, Result<InstanceResult, BenchError>)> =
        pool.install(|| files.par_iter().map(|p| (p.clone(), run_single(p, config))).collect());

    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (path, r) in outcomes {
        match r {
            Ok(r) => results.push(r),
            Err(e) => failures.push((path, e.to_string())),
        }
    }
    results.sort_by(|a, b| a.report.instance.cmp(&b.report.instance));
    let rows: Vec<ReportRow> = results.iter().map(|r| r.row.clone()).collect();
    let solved = results.iter().filter(|r| r.report.solved()).count();
    if let Some(out) = &config.out_dir {
        std::fs::create_dir_all(out).map_err(|e| IoError::io(out, e))?;
        write_report(&out.join("report.csv"), &rows)?;
    }
    Ok(SuiteSummary { rows, results, failures, solved, total: files.len() })
}

/// Re-reads a solution file and checks it against the instance.
pub fn verify_solution_file(graph: &crate::graph::Graph, path: &Path) -> Result<Option<SequenceKind>, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    let Some(seq) = crate::io::parse_solution(&text) else {
        return Ok(None);
    };
    Ok([SequenceKind::Cycle, SequenceKind::Path].into_iter().find(|&k| verify_sequence(graph, &seq, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::io::write_instance;

    fn toy_dir() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for g in [families::complete(3), families::cycle(6), families::star(3)] {
            let name = format!("{}.hcp", g.name());
            std::fs::write(dir.path().join(name), write_instance(&g)).unwrap();
        }
        dir
    }

    #[test]
    fn suite_over_toy_instances() {
        let dir = toy_dir();
        let out = tempfile::tempdir().unwrap();
        let cfg = BenchConfig {
            out_dir: Some(out.path().to_path_buf()),
            policy: PolicyConfig { max_rounds: 2, ..PolicyConfig::default() },
            ..BenchConfig::default()
        };
        let s = run_suite(dir.path(), &cfg).unwrap();
        assert_eq!(s.total, 3);
        assert_eq!(s.rows.len(), 3);
        assert_eq!(s.solved, 2);
        let text = std::fs::read_to_string(out.path().join("report.csv")).unwrap();
        assert_eq!(text.lines().count(), 4);
        for r in s.results.iter().filter(|r| r.report.solved()) {
            let g = crate::io::read_instance(&dir.path().join(format!("{}.hcp", r.report.instance))).unwrap();
            let sol = out.path().join(format!("{}.sol", r.report.instance));
            assert!(verify_solution_file(&g, &sol).unwrap().is_some());
        }
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let s = run_suite(dir.path(), &BenchConfig::default()).unwrap();
        assert_eq!((s.total, s.solved), (0, 0));
        assert_eq!(s.summary_line(), "solved 0/0 (0 unreadable)");
    }

    #[test]
    fn malformed_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.hcp");
        std::fs::write(&p, "DIMENSION : 3\nEDGE_DATA_SECTION\n1 7\n-1\n").unwrap();
        assert!(matches!(run_single(&p, &BenchConfig::default()), Err(BenchError::Io(IoError::Parse { .. }))));
    }

    #[test]
    fn rejects_zero_workers_and_budget() {
        let g = families::complete(3);
        assert!(matches!(
            run_graph(&g, &BenchConfig { workers: 0, ..BenchConfig::default() }),
            Err(BenchError::Config(_))
        ));
        let zero = BenchConfig { time_limit: Duration::ZERO, ..BenchConfig::default() };
        assert!(matches!(run_graph(&g, &zero), Err(BenchError::Config(_))));
    }

    #[test]
    fn parallel_matches_serial() {
        let dir = toy_dir();
        let serial = run_suite(dir.path(), &BenchConfig::default()).unwrap();
        let parallel = run_suite(dir.path(), &BenchConfig { workers: 3, ..BenchConfig::default() }).unwrap();
        let strip = |s: &SuiteSummary| -> Vec<String> {
            crate::report::report_to_string(&s.rows)
                .lines()
                .map(|l| l.split(',').take(crate::report::STABLE_COLUMNS).collect::<Vec<_>>().join(","))
                .collect()
        };
        assert_eq!(strip(&serial), strip(&parallel));
    }
}
