//! Instance files in the FHCP/TSPLIB `HCP` layout, solution files, sequence
//! verification and an exact backtracking oracle for small graphs.
//!
//! ```text
//! NAME : graph1
//! COMMENT : ...
//! TYPE : HCP
//! DIMENSION : 66
//! EDGE_DATA_FORMAT : EDGE_LIST
//! EDGE_DATA_SECTION
//!  1 2
//!  ...
//! -1
//! EOF
//! ```

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: invalid DIMENSION `{value}`")]
    InvalidDimension { line: usize, value: String },
    #[error("line {line}: unsupported {key} `{value}`")]
    Unsupported { line: usize, key: String, value: String },
    #[error("missing DIMENSION header before the edge section")]
    MissingDimension,
    #[error("missing EDGE_DATA_SECTION")]
    MissingEdgeSection,
    #[error("line {line}: edge section contains no edges")]
    EmptyEdgeSection { line: usize },
    #[error("line {line}: malformed edge entry `{text}`")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: vertex {vertex} outside 1..={dimension}")]
    OutOfRange { line: usize, vertex: i64, dimension: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
}

/// Hamiltonian path or Hamiltonian cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SequenceKind {
    #[serde(rename = "HP")]
    Path,
    #[serde(rename = "HC")]
    Cycle,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::Path => "HP",
            SequenceKind::Cycle => "HC",
        })
    }
}

impl FromStr for SequenceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HP" => Ok(SequenceKind::Path),
            "HC" => Ok(SequenceKind::Cycle),
            other => Err(format!("unknown sequence kind `{other}`")),
        }
    }
}

/// Parsed instance before conversion to a [`Graph`]: 1-based endpoints as
/// they appear in the file, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: String,
    pub dimension: usize,
    pub edges: Vec<(usize, usize)>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut name = String::new();
        let mut dimension: Option<usize> = None;
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut section_line = None;

        for (lineno, raw) in lines.by_ref() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if line.eq_ignore_ascii_case("EDGE_DATA_SECTION") {
                section_line = Some(lineno);
                break;
            }
            if line.eq_ignore_ascii_case("EOF") {
                break;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(ParseError::MalformedHeader { line: lineno, text: line.into() });
            };
            let key = key.trim().to_ascii_uppercase();
            let value = value.trim();
            match key.as_str() {
                "NAME" => name = value.to_string(),
                "COMMENT" => {}
                "TYPE" => {
                    if !value.eq_ignore_ascii_case("HCP") {
                        return Err(ParseError::Unsupported { line: lineno, key, value: value.into() });
                    }
                }
                "EDGE_DATA_FORMAT" => {
                    if !value.eq_ignore_ascii_case("EDGE_LIST") {
                        return Err(ParseError::Unsupported { line: lineno, key, value: value.into() });
                    }
                }
                "DIMENSION" => match value.parse::<usize>() {
                    Ok(d) if d >= 1 => dimension = Some(d),
                    _ => return Err(ParseError::InvalidDimension { line: lineno, value: value.into() }),
                },
                _ if key.is_empty() || key.contains(char::is_whitespace) => {
                    return Err(ParseError::MalformedHeader { line: lineno, text: line.into() });
                }
                // unknown TSPLIB keys are tolerated
                _ => {}
            }
        }

        let section_line = section_line.ok_or(ParseError::MissingEdgeSection)?;
        let dimension = dimension.ok_or(ParseError::MissingDimension)?;

        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut pending: Option<(usize, usize)> = None;
        let mut last_line = section_line;
        'outer: for (lineno, raw) in lines {
            last_line = lineno;
            let line = raw.trim();
            if line.eq_ignore_ascii_case("EOF") {
                break;
            }
            for tok in line.split_whitespace() {
                let value: i64 =
                    tok.parse().map_err(|_| ParseError::MalformedEdge { line: lineno, text: line.into() })?;
                if value == -1 {
                    if pending.is_some() {
                        return Err(ParseError::MalformedEdge { line: lineno, text: line.into() });
                    }
                    break 'outer;
                }
                if value < 1 || value as usize > dimension {
                    return Err(ParseError::OutOfRange { line: lineno, vertex: value, dimension });
                }
                let v = value as usize;
                match pending.take() {
                    None => pending = Some((v, lineno)),
                    Some((u, _)) => {
                        if u == v {
                            return Err(ParseError::SelfLoop { line: lineno, vertex: v });
                        }
                        if seen.insert((u.min(v), u.max(v))) {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        if let Some((_, line)) = pending {
            return Err(ParseError::MalformedEdge { line, text: "dangling endpoint".into() });
        }
        if edges.is_empty() {
            return Err(ParseError::EmptyEdgeSection { line: last_line });
        }
        Ok(Self { name, dimension, edges })
    }

    pub fn into_graph(self) -> Graph {
        Graph::from_edges(self.name, self.dimension, self.edges.into_iter().map(|(u, v)| (u - 1, v - 1)))
            .expect("endpoints were validated while parsing")
    }
}

/// Parses instance text into a graph with 0-based ids. Neighbor order follows
/// the file order of the edges.
pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    InstanceFile::parse(text).map(InstanceFile::into_graph)
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}

impl IoError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        IoError::Io { path: path.display().to_string(), source }
    }
}

/// Reads and parses an instance file. A missing `NAME` header falls back to
/// the file stem.
pub fn read_instance(path: &Path) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    let mut file =
        InstanceFile::parse(&text).map_err(|source| IoError::Parse { path: path.display().to_string(), source })?;
    if file.name.is_empty() {
        file.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(file.into_graph())
}

/// Serializes a graph in the same layout [`parse_instance`] reads.
pub fn write_instance(graph: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("NAME : {}\n", graph.name()));
    out.push_str("TYPE : HCP\n");
    out.push_str(&format!("DIMENSION : {}\n", graph.n()));
    out.push_str("EDGE_DATA_FORMAT : EDGE_LIST\nEDGE_DATA_SECTION\n");
    for (u, v) in graph.edges() {
        out.push_str(&format!(" {} {}\n", u + 1, v + 1));
    }
    out.push_str("-1\nEOF\n");
    out
}

/// True iff `sequence` is a Hamiltonian path (or cycle, for
/// [`SequenceKind::Cycle`]) of `graph`.
pub fn verify_sequence(graph: &Graph, sequence: &[usize], kind: SequenceKind) -> bool {
    let n = graph.n();
    if sequence.len() != n || n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in sequence {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    if !sequence.windows(2).all(|w| graph.has_edge(w[0], w[1])) {
        return false;
    }
    match kind {
        SequenceKind::Path => true,
        // a single vertex or a single edge does not close a simple cycle
        SequenceKind::Cycle => n >= 3 && graph.has_edge(sequence[n - 1], sequence[0]),
    }
}

/// A verified Hamiltonian sequence for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionRecord {
    pub instance: String,
    pub kind: SequenceKind,
    pub sequence: Vec<usize>,
    pub seed: u64,
    pub wall_secs: f64,
}

impl SolutionRecord {
    /// `v1 v2 ... vn` on one line, 1-based ids.
    pub fn to_line(&self) -> String {
        let ids: Vec<String> = self.sequence.iter().map(|v| (v + 1).to_string()).collect();
        ids.join(" ")
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        fs::write(path, format!("{}\n", self.to_line())).map_err(|e| IoError::io(path, e))
    }
}

/// Reads a solution line back as 0-based ids.
pub fn parse_solution(text: &str) -> Option<Vec<usize>> {
    text.split_whitespace().map(|t| t.parse::<usize>().ok().and_then(|v| v.checked_sub(1))).collect()
}

/// Result of the exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(Vec<usize>),
    Absent,
    /// The node budget ran out before the search space was exhausted.
    Unknown,
}

/// Exhaustive backtracking with a node budget. Meant for `n <= 16`.
///
/// Cycles are anchored at vertex 0. Paths start from every vertex unless the
/// graph has degree-1 vertices, in which case only those can be endpoints.
pub fn brute_force_hamiltonian(graph: &Graph, kind: SequenceKind, budget: u64) -> OracleOutcome {
    let n = graph.n();
    if n == 0 {
        return OracleOutcome::Absent;
    }
    if n == 1 {
        return match kind {
            SequenceKind::Path => OracleOutcome::Found(vec![0]),
            SequenceKind::Cycle => OracleOutcome::Absent,
        };
    }
    if !graph.is_connected() {
        return OracleOutcome::Absent;
    }
    let starts: Vec<usize> = match kind {
        SequenceKind::Cycle => vec![0],
        SequenceKind::Path => {
            let leaves: Vec<usize> = (0..n).filter(|&v| graph.degree(v) == 1).collect();
            match leaves.len() {
                0 => (0..n).collect(),
                1 | 2 => leaves,
                _ => return OracleOutcome::Absent,
            }
        }
    };

    struct Search<'a> {
        graph: &'a Graph,
        kind: SequenceKind,
        visited: Vec<bool>,
        path: Vec<usize>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        // Some(true) found, Some(false) exhausted, None out of budget
        fn dfs(&mut self) -> Option<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let n = self.graph.n();
            let last = *self.path.last().unwrap();
            if self.path.len() == n {
                return Some(match self.kind {
                    SequenceKind::Path => true,
                    SequenceKind::Cycle => n >= 3 && self.graph.has_edge(last, self.path[0]),
                });
            }
            for i in 0..self.graph.degree(last) {
                let w = self.graph.neighbors(last)[i];
                if self.visited[w] {
                    continue;
                }
                self.visited[w] = true;
                self.path.push(w);
                match self.dfs() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.path.pop();
                self.visited[w] = false;
            }
            Some(false)
        }
    }

    let mut search = Search { graph, kind, visited: vec![false; n], path: Vec::with_capacity(n), nodes: 0, budget };
    for s in starts {
        search.visited[s] = true;
        search.path.push(s);
        match search.dfs() {
            Some(true) => return OracleOutcome::Found(search.path),
            None => return OracleOutcome::Unknown,
            Some(false) => {}
        }
        search.path.clear();
        search.visited[s] = false;
    }
    OracleOutcome::Absent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    const TRIANGLE: &str = "NAME : tri\nTYPE : HCP\nDIMENSION : 3\nEDGE_DATA_FORMAT : EDGE_LIST\nEDGE_DATA_SECTION\n 1 2\n 2 3\n 1 3\n-1\nEOF\n";

    #[test]
    fn parses_triangle() {
        let g = parse_instance(TRIANGLE).unwrap();
        assert_eq!(g.name(), "tri");
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn lenient_whitespace_and_pairs_across_lines() {
        let text = "NAME:x\nDIMENSION:   4\nEDGE_DATA_SECTION\n1 2 2\n3\n\t3 4   -1\n";
        let g = parse_instance(text).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn out_of_range_reports_line() {
        let text = "NAME : t\nDIMENSION : 3\nEDGE_DATA_SECTION\n1 2\n1 7\n-1\n";
        assert_eq!(parse_instance(text), Err(ParseError::OutOfRange { line: 5, vertex: 7, dimension: 3 }));
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(parse_instance("NAME t\n"), Err(ParseError::MalformedHeader { line: 1, text: "NAME t".into() }));
        assert_eq!(
            parse_instance("DIMENSION : 3\nEDGE_DATA_SECTION\n-1\nEOF\n"),
            Err(ParseError::EmptyEdgeSection { line: 3 })
        );
        assert_eq!(
            parse_instance("DIMENSION : 0\nEDGE_DATA_SECTION\n"),
            Err(ParseError::InvalidDimension { line: 1, value: "0".into() })
        );
        assert_eq!(parse_instance("DIMENSION : 3\n"), Err(ParseError::MissingEdgeSection));
        assert_eq!(parse_instance("EDGE_DATA_SECTION\n1 2\n"), Err(ParseError::MissingDimension));
        assert!(matches!(
            parse_instance("DIMENSION : 3\nEDGE_DATA_SECTION\n1 x\n"),
            Err(ParseError::MalformedEdge { line: 3, .. })
        ));
        assert_eq!(
            parse_instance("DIMENSION : 3\nEDGE_DATA_SECTION\n2 2\n"),
            Err(ParseError::SelfLoop { line: 3, vertex: 2 })
        );
        assert!(matches!(
            parse_instance("TYPE : TSP\nDIMENSION : 3\nEDGE_DATA_SECTION\n1 2\n"),
            Err(ParseError::Unsupported { line: 1, .. })
        ));
    }

    #[test]
    fn verify_basic_cases() {
        let tri = families::complete(3);
        assert!(verify_sequence(&tri, &[0, 1, 2], SequenceKind::Cycle));
        let p3 = families::path(3);
        assert!(!verify_sequence(&p3, &[0, 1, 2], SequenceKind::Cycle));
        assert!(verify_sequence(&p3, &[0, 1, 2], SequenceKind::Path));
        assert!(!verify_sequence(&p3, &[0, 1], SequenceKind::Path));
        assert!(!verify_sequence(&p3, &[0, 1, 1], SequenceKind::Path));
        assert!(!verify_sequence(&p3, &[1, 0, 2], SequenceKind::Path));
        assert!(!verify_sequence(&p3, &[0, 1, 5], SequenceKind::Path));
    }

    #[test]
    fn oracle_small_cases() {
        let k4 = families::complete(4);
        match brute_force_hamiltonian(&k4, SequenceKind::Cycle, 1_000) {
            OracleOutcome::Found(s) => assert!(verify_sequence(&k4, &s, SequenceKind::Cycle)),
            other => panic!("{other:?}"),
        }
        let star = families::star(3);
        assert_eq!(brute_force_hamiltonian(&star, SequenceKind::Path, 1_000), OracleOutcome::Absent);
        let pet = families::petersen();
        assert_eq!(brute_force_hamiltonian(&pet, SequenceKind::Cycle, 1_000_000), OracleOutcome::Absent);
        match brute_force_hamiltonian(&pet, SequenceKind::Path, 1_000_000) {
            OracleOutcome::Found(s) => assert!(verify_sequence(&pet, &s, SequenceKind::Path)),
            other => panic!("{other:?}"),
        }
        assert_eq!(brute_force_hamiltonian(&pet, SequenceKind::Cycle, 3), OracleOutcome::Unknown);
    }

    #[test]
    fn solution_line_is_one_based() {
        let rec = SolutionRecord {
            instance: "t".into(),
            kind: SequenceKind::Cycle,
            sequence: vec![2, 0, 1],
            seed: 0,
            wall_secs: 0.0,
        };
        assert_eq!(rec.to_line(), "3 1 2");
        assert_eq!(parse_solution(&rec.to_line()), Some(vec![2, 0, 1]));
        assert_eq!(parse_solution("0 1"), None);
    }
}
