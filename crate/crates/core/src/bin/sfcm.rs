use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use sfcm::bench::{run_single, run_suite, BenchConfig};
use sfcm::chaos::{analyze, ChaosParams, ChaosStatus};
use sfcm::report::report_to_string;
use sfcm::PolicyConfig;

#[derive(Parser)]
#[command(name = "sfcm", version, about = "Hamiltonian path/cycle search with trajectory diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Solve every `.hcp` file in a directory and write the results table.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, env = "SFCM_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Chaos statistics of a `t,x` trace file.
    Analyze {
        trace: PathBuf,
        #[command(flatten)]
        chaos: ChaosArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Seeds tried in order until one solves the instance.
    #[arg(long, env = "SFCM_SEED", value_delimiter = ',', default_value = "0")]
    seed: Vec<u64>,
    /// Seconds per instance.
    #[arg(long, env = "SFCM_TIME_LIMIT", default_value_t = 600.0)]
    time_limit: f64,
    #[arg(long, env = "SFCM_ROUNDS", default_value_t = 8)]
    rounds: usize,
    /// Search for a cycle first (default).
    #[arg(long, overrides_with = "hp")]
    hcp: bool,
    /// Search for a path only.
    #[arg(long, overrides_with = "hcp")]
    hp: bool,
    /// Write the similarity trace next to the solution.
    #[arg(long, env = "SFCM_TRACE")]
    trace: bool,
    /// Add Lyapunov and 0-1 columns.
    #[arg(long, env = "SFCM_CHAOS")]
    chaos: bool,
    #[arg(long, env = "SFCM_OUT")]
    out: Option<PathBuf>,
    /// Initial mapping: `rotation` or `greedy`.
    #[arg(long, env = "SFCM_STRATEGY", default_value = "rotation")]
    strategy: String,
    #[command(flatten)]
    chaos_args: ChaosArgs,
}

#[derive(Args)]
struct ChaosArgs {
    /// Embedding dimension.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Embedding delay; chosen from the autocorrelation when omitted.
    #[arg(long)]
    delay: Option<usize>,
    /// Number of random frequencies in the 0-1 test.
    #[arg(long, default_value_t = 100)]
    n_c: usize,
    /// Downsample longer traces to this many points; 0 keeps all.
    #[arg(long, default_value_t = 5000)]
    max_points: usize,
}

impl ChaosArgs {
    fn params(&self) -> ChaosParams {
        let mut p = ChaosParams::default();
        p.lyapunov.dim = self.dim;
        p.lyapunov.delay = self.delay;
        p.zero_one.n_c = self.n_c;
        p.max_points = self.max_points;
        p
    }
}

impl RunArgs {
    fn config(&self, workers: usize) -> Result<BenchConfig, String> {
        if !(self.time_limit.is_finite() && self.time_limit > 0.0) {
            return Err("--time-limit must be a positive number of seconds".into());
        }
        let policy = PolicyConfig { max_rounds: self.rounds, hcp: !self.hp, ..PolicyConfig::default() };
        Ok(BenchConfig {
            time_limit: Duration::from_secs_f64(self.time_limit),
            seeds: self.seed.clone(),
            workers,
            out_dir: self.out.clone(),
            chaos: self.chaos,
            trace: self.trace,
            strategy: self.strategy.clone(),
            policy,
            chaos_params: self.chaos_args.params(),
        })
    }
}

fn read_trace(path: &Path) -> Result<Vec<f64>, String> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut xs = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| format!("{}: {e}", path.display()))?;
        let x = rec
            .get(1)
            .and_then(|f| f.trim().parse::<f64>().ok())
            .ok_or_else(|| format!("{}: bad row {:?}", path.display(), rec))?;
        xs.push(x);
    }
    Ok(xs)
}

fn fmt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.6}"))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Solve { instance, run } => {
            let cfg = run.config(1)?;
            let r = run_single(&instance, &cfg).map_err(|e| e.to_string())?;
            print!("{}", report_to_string(std::slice::from_ref(&r.row)));
            if let Some(seq) = &r.report.sequence {
                let ids: Vec<String> = seq.iter().map(|v| (v + 1).to_string()).collect();
                println!("{} {}", r.report.outcome_label(), ids.join(" "));
            }
            Ok(r.report.solved())
        }
        Command::Bench { dir, run, workers } => {
            let cfg = run.config(workers)?;
            let s = run_suite(&dir, &cfg).map_err(|e| e.to_string())?;
            print!("{}", report_to_string(&s.rows));
            for (_, err) in &s.failures {
                eprintln!("{err}");
            }
            eprintln!("{}", s.summary_line());
            Ok(s.solved == s.total && s.failures.is_empty())
        }
        Command::Analyze { trace, chaos } => {
            let xs = read_trace(&trace)?;
            let st = analyze(&xs, &chaos.params());
            println!("datapoints,lyapunov,k01,status");
            println!("{},{},{},{:?}", st.datapoints, fmt(st.lambda), fmt(st.k01), st.status);
            Ok(st.status == ChaosStatus::Ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
