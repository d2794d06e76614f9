//! Run the benchmark harness over a directory of generated instances.
//!
//!     cargo run --release --example bench_suite -- [instance-dir]

use std::time::Duration;

use sfcm::bench::{run_suite, BenchConfig};
use sfcm::graph::families;
use sfcm::io::write_instance;
use sfcm::report::report_to_string;

fn main() {
    let scratch = tempfile::tempdir().unwrap();
    let dir = match std::env::args().nth(1) {
        Some(d) => d.into(),
        None => {
            for (n, seed) in [(66, 1), (78, 2), (100, 3), (150, 4), (200, 5)] {
                let (g, _) = families::planted_cubic(n, seed);
                std::fs::write(scratch.path().join(format!("{}.hcp", g.name())), write_instance(&g)).unwrap();
            }
            scratch.path().to_path_buf()
        }
    };
    let out = scratch.path().join("out");
    let cfg = BenchConfig {
        time_limit: Duration::from_secs(60),
        seeds: vec![0, 1, 2],
        workers: 4,
        out_dir: Some(out.clone()),
        chaos: true,
        trace: true,
        ..BenchConfig::default()
    };
    let summary = run_suite(&dir, &cfg).unwrap();
    print!("{}", report_to_string(&summary.rows));
    println!("{}", summary.summary_line());
    let mut written: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    written.sort();
    println!("output files: {written:?}");
}
