//! Record the similarity trace of a run and write it as `t,x` CSV.
//!
//!     cargo run --example trace_export -- out.csv

use sfcm::graph::families;
use sfcm::report::{trace_to_string, write_trace};
use sfcm::{solve, PolicyConfig};

fn main() {
    let (g, _) = families::planted_cubic(100, 0);
    let r = solve(&g, &PolicyConfig::default());
    let trace = r.trace.as_ref().unwrap();
    println!("{} {} after {} select commits", g.name(), r.outcome_label(), r.iterations);
    println!("x at round ends: {:?}", trace.per_round());
    println!("mean similarity {:.2}%", trace.mean_similarity_percent().unwrap());
    match std::env::args().nth(1) {
        Some(path) => {
            write_trace(path.as_ref(), trace).unwrap();
            println!("wrote {path}");
        }
        None => print!("{}", trace_to_string(trace).lines().take(8).collect::<Vec<_>>().join("\n") + "\n...\n"),
    }
}
