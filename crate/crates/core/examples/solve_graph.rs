//! Solve an instance file given on the command line, or a few built-in graphs.
//!
//!     cargo run --example solve_graph -- path/to/graph.hcp

use sfcm::graph::families;
use sfcm::io::read_instance;
use sfcm::{solve, Graph, PolicyConfig};

fn main() {
    let graphs: Vec<Graph> = match std::env::args().nth(1) {
        Some(path) => vec![read_instance(path.as_ref()).unwrap_or_else(|e| panic!("{e}"))],
        None => vec![families::cycle(8), families::petersen(), families::star(4), families::planted_cubic(66, 1).0],
    };
    for g in &graphs {
        let r = solve(g, &PolicyConfig::default());
        println!(
            "{:>10}  V={:<4} E={:<4} {:<4} rounds={} expansions={} R_vH={} R_eps={}",
            g.name(),
            g.n(),
            g.edge_count(),
            r.outcome_label(),
            r.rounds,
            r.expansions,
            r.r_vh,
            r.r_err
        );
        if let Some(seq) = &r.sequence {
            println!("            {seq:?}");
        } else {
            println!("            longest partial path covered {} of {}", r.longest, g.n());
        }
    }
}
