//! Drive the reconstruction engine directly with auditing on: every step is
//! followed by a full invariant check and every rollback is compared with
//! the checkpoint's snapshot.

use sfcm::graph::families;
use sfcm::mapping::{MappingStrategy, RotationDfs};
use sfcm::reconstruct::{EngineConfig, SolverState};

fn main() {
    let (g, _) = families::planted_cubic(40, 9);
    let le = RotationDfs::default().map(&g, 0).unwrap().le;
    let mut state = SolverState::new(&g, le, EngineConfig { audit: true, ..EngineConfig::default() });
    for &(u, v) in g.edges().iter().take(20) {
        match state.reconstruct((u, v)) {
            Ok(seq) => {
                println!("seed ({u},{v}): sequence of {} vertices", seq.len());
                break;
            }
            Err(signal) => println!("seed ({u},{v}): {signal}"),
        }
    }
    let c = state.counters;
    println!(
        "expansions={} steps={} errors={} cut-vertex computations={} audits={}",
        c.expansions, c.steps, c.errors, c.vh_computations, c.audits
    );
    state.check_invariants().unwrap();
}
