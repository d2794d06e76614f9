//! Compare the initial path covers produced by the two mapping strategies.

use sfcm::graph::families;
use sfcm::mapping::{cost_k, Greedy, MappingStrategy, RotationDfs};

fn main() {
    let strategies: [&dyn MappingStrategy; 2] = [&RotationDfs::default(), &Greedy];
    for n in [30, 66, 150] {
        let (g, _) = families::planted_cubic(n, 5);
        for s in strategies {
            let out = s.map(&g, 0).unwrap();
            let paths = g.n() - out.le.len();
            println!(
                "{:>10} {:<8} edges={:<4} paths={:<3} M_eps={}",
                g.name(),
                s.name(),
                out.le.len(),
                paths,
                out.m_err
            );
        }
    }
    // normalized spread of a set of counters
    println!("cost_K([0, 1, 4]) = {}", cost_k(&[0.0, 1.0, 4.0]).unwrap());
}
