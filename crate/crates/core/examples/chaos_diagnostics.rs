//! Lyapunov exponent and 0-1 test on reference series, then on the similarity
//! trace of an actual solver run.

use sfcm::chaos::{analyze, ChaosParams};
use sfcm::graph::families;
use sfcm::{solve, PolicyConfig};

fn main() {
    let params = ChaosParams::default();
    let mut x = 0.3141;
    let logistic: Vec<f64> = (0..5000)
        .map(|_| {
            x = 4.0 * x * (1.0 - x);
            x
        })
        .collect();
    let period7: Vec<f64> = (0..5000).map(|i| [0.1, 0.7, 0.3, 0.9, 0.2, 0.5, 0.8][i % 7]).collect();
    for (name, series) in [("logistic r=4", &logistic), ("period 7", &period7)] {
        let s = analyze(series, &params);
        println!("{name:<14} lambda={:?} K={:?}", s.lambda, s.k01);
    }

    let (g, _) = families::planted_cubic(200, 0);
    let r = solve(&g, &PolicyConfig::default());
    let trace = r.trace.as_ref().expect("trace is recorded by default");
    let s = analyze(&trace.values, &params);
    println!(
        "{} {}: {} snapshots, lambda={:?} K={:?} status={:?}",
        g.name(),
        r.outcome_label(),
        s.datapoints,
        s.lambda,
        s.k01,
        s.status
    );
}
