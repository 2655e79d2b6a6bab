//! Long-running walk on a boundary matrix whose known factorization has only
//! three terms. Not part of any test suite; run manually with
//! `cargo run --release -p cpfact-bench --example hard_boundary_5x5 [max_iter]`.

use std::time::Instant;

use cpfact::walk::TraceEvent;
use cpfact::{factorize, Certificate, WalkConfig};
use cpfact_bench::hard_boundary_5x5;

fn main() {
    let max_iterations = std::env::args().nth(1).map_or(1000, |s| s.parse().expect("iteration count"));
    let a = hard_boundary_5x5();
    let cfg = WalkConfig {
        max_iterations,
        emit_trace: true,
        ..WalkConfig::default()
    };
    let start = Instant::now();
    let report = factorize(&a, &cfg).expect("walk failed");
    for TraceEvent { iteration, objective, .. } in &report.trace {
        println!("iteration {iteration}: <A,P> = {objective}");
    }
    match report.certificate {
        Certificate::Factorization(f) => {
            println!("factorization with {} terms:", f.len());
            for (alpha, v) in f.terms() {
                println!("  {alpha} * {v}");
            }
        }
        Certificate::Witness(w) => println!("unexpected witness {w}"),
        Certificate::IterationLimit => println!("no certificate within {max_iterations} iterations"),
    }
    println!("{} iterations in {:?}", report.iterations, start.elapsed());
}
