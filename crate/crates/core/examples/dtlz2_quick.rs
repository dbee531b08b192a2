//! Minimal end-to-end run: DTLZ2 with three objectives, default settings.
//!
//! ```sh
//! cargo run --release --example dtlz2_quick
//! ```

use codea::{run, AlgoConfig, ProblemDef};

fn main() {
    let problem = ProblemDef::by_id("dtlz2", 3).expect("known problem");
    let mut cfg = AlgoConfig::for_problem(&problem, 250, 1);
    cfg.hv_every = Some(50);
    let result = run(&problem, &cfg).expect("run");
    for stat in &result.hv_history {
        println!("generation {:>4}  normalized hv {:.6}", stat.generation, stat.hv);
    }
    println!(
        "{} evaluations in {:.2?}",
        result.evaluations, result.elapsed
    );
}
