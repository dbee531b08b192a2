//! Shared fixtures for the criterion benchmarks: deterministic populations
//! in the shapes the pipeline stages actually see.

use codea::variation::init_population;
use codea::{Individual, ProblemDef, RngStream};

/// Individuals with objectives drawn uniformly from `[0, 1)^m` and empty
/// decision vectors — enough for sorting and selection benchmarks.
pub fn random_population(n: usize, m: usize, seed: u64) -> Vec<Individual> {
    let mut rng = RngStream::new(seed);
    (0..n)
        .map(|_| {
            let objectives = (0..m).map(|_| rng.next_f64()).collect();
            Individual::new(Vec::new(), objectives)
        })
        .collect()
}

/// A freshly initialized population of a named benchmark problem, evaluated
/// through its real objective functions.
pub fn evaluated_population(problem: &str, m: usize, n: usize, seed: u64) -> Vec<Individual> {
    let def = ProblemDef::by_id(problem, m).expect("known problem id");
    let mut rng = RngStream::new(seed);
    let mut evaluate = |x: &[f64]| def.evaluate(x);
    init_population(def.bounds(), n, &mut rng, &mut evaluate)
}
