//! Population initialization and offspring generation: simulated binary
//! crossover and bounded polynomial mutation.
//!
//! Selection pressure lives entirely in environmental selection, so mating
//! is plain uniform random pairing over a shuffled parent population. All
//! operators consume the run's [`RngStream`] in a fixed order, which makes
//! whole runs reproducible bit for bit. Objective evaluation goes through a
//! caller-supplied closure so the evaluation budget can be accounted
//! centrally.

use serde::{Deserialize, Serialize};

use crate::individual::Individual;
use crate::rng::RngStream;

/// Operator parameters for SBX crossover and polynomial mutation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    /// SBX distribution index (larger → children closer to parents)
    pub eta_c: f64,
    /// mutation distribution index
    pub eta_m: f64,
    /// probability that a parent pair is crossed at all
    pub p_c: f64,
    /// per-variable mutation probability
    pub p_m: f64,
}

impl VariationConfig {
    /// The standard parameterization: `eta_c = eta_m = 30`, `p_c = 1`,
    /// `p_m = 1/n` for `n` decision variables.
    pub fn standard(num_vars: usize) -> Self {
        VariationConfig {
            eta_c: 30.0,
            eta_m: 30.0,
            p_c: 1.0,
            p_m: 1.0 / num_vars as f64,
        }
    }

    pub(crate) fn validate(&self) {
        assert!(
            self.eta_c > 0.0 && self.eta_m > 0.0,
            "distribution indices must be positive"
        );
        assert!(
            (0.0..=1.0).contains(&self.p_c) && (0.0..=1.0).contains(&self.p_m),
            "crossover/mutation probabilities must lie in [0, 1]"
        );
    }
}

/// Draw `n` individuals uniformly from the decision box and evaluate them.
pub fn init_population<F>(
    bounds: &[(f64, f64)],
    n: usize,
    rng: &mut RngStream,
    evaluate: &mut F,
) -> Vec<Individual>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    assert!(n >= 2, "population size must be at least 2, got {n}");
    (0..n)
        .map(|_| {
            let x: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.uniform(lo, hi)).collect();
            let f = evaluate(&x);
            Individual::new(x, f)
        })
        .collect()
}

/// Simulated binary crossover of two parent decision vectors.
///
/// With probability `p_c` the pair is crossed: each variable participates
/// with probability 1/2, drawing a spread factor from the polynomial
/// distribution with index `eta_c` and producing two symmetric child values,
/// clipped to the bounds and assigned to the children in random order (the
/// conventional per-variable swap, which is what makes the operator
/// recombine coordinates rather than perturb each parent in place).
/// Non-participating (or identical) variables are copied through, so
/// `p1 == p2` always yields exact copies.
pub fn sbx_crossover(
    p1: &[f64],
    p2: &[f64],
    bounds: &[(f64, f64)],
    cfg: &VariationConfig,
    rng: &mut RngStream,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(p1.len(), p2.len(), "parent length mismatch");
    assert_eq!(p1.len(), bounds.len(), "bounds length mismatch");
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.next_f64() >= cfg.p_c {
        return (c1, c2);
    }
    let exponent = 1.0 / (cfg.eta_c + 1.0);
    for i in 0..p1.len() {
        if rng.next_f64() >= 0.5 || p1[i] == p2[i] {
            continue;
        }
        let u = rng.next_f64();
        let beta = if u <= 0.5 {
            (2.0 * u).powf(exponent)
        } else {
            (1.0 / (2.0 * (1.0 - u))).powf(exponent)
        };
        let (lo, hi) = bounds[i];
        let lower = (0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i])).clamp(lo, hi);
        let upper = (0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i])).clamp(lo, hi);
        if rng.next_f64() < 0.5 {
            c1[i] = lower;
            c2[i] = upper;
        } else {
            c1[i] = upper;
            c2[i] = lower;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation: each variable is perturbed with probability
/// `p_m` by a draw from the bounded polynomial distribution with index
/// `eta_m`, which cannot leave the decision box (a variable sitting on a
/// bound can only move inward).
pub fn polynomial_mutation(
    x: &[f64],
    bounds: &[(f64, f64)],
    cfg: &VariationConfig,
    rng: &mut RngStream,
) -> Vec<f64> {
    assert_eq!(x.len(), bounds.len(), "bounds length mismatch");
    let exponent = 1.0 / (cfg.eta_m + 1.0);
    let mut out = x.to_vec();
    for i in 0..out.len() {
        if rng.next_f64() >= cfg.p_m {
            continue;
        }
        let (lo, hi) = bounds[i];
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        let u = rng.next_f64();
        let delta_lo = (out[i] - lo) / range;
        let delta_hi = (hi - out[i]) / range;
        let delta_q = if u < 0.5 {
            let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta_lo).powf(cfg.eta_m + 1.0);
            val.powf(exponent) - 1.0
        } else {
            let val =
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta_hi).powf(cfg.eta_m + 1.0);
            1.0 - val.powf(exponent)
        };
        out[i] = (out[i] + delta_q * range).clamp(lo, hi);
    }
    out
}

/// Produce exactly `|parents|` evaluated offspring.
///
/// Parent indices are shuffled and paired consecutively; an odd population
/// pairs the leftover parent with a uniformly drawn mate. Every SBX child is
/// mutated; the surplus child of an odd population is dropped before
/// evaluation, so the number of objective evaluations equals the population
/// size exactly.
pub fn create_offspring_population<F>(
    parents: &[Individual],
    bounds: &[(f64, f64)],
    cfg: &VariationConfig,
    rng: &mut RngStream,
    evaluate: &mut F,
) -> Vec<Individual>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    cfg.validate();
    let n = parents.len();
    assert!(n >= 2, "need at least 2 parents");
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);

    let mut children: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let cross = |a: usize, b: usize, children: &mut Vec<Vec<f64>>, rng: &mut RngStream| {
        let (c1, c2) = sbx_crossover(&parents[a].decision, &parents[b].decision, bounds, cfg, rng);
        children.push(polynomial_mutation(&c1, bounds, cfg, rng));
        children.push(polynomial_mutation(&c2, bounds, cfg, rng));
    };
    for pair in 0..n / 2 {
        cross(order[2 * pair], order[2 * pair + 1], &mut children, rng);
    }
    if n % 2 == 1 {
        let mate = rng.below(n);
        cross(order[n - 1], mate, &mut children, rng);
        children.truncate(n);
    }

    children
        .into_iter()
        .map(|x| {
            let f = evaluate(&x);
            Individual::new(x, f)
        })
        .collect()
}
