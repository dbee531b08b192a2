//! Dominated hypervolume, exact (dimension sweep) and Monte Carlo.

use crate::error::CodeaError;
use crate::individual::Individual;
use crate::problems::ProblemDef;
use crate::rng::RngStream;

/// Default sample count for the Monte Carlo estimator.
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

/// Fixed seed for metric-side Monte Carlo. Deliberately independent of any
/// run seed so that indicator noise never couples to algorithm behaviour and
/// repeated scoring of the same population is bit-identical.
const METRIC_SEED: u64 = 0xC0DEA;

/// The scoring convention used throughout: hypervolume of the normalized
/// population against the reference point `(1.1, ..., 1.1)`, divided by
/// `1.1^m` so a population covering the whole box scores 1.
#[derive(Debug, Clone)]
pub struct HvProtocol {
    reference: Vec<f64>,
    divisor: f64,
}

impl HvProtocol {
    pub fn for_objectives(m: usize) -> Self {
        assert!(m >= 1, "need at least one objective");
        HvProtocol {
            reference: vec![1.1; m],
            divisor: 1.1f64.powi(m as i32),
        }
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    pub fn divisor(&self) -> f64 {
        self.divisor
    }
}

fn check_arity(points: &[Vec<f64>], m: usize) {
    assert!(
        points.iter().all(|p| p.len() == m),
        "objective vector arity does not match the reference point"
    );
}

/// Exact dominated hypervolume of a minimization set against `reference`.
///
/// Points that do not strictly dominate the reference contribute nothing.
/// Recursive sweep over the last objective: slices between consecutive
/// attained levels are weighted by the hypervolume of the projected points
/// active in that slice. Intended for `m <= 4`; beyond that use
/// [`hypervolume_mc`].
pub fn hypervolume_exact(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let m = reference.len();
    assert!((1..=4).contains(&m), "exact hypervolume supports 1..=4 objectives");
    check_arity(points, m);
    let contributing: Vec<Vec<f64>> = points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(&v, &r)| v < r))
        .cloned()
        .collect();
    sweep(prune(contributing), reference)
}

fn sweep(points: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let d = reference.len();
    if d == 1 {
        let best = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return reference[0] - best;
    }
    let mut levels: Vec<f64> = points.iter().map(|p| p[d - 1]).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut total = 0.0;
    let mut upper = reference[d - 1];
    for &level in levels.iter().rev() {
        let active: Vec<Vec<f64>> = points
            .iter()
            .filter(|p| p[d - 1] <= level)
            .map(|p| p[..d - 1].to_vec())
            .collect();
        total += (upper - level) * sweep(prune(active), &reference[..d - 1]);
        upper = level;
    }
    total
}

/// Drop points weakly dominated by another (keeping the first of exact
/// duplicates). The dominated volume is unchanged; the recursion just gets
/// much smaller inputs.
fn prune(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut keep = Vec::with_capacity(points.len());
    'candidates: for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let covers = q.iter().zip(p).all(|(a, b)| a <= b);
            if covers && (q != p || j < i) {
                continue 'candidates;
            }
        }
        keep.push(p.clone());
    }
    keep
}

/// A Monte Carlo volume estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Monte Carlo hypervolume: uniform samples in the axis-aligned box spanned
/// by the componentwise minimum of the contributing points and `reference`;
/// the estimate is box volume times the dominated fraction.
pub fn hypervolume_mc(
    points: &[Vec<f64>],
    reference: &[f64],
    samples: usize,
    rng: &mut RngStream,
) -> HvEstimate {
    let m = reference.len();
    check_arity(points, m);
    assert!(samples >= 10_000, "need at least 10^4 samples, got {samples}");
    let contributing: Vec<&Vec<f64>> = points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(&v, &r)| v < r))
        .collect();
    if contributing.is_empty() {
        return HvEstimate { value: 0.0, stderr: 0.0 };
    }
    let lower: Vec<f64> = (0..m)
        .map(|j| {
            contributing
                .iter()
                .map(|p| p[j])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let box_volume: f64 = lower.iter().zip(reference).map(|(&lo, &r)| r - lo).product();
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for j in 0..m {
            sample[j] = rng.uniform(lower[j], reference[j]);
        }
        let dominated = contributing
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(&v, &s)| v <= s));
        if dominated {
            hits += 1;
        }
    }
    let fraction = hits as f64 / samples as f64;
    HvEstimate {
        value: box_volume * fraction,
        stderr: box_volume * (fraction * (1.0 - fraction) / samples as f64).sqrt(),
    }
}

/// Normalized hypervolume score of a population under the standard protocol.
///
/// Objectives are mapped through `(f_j - ideal_j) / (nadir_j - ideal_j)`
/// using the problem's analytic bounds, scored against `(1.1, ..., 1.1)`,
/// and divided by `1.1^m`. Exact for `m <= 4`, Monte Carlo with
/// [`DEFAULT_MC_SAMPLES`] and a fixed metric seed otherwise.
pub fn normalized_hv(population: &[Individual], problem: &ProblemDef) -> Result<f64, CodeaError> {
    let objectives: Vec<Vec<f64>> = population.iter().map(|i| i.objectives.clone()).collect();
    normalized_hv_objectives(&objectives, problem)
}

/// [`normalized_hv`] on bare objective vectors (e.g. read back from a CSV).
pub fn normalized_hv_objectives(
    objectives: &[Vec<f64>],
    problem: &ProblemDef,
) -> Result<f64, CodeaError> {
    let (ideal, nadir) = problem.known_hv_bounds();
    normalized_hv_from_bounds(objectives, ideal, nadir, DEFAULT_MC_SAMPLES)
}

/// Fully parameterized variant: explicit ideal/nadir pair and Monte Carlo
/// sample count (the sample count is ignored on the exact path).
pub fn normalized_hv_from_bounds(
    objectives: &[Vec<f64>],
    ideal: &[f64],
    nadir: &[f64],
    samples: usize,
) -> Result<f64, CodeaError> {
    let m = ideal.len();
    assert_eq!(m, nadir.len(), "ideal/nadir arity mismatch");
    check_arity(objectives, m);
    for j in 0..m {
        if nadir[j] <= ideal[j] || nadir[j].is_nan() || ideal[j].is_nan() {
            return Err(CodeaError::InvalidProblem(format!(
                "degenerate hypervolume bounds in objective {}: ideal {} vs nadir {}",
                j + 1,
                ideal[j],
                nadir[j]
            )));
        }
    }
    let normalized: Vec<Vec<f64>> = objectives
        .iter()
        .map(|f| {
            (0..m)
                .map(|j| (f[j] - ideal[j]) / (nadir[j] - ideal[j]))
                .collect()
        })
        .collect();
    let protocol = HvProtocol::for_objectives(m);
    let raw = if m <= 4 {
        hypervolume_exact(&normalized, protocol.reference())
    } else {
        let mut rng = RngStream::new(METRIC_SEED);
        hypervolume_mc(&normalized, protocol.reference(), samples, &mut rng).value
    };
    Ok(raw / protocol.divisor())
}
