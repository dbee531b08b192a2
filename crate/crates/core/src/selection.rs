//! Environmental selection.
//!
//! One selection pass takes the parent/offspring union down to the target
//! population size: non-dominated sorting, adaptive normalization, vertical
//! association to the reference directions, a per-niche ranking, and a
//! rank-by-rank fill with a randomized tail. Niche ranking dispatches on the
//! configured [`RankingVariant`]: the default ranks boundary niches by the
//! collaborative scalarization and inner niches by their angle to the
//! simplex center `λ = (1/m, ..., 1/m)`, while the ablation variants
//! substitute a single scalarization everywhere.

use crate::algorithm::{InnerAngleOrder, RankingVariant};
use crate::individual::{dominates, Individual};
use crate::refgeom::{alpha_beta, Layer, ReferencePoint, ReferenceSet};
use crate::rng::RngStream;
use crate::scalarize::{d2, g_cod, g_nbi, g_pbi, PbiConfig};

/// Intercepts below this translated width count as degenerate.
const MIN_INTERCEPT_WIDTH: f64 = 1e-6;

/// Adaptive normalization statistics carried across generations.
///
/// `z_star` is the running componentwise minimum of every candidate seen;
/// `z_nadir` is the componentwise maximum over the current first front;
/// `intercepts` are the per-objective hyperplane intercepts in raw objective
/// units, so normalization divides by `intercepts[j] - z_star[j]`.
///
/// `extreme_points` remembers the raw objective vector behind each axis
/// extreme. Remembered vectors compete in later achievement-scalarization
/// rounds, so an axis extreme is only ever replaced by a strictly better
/// one. Without that ratchet a population that momentarily collapses in one
/// objective hands the hyperplane a junk extreme, the tiny intercept blows
/// the normalized axis up, and selection keeps collapsing the same axis.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationState {
    pub z_star: Vec<f64>,
    pub z_nadir: Vec<f64>,
    pub intercepts: Vec<f64>,
    pub extreme_points: Option<Vec<Vec<f64>>>,
}

impl NormalizationState {
    /// Empty state: the first update defines every statistic.
    pub fn new(m: usize) -> Self {
        NormalizationState {
            z_star: vec![f64::INFINITY; m],
            z_nadir: vec![f64::NEG_INFINITY; m],
            intercepts: vec![f64::INFINITY; m],
            extreme_points: None,
        }
    }

    /// State seeded from an initial population's componentwise extremes.
    pub fn init_from(population: &[Individual]) -> Self {
        assert!(!population.is_empty(), "empty population");
        let m = population[0].objectives.len();
        let mut state = Self::new(m);
        for ind in population {
            for j in 0..m {
                state.z_star[j] = state.z_star[j].min(ind.objectives[j]);
                state.z_nadir[j] = state.z_nadir[j].max(ind.objectives[j]);
            }
        }
        state.intercepts = state.z_nadir.clone();
        state
    }
}

/// Fast non-dominated sort. Returns index lists per front; front 0 is the
/// non-dominated set, and each front preserves input order.
pub fn nondominated_sort(population: &[Individual]) -> Vec<Vec<usize>> {
    let n = population.len();
    let mut beats: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut beaten_by = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dominates(&population[i].objectives, &population[j].objectives) {
                beats[i].push(j);
                beaten_by[j] += 1;
            } else if dominates(&population[j].objectives, &population[i].objectives) {
                beats[j].push(i);
                beaten_by[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| beaten_by[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &beats[i] {
                beaten_by[j] -= 1;
                if beaten_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Accumulate whole fronts until at least `n` candidates are collected.
pub fn select_candidates(fronts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let total: usize = fronts.iter().map(Vec::len).sum();
    assert!(total >= n, "only {total} individuals for a target of {n}");
    let mut s = Vec::with_capacity(n);
    for front in fronts {
        s.extend_from_slice(front);
        if s.len() >= n {
            break;
        }
    }
    s
}

/// Achievement scalarizing value of a translated point along one axis:
/// the axis weight is 1 and every other weight is 1e-6.
fn asf(objectives: &[f64], z_star: &[f64], axis: usize) -> f64 {
    objectives
        .iter()
        .zip(z_star)
        .enumerate()
        .map(|(j, (&f, &z))| {
            let w = if j == axis { 1.0 } else { 1e-6 };
            (f - z) / w
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Solve for the hyperplane `sum_j x_j / t_j = 1` through `m` translated
/// extreme points; returns the intercept widths `t`, or `None` when the
/// system is singular, ill-conditioned, or produces a non-finite solution.
fn hyperplane_intercepts(extremes: &[Vec<f64>]) -> Option<Vec<f64>> {
    let m = extremes.len();
    let mut a: Vec<Vec<f64>> = extremes.to_vec();
    let mut b = vec![1.0; m];
    // Gaussian elimination with partial pivoting on the m x m system
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..m {
            let factor = a[row][col] / a[col][col];
            // indexes two rows of `a` at once, so no iterator form without
            // split_at_mut contortions
            #[allow(clippy::needless_range_loop)]
            for k in col..m {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let mut v = b[row];
        for k in row + 1..m {
            v -= a[row][k] * x[k];
        }
        x[row] = v / a[row][row];
    }
    // A nearly singular system can still pass the pivot check while the
    // solution fails to reproduce the right-hand side; verify the residual.
    for extreme in extremes {
        let lhs: f64 = extreme.iter().zip(&x).map(|(&e, &v)| e * v).sum();
        if (lhs - 1.0).abs() > 1e-6 || lhs.is_nan() {
            return None;
        }
    }
    let t: Vec<f64> = x.iter().map(|&inv| 1.0 / inv).collect();
    if t.iter().all(|v| v.is_finite()) {
        Some(t)
    } else {
        None
    }
}

/// Update the normalization statistics from the candidate set and stamp the
/// normalized objectives onto every candidate.
///
/// The ideal point is a running minimum; the nadir estimate is rebuilt from
/// the current first front. Extreme points minimize the axis achievement
/// scalarization over the candidates and the remembered extremes from
/// earlier passes, and the hyperplane through them yields the intercepts.
/// Degenerate geometry falls back per objective to the nadir estimate, then
/// to the candidate maximum, then to a hair above the ideal.
pub fn update_normalization(
    population: &mut [Individual],
    candidates: &[usize],
    front0: &[usize],
    state: &mut NormalizationState,
) {
    assert!(!candidates.is_empty(), "empty candidate set");
    let m = state.z_star.len();
    for &i in candidates {
        debug_assert_eq!(population[i].objectives.len(), m);
        for j in 0..m {
            state.z_star[j] = state.z_star[j].min(population[i].objectives[j]);
        }
    }
    for j in 0..m {
        state.z_nadir[j] = front0
            .iter()
            .map(|&i| population[i].objectives[j])
            .fold(f64::NEG_INFINITY, f64::max);
    }

    let remembered = state.extreme_points.take().unwrap_or_default();
    let mut raw_extremes: Vec<Vec<f64>> = Vec::with_capacity(m);
    for axis in 0..m {
        let best = candidates
            .iter()
            .map(|&i| population[i].objectives.as_slice())
            .chain(remembered.iter().map(Vec::as_slice))
            .min_by(|x, y| {
                asf(x, &state.z_star, axis).total_cmp(&asf(y, &state.z_star, axis))
            })
            .unwrap();
        raw_extremes.push(best.to_vec());
    }
    let extremes: Vec<Vec<f64>> = raw_extremes
        .iter()
        .map(|point| {
            point
                .iter()
                .zip(&state.z_star)
                .map(|(&f, &z)| f - z)
                .collect()
        })
        .collect();
    state.extreme_points = Some(raw_extremes);

    let widths = match hyperplane_intercepts(&extremes) {
        Some(t) if t.iter().all(|&v| v > MIN_INTERCEPT_WIDTH) => t,
        _ => (0..m)
            .map(|j| {
                let mut width = state.z_nadir[j] - state.z_star[j];
                if width <= MIN_INTERCEPT_WIDTH {
                    width = candidates
                        .iter()
                        .map(|&i| population[i].objectives[j])
                        .fold(f64::NEG_INFINITY, f64::max)
                        - state.z_star[j];
                }
                width.max(MIN_INTERCEPT_WIDTH)
            })
            .collect(),
    };
    state.intercepts = (0..m).map(|j| state.z_star[j] + widths[j]).collect();

    for &i in candidates {
        let normalized: Vec<f64> = population[i]
            .objectives
            .iter()
            .zip(&state.z_star)
            .zip(&widths)
            .map(|((&f, &z), &w)| (f - z) / w)
            .collect();
        population[i].normalized = Some(normalized);
    }
}

/// Associate every candidate to the reference point minimizing the
/// perpendicular distance of its normalized objectives to the point's ray;
/// ties go to the lowest index.
pub fn associate(population: &mut [Individual], candidates: &[usize], refset: &ReferenceSet) {
    for &i in candidates {
        let best = {
            let f = population[i].normalized();
            let mut best = 0usize;
            let mut best_distance = f64::INFINITY;
            for (k, point) in refset.points.iter().enumerate() {
                let distance = d2(f, &point.w);
                if distance < best_distance {
                    best_distance = distance;
                    best = k;
                }
            }
            best
        };
        population[i].assoc = Some(best);
    }
}

/// Acute angle between a normalized objective vector and the simplex-center
/// direction. A vanishing objective vector counts as angle zero.
fn center_angle(f: &[f64]) -> f64 {
    // λ has equal components, so f·λ / (|f||λ|) reduces to Σf / (|f|·√m)
    let sum: f64 = f.iter().sum();
    let norm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-300 {
        return 0.0;
    }
    let cos = (sum.abs() / (norm * (f.len() as f64).sqrt())).clamp(0.0, 1.0);
    cos.acos()
}

/// Order the members of one niche, best first.
///
/// The primary key depends on the variant: the default scores boundary
/// niches by the collaborative scalarization and inner niches by center
/// angle in the configured direction; the starred variant scores inner
/// niches collaboratively too (computing the rotation factor on the fly);
/// the PBI/NBI ablations use those scalarizations everywhere. Ties fall
/// through to the smaller NBI value and then to input order.
pub fn rank_within_niche(
    population: &[Individual],
    members: &[usize],
    point: &ReferencePoint,
    refset: &ReferenceSet,
    variant: RankingVariant,
    inner_order: InnerAngleOrder,
) -> Vec<usize> {
    if members.is_empty() {
        return Vec::new();
    }
    let pbi_cfg = PbiConfig::default();
    let rotation = |point: &ReferencePoint| {
        point.r.unwrap_or_else(|| {
            let (al, be) = alpha_beta(&point.w);
            (al + be) / 2.0
        })
    };
    let keys: Vec<(f64, f64)> = members
        .iter()
        .map(|&i| {
            let f = population[i].normalized();
            let w = &point.w;
            let primary = match variant {
                RankingVariant::Pbi => g_pbi(f, w, &pbi_cfg),
                RankingVariant::Nbi => g_nbi(f, w),
                RankingVariant::CodStar => g_cod(f, w, rotation(point), refset.k_m),
                RankingVariant::Cod => match point.layer {
                    Layer::Boundary => g_cod(
                        f,
                        w,
                        point.r.expect("boundary reference point lacks a rotation factor"),
                        refset.k_m,
                    ),
                    Layer::Inner => {
                        let angle = center_angle(f);
                        match inner_order {
                            InnerAngleOrder::Min => angle,
                            InnerAngleOrder::Max => -angle,
                        }
                    }
                },
            };
            (primary, g_nbi(f, w))
        })
        .collect();
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&x, &y| {
        keys[x]
            .0
            .total_cmp(&keys[y].0)
            .then(keys[x].1.total_cmp(&keys[y].1))
    });
    order.into_iter().map(|k| members[k]).collect()
}

/// The per-niche rankings regrouped by place: rank `i` holds, for every
/// niche with more than `i` members, its `(i+1)`-th best member.
#[derive(Debug, Clone)]
pub struct RankPartition {
    pub ranks: Vec<Vec<usize>>,
}

/// Group candidates by association, order each niche, and collect the rank
/// partition. Also stamps each candidate's place within its niche.
pub fn build_rank_partition(
    population: &mut [Individual],
    candidates: &[usize],
    refset: &ReferenceSet,
    variant: RankingVariant,
    inner_order: InnerAngleOrder,
) -> RankPartition {
    let mut niches: Vec<Vec<usize>> = vec![Vec::new(); refset.len()];
    for &i in candidates {
        let w = population[i].assoc.expect("candidates must be associated first");
        niches[w].push(i);
    }
    let mut ordered: Vec<Vec<usize>> = Vec::with_capacity(niches.len());
    for (k, members) in niches.iter().enumerate() {
        let niche_order = rank_within_niche(
            population,
            members,
            &refset.points[k],
            refset,
            variant,
            inner_order,
        );
        for (place, &i) in niche_order.iter().enumerate() {
            population[i].cod_rank = Some(place);
        }
        ordered.push(niche_order);
    }
    let deepest = ordered.iter().map(Vec::len).max().unwrap_or(0);
    let mut ranks = Vec::with_capacity(deepest);
    for place in 0..deepest {
        ranks.push(
            ordered
                .iter()
                .filter_map(|niche| niche.get(place).copied())
                .collect(),
        );
    }
    RankPartition { ranks }
}

/// One full environmental-selection pass: reduce `union` to exactly `n`
/// survivors and update the normalization state in place.
///
/// Whole ranks are accepted while they fit strictly below `n`; the first
/// rank that would reach or exceed `n` is sampled uniformly without
/// replacement for the remainder (when it fits exactly, the sample spans the
/// whole rank). Survivors keep the annotations of this pass.
pub fn environmental_selection(
    mut union: Vec<Individual>,
    refset: &ReferenceSet,
    state: &mut NormalizationState,
    variant: RankingVariant,
    inner_order: InnerAngleOrder,
    n: usize,
    rng: &mut RngStream,
) -> Vec<Individual> {
    assert!(
        union.len() >= n,
        "cannot select {n} from {} individuals",
        union.len()
    );
    let fronts = nondominated_sort(&union);
    for (level, front) in fronts.iter().enumerate() {
        for &i in front {
            union[i].front = Some(level);
        }
    }
    let candidates = select_candidates(&fronts, n);
    update_normalization(&mut union, &candidates, &fronts[0], state);
    associate(&mut union, &candidates, refset);
    let partition = build_rank_partition(&mut union, &candidates, refset, variant, inner_order);

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    for rank in &partition.ranks {
        if chosen.len() + rank.len() < n {
            chosen.extend_from_slice(rank);
        } else {
            for pick in rng.sample_indices(rank.len(), n - chosen.len()) {
                chosen.push(rank[pick]);
            }
            break;
        }
    }
    assert_eq!(chosen.len(), n, "rank partition failed to cover the target");
    chosen.into_iter().map(|i| union[i].clone()).collect()
}
