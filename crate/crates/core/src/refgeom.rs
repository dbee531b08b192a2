//! Reference-set geometry.
//!
//! Subproblem directions are Das–Dennis simplex-lattice points. For up to
//! five objectives a single lattice is used; beyond that a two-layer
//! construction keeps the set size manageable: an outer ("boundary") lattice
//! plus a second lattice shrunk halfway toward the simplex centroid
//! ("inner"). Each boundary point carries a rotation factor `r` blending its
//! distance-to-edge and distance-to-vertex terms; the whole set carries the
//! objective-count factor `k_m`, a logistic ramp in the number of
//! objectives. The CoD scalarization multiplies the two at use time — they
//! are kept separate so ablation variants can zero either one.

use crate::error::CodeaError;

/// Which construction layer a reference point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    Boundary,
    Inner,
}

/// A unit-simplex direction with its layer tag and, for boundary points,
/// the rotation factor `r = (alpha + beta) / 2`.
#[derive(Clone, Debug)]
pub struct ReferencePoint {
    pub w: Vec<f64>,
    pub layer: Layer,
    pub r: Option<f64>,
}

/// A complete direction set for one objective count.
#[derive(Clone, Debug)]
pub struct ReferenceSet {
    pub points: Vec<ReferencePoint>,
    pub m: usize,
    /// Objective-count rotation factor `k_m`; shared by all boundary points.
    pub k_m: f64,
}

/// Das–Dennis simplex lattice with `h` divisions in `m` dimensions:
/// all points `c / h` where `c` is a nonnegative integer composition of `h`
/// into `m` parts. Points are emitted in lexicographically descending
/// coordinate order (first coordinate from 1 down to 0, ties broken
/// recursively), which fixes niche tie-breaking downstream.
pub fn das_dennis(m: usize, h: usize) -> Result<Vec<Vec<f64>>, CodeaError> {
    if m < 2 {
        return Err(CodeaError::InvalidArgument(format!(
            "das_dennis requires m >= 2, got {m}"
        )));
    }
    if h == 0 {
        return Err(CodeaError::InvalidArgument(
            "das_dennis requires at least one division".into(),
        ));
    }
    let mut out = Vec::new();
    let mut counts = Vec::with_capacity(m);
    compose(&mut counts, h, m, h, &mut out);
    Ok(out)
}

fn compose(prefix: &mut Vec<usize>, remaining: usize, dims_left: usize, h: usize, out: &mut Vec<Vec<f64>>) {
    if dims_left == 1 {
        prefix.push(remaining);
        out.push(prefix.iter().map(|&c| c as f64 / h as f64).collect());
        prefix.pop();
        return;
    }
    for c in (0..=remaining).rev() {
        prefix.push(c);
        compose(prefix, remaining - c, dims_left - 1, h, out);
        prefix.pop();
    }
}

/// Objective-count rotation factor `k_m = m / (1 + e^(-m(m - 5.5)))`:
/// near zero for few objectives, saturating to `m` for many.
pub fn objective_rotation_factor(m: usize) -> f64 {
    let mf = m as f64;
    mf / (1.0 + (-mf * (mf - 5.5)).exp())
}

/// Rotation-factor components for one simplex point:
/// `alpha = 1 - min_j(w_j) * m` (distance to the nearest simplex edge) and
/// `beta = (1 - max_j(w_j)) * 2` (distance to the nearest vertex).
pub fn alpha_beta(w: &[f64]) -> (f64, f64) {
    assert!(!w.is_empty(), "empty reference point");
    let m = w.len() as f64;
    let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (1.0 - min * m, (1.0 - max) * 2.0)
}

impl ReferenceSet {
    /// Single Das–Dennis lattice; every point is tagged `Boundary` and gets
    /// a rotation factor.
    pub fn single_layer(m: usize, h: usize) -> Result<Self, CodeaError> {
        let points = das_dennis(m, h)?
            .into_iter()
            .map(|w| ReferencePoint {
                w,
                layer: Layer::Boundary,
                r: None,
            })
            .collect();
        let mut set = Self {
            points,
            m,
            k_m: objective_rotation_factor(m),
        };
        set.fill_rotation_factors();
        Ok(set)
    }

    /// Two-layer construction: an outer lattice with `h1` divisions
    /// (boundary) followed by an `h2` lattice mapped through
    /// `w -> w/2 + 1/(2m)`, i.e. shrunk halfway toward the centroid (inner).
    /// Inner points carry no rotation factor.
    pub fn two_layer(m: usize, h1: usize, h2: usize) -> Result<Self, CodeaError> {
        let mut points: Vec<ReferencePoint> = das_dennis(m, h1)?
            .into_iter()
            .map(|w| ReferencePoint {
                w,
                layer: Layer::Boundary,
                r: None,
            })
            .collect();
        let shift = 1.0 / (2.0 * m as f64);
        points.extend(das_dennis(m, h2)?.into_iter().map(|w| ReferencePoint {
            w: w.into_iter().map(|c| c / 2.0 + shift).collect(),
            layer: Layer::Inner,
            r: None,
        }));
        let mut set = Self {
            points,
            m,
            k_m: objective_rotation_factor(m),
        };
        set.fill_rotation_factors();
        Ok(set)
    }

    /// The standard layout for a supported objective count: single layer
    /// with 12 / 6 divisions for m = 3 / 5, two layers (3, 2) for m = 8 and
    /// 10, and (2, 1) for m = 15 — giving 91, 210, 156, 275 and 135 points.
    pub fn for_objectives(m: usize) -> Result<Self, CodeaError> {
        match m {
            3 => Self::single_layer(3, 12),
            5 => Self::single_layer(5, 6),
            8 => Self::two_layer(8, 3, 2),
            10 => Self::two_layer(10, 3, 2),
            15 => Self::two_layer(15, 2, 1),
            _ => Err(CodeaError::InvalidArgument(format!(
                "no standard reference-set layout for m = {m}; \
                 use single_layer or two_layer with explicit divisions"
            ))),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn fill_rotation_factors(&mut self) {
        for p in &mut self.points {
            if p.layer == Layer::Boundary {
                let (a, b) = alpha_beta(&p.w);
                p.r = Some((a + b) / 2.0);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::rng::RngStream;

    /// Binomial C(n, k) in exact integer arithmetic (test oracle for
    /// lattice sizes: a lattice with h divisions in m dimensions has
    /// C(h + m - 1, m - 1) points).
    fn binomial(n: u64, k: u64) -> u64 {
        let k = k.min(n - k);
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num *= (n - i) as u128;
            den *= (i + 1) as u128;
        }
        (num / den) as u64
    }

    #[test]
    fn lattice_sizes_match_binomial_exhaustively() {
        for m in 2..=6 {
            for h in 1..=8 {
                let pts = das_dennis(m, h).unwrap();
                assert_eq!(
                    pts.len() as u64,
                    binomial((h + m - 1) as u64, (m - 1) as u64),
                    "m={m} h={h}"
                );
            }
        }
    }

    #[test]
    fn lattice_points_sum_to_one_and_sit_in_range() {
        for (m, h) in [(3, 12), (5, 6), (8, 3), (10, 2)] {
            for w in das_dennis(m, h).unwrap() {
                assert_relative_eq!(w.iter().sum::<f64>(), 1.0, max_relative = 1e-12);
                assert!(w.iter().all(|&c| (0.0..=1.0).contains(&c)));
            }
        }
    }

    #[test]
    fn lattice_order_is_descending_lexicographic() {
        let pts = das_dennis(4, 5).unwrap();
        for pair in pts.windows(2) {
            assert!(
                pair[0] > pair[1],
                "not strictly descending: {:?} then {:?}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn two_division_three_objective_lattice_is_exact() {
        let pts = das_dennis(3, 2).unwrap();
        let expected: Vec<Vec<f64>> = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.5, 0.5, 0.0],
            vec![0.5, 0.0, 0.5],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.5, 0.5],
            vec![0.0, 0.0, 1.0],
        ];
        assert_eq!(pts, expected);
    }

    #[test]
    fn one_division_two_objective_lattice_is_exact() {
        assert_eq!(
            das_dennis(2, 1).unwrap(),
            vec![vec![1.0, 0.0], vec![0.0, 1.0]]
        );
    }

    #[test]
    fn invalid_arguments_are_rejected() {
        assert!(das_dennis(1, 4).is_err());
        assert!(das_dennis(3, 0).is_err());
        assert!(ReferenceSet::for_objectives(7).is_err());
    }

    #[test]
    fn standard_layouts_have_published_sizes() {
        for (m, expect) in [(3, 91), (5, 210), (8, 156), (10, 275), (15, 135)] {
            let set = ReferenceSet::for_objectives(m).unwrap();
            assert_eq!(set.len(), expect, "m={m}");
            assert_eq!(set.m, m);
        }
    }

    #[test]
    fn two_layer_counts_and_layer_split() {
        let set = ReferenceSet::two_layer(8, 3, 2).unwrap();
        assert_eq!(set.len(), 156);
        let boundary = set.points.iter().filter(|p| p.layer == Layer::Boundary).count();
        assert_eq!(boundary, 120);
        // boundary block first, inner block second
        assert!(set.points[..120].iter().all(|p| p.layer == Layer::Boundary));
        assert!(set.points[120..].iter().all(|p| p.layer == Layer::Inner));

        let set = ReferenceSet::two_layer(10, 3, 2).unwrap();
        assert_eq!(set.len(), 275);
    }

    #[test]
    fn inner_layer_is_shrunk_toward_centroid() {
        let set = ReferenceSet::two_layer(8, 3, 2).unwrap();
        let first_inner = &set.points[120];
        // image of (1, 0, ..., 0): 1/2 + 1/16 = 0.5625, rest 1/16 = 0.0625
        assert_relative_eq!(first_inner.w[0], 0.5625, max_relative = 1e-15);
        for &c in &first_inner.w[1..] {
            assert_relative_eq!(c, 0.0625, max_relative = 1e-15);
        }
        // inner points still lie on the unit simplex
        for p in &set.points[120..] {
            assert_relative_eq!(p.w.iter().sum::<f64>(), 1.0, max_relative = 1e-12);
            assert!(p.r.is_none());
        }
    }

    #[test]
    fn rotation_factor_golden_values_m3() {
        // vertex: alpha = 1, beta = 0, r = 1/2
        assert_eq!(alpha_beta(&[1.0, 0.0, 0.0]), (1.0, 0.0));
        // centroid: alpha = 0, beta = 4/3, r = 2/3
        let (a, b) = alpha_beta(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        assert_relative_eq!(a, 0.0, epsilon = 1e-15);
        assert_relative_eq!(b, 4.0 / 3.0, max_relative = 1e-15);
        // (2/3, 1/6, 1/6): alpha = 1/2, beta = 2/3, r = 7/12
        let (a, b) = alpha_beta(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
        assert_relative_eq!(a, 0.5, max_relative = 1e-12);
        assert_relative_eq!(b, 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!((a + b) / 2.0, 7.0 / 12.0, max_relative = 1e-12);
        // edge midpoint: alpha = 1, beta = 1, r = 1
        assert_eq!(alpha_beta(&[0.5, 0.5, 0.0]), (1.0, 1.0));

        // the same values through the lattice itself (exact in f64: the
        // H = 12 lattice stores these points as exact dyadic/ternary ratios)
        let set = ReferenceSet::for_objectives(3).unwrap();
        let r_of = |target: &[f64]| {
            set.points
                .iter()
                .find(|p| {
                    p.w.iter()
                        .zip(target)
                        .all(|(a, b)| (a - b).abs() < 1e-12)
                })
                .and_then(|p| p.r)
                .unwrap()
        };
        assert_eq!(r_of(&[1.0, 0.0, 0.0]), 0.5);
        assert_relative_eq!(
            r_of(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]),
            2.0 / 3.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(r_of(&[0.5, 0.5, 0.0]), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn rotation_factor_component_ranges_all_supported_m() {
        for m in [3, 5, 8, 10, 15] {
            let set = ReferenceSet::for_objectives(m).unwrap();
            for p in &set.points {
                let (a, b) = alpha_beta(&p.w);
                assert!((-1e-12..=1.0 + 1e-12).contains(&a), "alpha {a} m={m}");
                assert!((0.0..2.0).contains(&b), "beta {b} m={m}");
                if let Some(r) = p.r {
                    assert_relative_eq!(r, (a + b) / 2.0, max_relative = 1e-15);
                }
            }
        }
    }

    #[test]
    fn rotation_factor_is_permutation_invariant() {
        let mut rng = RngStream::new(31);
        for _ in 0..200 {
            let m = 3 + rng.below(5);
            let mut w: Vec<f64> = (0..m).map(|_| rng.next_f64()).collect();
            let sum: f64 = w.iter().sum();
            w.iter_mut().for_each(|c| *c /= sum);
            let (a0, b0) = alpha_beta(&w);
            rng.shuffle(&mut w);
            let (a1, b1) = alpha_beta(&w);
            assert_eq!(a0.to_bits(), a1.to_bits());
            assert_eq!(b0.to_bits(), b1.to_bits());
        }
    }

    #[test]
    fn objective_rotation_factor_golden_values() {
        // high-precision values from a 30-digit evaluation of the logistic
        assert_relative_eq!(
            objective_rotation_factor(2),
            1.8221023888012908e-3,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            objective_rotation_factor(3),
            1.6583359107707986e-3,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            objective_rotation_factor(5),
            0.37929090010621774,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            objective_rotation_factor(8),
            7.999999983510771,
            max_relative = 1e-14
        );
        // for m = 10 and 15 the logistic term is below one ulp of m
        assert_eq!(objective_rotation_factor(10), 10.0);
        assert_eq!(objective_rotation_factor(15), 15.0);
    }

    #[test]
    fn reference_set_stores_k_m_not_premultiplied() {
        let set = ReferenceSet::for_objectives(3).unwrap();
        assert_relative_eq!(set.k_m, 1.6583359107707986e-3, max_relative = 1e-14);
        // r values stay O(1); k_m is not folded into them
        assert!(set.points.iter().all(|p| p.r.unwrap() <= 1.0 + 1e-12));
    }

    #[test]
    fn standard_layouts_build_quickly() {
        let start = std::time::Instant::now();
        for m in [3, 5, 8, 10, 15] {
            ReferenceSet::for_objectives(m).unwrap();
        }
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }
}
