//! Scalarizing functions.
//!
//! All three aggregations see the same projection geometry: `d1` is the
//! signed length of the projection of `f` onto the reference direction `w`,
//! `d2` the perpendicular distance to that direction. PBI penalizes `d2`
//! with a fixed `theta` (escalated on axis directions so extreme points are
//! pinned), the NBI-style form is the shifted max-component, and CoD adds a
//! rotation-weighted `d2` penalty on top of NBI: the per-direction factor
//! `r` and the per-dimension factor `k_m` enter as an explicit product so
//! either can be zeroed for ablations.

/// PBI penalty configuration: `theta` for general directions, `theta_axis`
/// for axis directions (exactly one nonzero component).
#[derive(Clone, Copy, Debug)]
pub struct PbiConfig {
    pub theta: f64,
    pub theta_axis: f64,
}

impl Default for PbiConfig {
    fn default() -> Self {
        Self {
            theta: 5.0,
            theta_axis: 1e6,
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Signed length of the projection of `f` onto `w`: `(f . w) / ||w||`.
/// Negative when `f` points against the reference direction; no clamping.
pub fn d1(f: &[f64], w: &[f64]) -> f64 {
    assert_eq!(f.len(), w.len(), "objective/reference length mismatch");
    let n = norm(w);
    assert!(n > 0.0, "reference direction must be nonzero");
    f.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / n
}

/// Perpendicular distance from `f` to the ray through `w`:
/// `|| f - d1(f, w) * w / ||w|| ||`, computed from the residual vector.
pub fn d2(f: &[f64], w: &[f64]) -> f64 {
    let proj = d1(f, w);
    let n = norm(w);
    let mut sum = 0.0;
    for (a, b) in f.iter().zip(w) {
        let resid = a - proj * b / n;
        sum += resid * resid;
    }
    sum.sqrt()
}

/// True when `w` has exactly one nonzero component.
fn is_axis(w: &[f64]) -> bool {
    w.iter().filter(|&&c| c != 0.0).count() == 1
}

/// PBI aggregation `d1 + theta * d2`, with the axis-direction escalation.
pub fn g_pbi(f: &[f64], w: &[f64], cfg: &PbiConfig) -> f64 {
    let theta = if is_axis(w) { cfg.theta_axis } else { cfg.theta };
    d1(f, w) + theta * d2(f, w)
}

/// NBI-style Tchebycheff aggregation `max_j (f_j - w_j)`; the reference
/// point is subtracted, not used as a direction, so no norm is involved.
pub fn g_nbi(f: &[f64], w: &[f64]) -> f64 {
    assert_eq!(f.len(), w.len(), "objective/reference length mismatch");
    f.iter()
        .zip(w)
        .map(|(a, b)| a - b)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Collaborative-decomposition aggregation
/// `g_nbi(f, w) + r * k_m * d2(f, w)`.
pub fn g_cod(f: &[f64], w: &[f64], r: f64, k_m: f64) -> f64 {
    g_nbi(f, w) + r * k_m * d2(f, w)
}
