//! DTLZ1–4 evaluators and the convex transform.
//!
//! All variants use `m - 1` position variables followed by `k` distance
//! variables (`k = 5` for DTLZ1, `k = 10` otherwise), everything in `[0, 1]`.
//! DTLZ1/3 share the highly multimodal Rastrigin-style distance function;
//! DTLZ2/4 use the unimodal sphere. DTLZ4 additionally biases the position
//! variables with an exponent of 100, crowding solutions toward a corner.

use std::f64::consts::PI;

pub(crate) const DTLZ4_BIAS: f64 = 100.0;

pub(crate) fn num_distance_vars(variant: u8) -> usize {
    if variant == 1 {
        5
    } else {
        10
    }
}

fn g_rastrigin(tail: &[f64]) -> f64 {
    let k = tail.len() as f64;
    100.0
        * (k + tail
            .iter()
            .map(|&x| (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos())
            .sum::<f64>())
}

fn g_sphere(tail: &[f64]) -> f64 {
    tail.iter().map(|&x| (x - 0.5).powi(2)).sum()
}

pub(crate) fn evaluate(variant: u8, m: usize, x: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), m - 1 + num_distance_vars(variant));
    let tail = &x[m - 1..];
    if variant == 1 {
        let g = g_rastrigin(tail);
        return (1..=m)
            .map(|j| {
                let mut f = 0.5 * (1.0 + g);
                for &xi in &x[..m - j] {
                    f *= xi;
                }
                if j > 1 {
                    f *= 1.0 - x[m - j];
                }
                f
            })
            .collect();
    }
    let g = if variant == 3 {
        g_rastrigin(tail)
    } else {
        g_sphere(tail)
    };
    let pos: Vec<f64> = x[..m - 1]
        .iter()
        .map(|&xi| {
            if variant == 4 {
                xi.powf(DTLZ4_BIAS)
            } else {
                xi
            }
        })
        .collect();
    (1..=m)
        .map(|j| {
            let mut f = 1.0 + g;
            for &p in &pos[..m - j] {
                f *= (p * PI / 2.0).cos();
            }
            if j > 1 {
                f *= (pos[m - j] * PI / 2.0).sin();
            }
            f
        })
        .collect()
}

/// The convex variant maps a DTLZ objective vector through
/// `f_j -> f_j^4` for all but the last objective and `f_m -> f_m^2`.
pub(crate) fn convex_transform(f: &mut [f64]) {
    let m = f.len();
    for v in &mut f[..m - 1] {
        *v = v.powi(4);
    }
    f[m - 1] = f[m - 1] * f[m - 1];
}
