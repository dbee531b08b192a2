//! WFG1–9 evaluators.
//!
//! Each problem is a pipeline over the toolkit's building blocks: the raw
//! vector is normalized to `[0, 1]`, pushed through a problem-specific
//! sequence of bias/shift/reduction transformations down to `m` underlying
//! parameters, and finished with a shape family on the scaled simplex
//! (`f_j = x_m + 2j * h_j`). Every transition maps the whole previous-stage
//! vector, so stages that read neighbours (the parameter-dependent biases)
//! must see the stage input, not partially transformed values.
//!
//! Layout: `k = 2(m - 1)` position-related variables, `l = 20`
//! distance-related, variable `i` ranging over `[0, 2i]` (1-based).

pub(crate) const NUM_DISTANCE_VARS: usize = 20;

const PARAM_A: f64 = 0.98 / 49.98;

// ---- transformations ----

fn b_poly(y: f64, a: f64) -> f64 {
    y.powf(a)
}

fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a + 0.0f64.min((y - b).floor()) * a * (b - y) / b
        - 0.0f64.min((c - y).floor()) * (1.0 - a) * (y - c) / (1.0 - c);
    // the exact expression can land a few ulps outside [0, 1]
    v.clamp(0.0, 1.0)
}

fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    y.powf(b + (c - b) * v)
}

fn s_linear(y: f64, a: f64) -> f64 {
    (y - a).abs() / ((a - y).floor() + a).abs()
}

fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b)
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    (1.0 + ((4.0 * a + 2.0) * std::f64::consts::PI * (0.5 - t)).cos() + 4.0 * b * t * t)
        / (b + 2.0)
}

fn r_sum(ys: &[f64], ws: &[f64]) -> f64 {
    debug_assert_eq!(ys.len(), ws.len());
    let num: f64 = ys.iter().zip(ws).map(|(y, w)| y * w).sum();
    num / ws.iter().sum::<f64>()
}

fn mean(ys: &[f64]) -> f64 {
    ys.iter().sum::<f64>() / ys.len() as f64
}

fn r_nonsep(ys: &[f64], a: usize) -> f64 {
    let n = ys.len();
    let mut num = 0.0;
    for j in 0..n {
        num += ys[j];
        for k in 0..a.saturating_sub(1) {
            num += (ys[j] - ys[(j + k + 1) % n]).abs();
        }
    }
    let af = a as f64;
    let half_up = (af / 2.0).ceil();
    num / ((n as f64 / af) * half_up * (1.0 + 2.0 * af - 2.0 * half_up))
}

// ---- shapes (j is the 1-based objective index) ----

fn half_pi(v: f64) -> f64 {
    v * std::f64::consts::PI / 2.0
}

fn shape_linear(x: &[f64], j: usize) -> f64 {
    let m = x.len();
    if j == m {
        return 1.0 - x[0];
    }
    let mut h: f64 = x[..m - j].iter().product();
    if j > 1 {
        h *= 1.0 - x[m - j];
    }
    h
}

fn shape_convex(x: &[f64], j: usize) -> f64 {
    let m = x.len();
    if j == m {
        return 1.0 - half_pi(x[0]).sin();
    }
    let mut h: f64 = x[..m - j].iter().map(|&v| 1.0 - half_pi(v).cos()).product();
    if j > 1 {
        h *= 1.0 - half_pi(x[m - j]).sin();
    }
    h
}

fn shape_concave(x: &[f64], j: usize) -> f64 {
    let m = x.len();
    if j == m {
        return half_pi(x[0]).cos();
    }
    let mut h: f64 = x[..m - j].iter().map(|&v| half_pi(v).sin()).product();
    if j > 1 {
        h *= half_pi(x[m - j]).cos();
    }
    h
}

fn shape_mixed(x1: f64, alpha: f64, a: f64) -> f64 {
    let two_a_pi = 2.0 * a * std::f64::consts::PI;
    (1.0 - x1 - (two_a_pi * x1 + std::f64::consts::PI / 2.0).cos() / two_a_pi).powf(alpha)
}

fn shape_disc(x1: f64, alpha: f64, beta: f64, a: f64) -> f64 {
    1.0 - x1.powf(alpha) * (a * x1.powf(beta) * std::f64::consts::PI).cos().powi(2)
}

// ---- framework ----

enum ShapeFamily {
    Concave,
    Linear,
    /// convex h_1..h_{m-1} plus the mixed (sinusoidal) last objective
    ConvexMixed,
    /// convex h_1..h_{m-1} plus the disconnected last objective
    ConvexDisc,
}

/// Underlying parameters from the final transition vector:
/// `x_i = max(t_m, A_i)(t_i - 0.5) + 0.5`, `x_m = t_m`. The degenerate
/// variant (WFG3) uses A = (1, 0, ..., 0), collapsing the front to a line.
fn underlying_x(t: &[f64], degenerate: bool) -> Vec<f64> {
    let m = t.len();
    let tm = t[m - 1];
    let mut x: Vec<f64> = (0..m - 1)
        .map(|i| {
            let a = if degenerate && i > 0 { 0.0 } else { 1.0 };
            tm.max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();
    x.push(tm);
    x
}

fn apply_shape(x: &[f64], family: ShapeFamily) -> Vec<f64> {
    let m = x.len();
    (1..=m)
        .map(|j| {
            let h = match family {
                ShapeFamily::Concave => shape_concave(x, j),
                ShapeFamily::Linear => shape_linear(x, j),
                ShapeFamily::ConvexMixed => {
                    if j < m {
                        shape_convex(x, j)
                    } else {
                        shape_mixed(x[0], 1.0, 5.0)
                    }
                }
                ShapeFamily::ConvexDisc => {
                    if j < m {
                        shape_convex(x, j)
                    } else {
                        shape_disc(x[0], 1.0, 1.0, 5.0)
                    }
                }
            };
            x[m - 1] + 2.0 * j as f64 * h
        })
        .collect()
}

/// Reduce the first `k` elements to `m - 1` group values with `reduce`,
/// then append `tail(y[k..])` as the distance component.
fn reduce_to_m(
    y: &[f64],
    k: usize,
    m: usize,
    reduce: impl Fn(&[f64]) -> f64,
    tail: impl Fn(&[f64]) -> f64,
) -> Vec<f64> {
    let g = k / (m - 1);
    let mut t: Vec<f64> = (0..m - 1).map(|i| reduce(&y[i * g..(i + 1) * g])).collect();
    t.push(tail(&y[k..]));
    t
}

pub(crate) fn evaluate(variant: u8, m: usize, z: &[f64]) -> Vec<f64> {
    let n = z.len();
    let k = 2 * (m - 1);
    let l = n - k;
    debug_assert_eq!(l, NUM_DISTANCE_VARS);
    let mut y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, &v)| v / (2.0 * (i + 1) as f64))
        .collect();

    match variant {
        1 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            for v in &mut y[k..] {
                *v = b_flat(*v, 0.8, 0.75, 0.85);
            }
            for v in &mut y {
                *v = b_poly(*v, 0.02);
            }
            let weights: Vec<f64> = (0..n).map(|i| 2.0 * (i + 1) as f64).collect();
            let g = k / (m - 1);
            let mut t: Vec<f64> = (0..m - 1)
                .map(|i| r_sum(&y[i * g..(i + 1) * g], &weights[i * g..(i + 1) * g]))
                .collect();
            t.push(r_sum(&y[k..], &weights[k..]));
            apply_shape(&underlying_x(&t, false), ShapeFamily::ConvexMixed)
        }
        2 | 3 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            let mut reduced = y[..k].to_vec();
            for i in 0..l / 2 {
                reduced.push(r_nonsep(&[y[k + 2 * i], y[k + 2 * i + 1]], 2));
            }
            let t = reduce_to_m(&reduced, k, m, mean, mean);
            if variant == 2 {
                apply_shape(&underlying_x(&t, false), ShapeFamily::ConvexDisc)
            } else {
                apply_shape(&underlying_x(&t, true), ShapeFamily::Linear)
            }
        }
        4 => {
            for v in &mut y {
                *v = s_multi(*v, 30.0, 10.0, 0.35);
            }
            let t = reduce_to_m(&y, k, m, mean, mean);
            apply_shape(&underlying_x(&t, false), ShapeFamily::Concave)
        }
        5 => {
            for v in &mut y {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            let t = reduce_to_m(&y, k, m, mean, mean);
            apply_shape(&underlying_x(&t, false), ShapeFamily::Concave)
        }
        6 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            let g = k / (m - 1);
            let t = reduce_to_m(&y, k, m, |gr| r_nonsep(gr, g), |tl| r_nonsep(tl, l));
            apply_shape(&underlying_x(&t, false), ShapeFamily::Concave)
        }
        7 => {
            // parameter-dependent bias reads strictly later elements, so an
            // ascending in-place pass sees only stage-input values
            for i in 0..k {
                y[i] = b_param(y[i], mean(&y[i + 1..]), PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            let t = reduce_to_m(&y, k, m, mean, mean);
            apply_shape(&underlying_x(&t, false), ShapeFamily::Concave)
        }
        8 => {
            // bias reads earlier elements, including already-visited tail
            // positions: take u from a snapshot of the stage input
            let snapshot = y.clone();
            for i in k..n {
                y[i] = b_param(y[i], mean(&snapshot[..i]), PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[k..] {
                *v = s_linear(*v, 0.35);
            }
            let t = reduce_to_m(&y, k, m, mean, mean);
            apply_shape(&underlying_x(&t, false), ShapeFamily::Concave)
        }
        9 => {
            for i in 0..n - 1 {
                y[i] = b_param(y[i], mean(&y[i + 1..]), PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[..k] {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            for v in &mut y[k..] {
                *v = s_multi(*v, 30.0, 95.0, 0.35);
            }
            let g = k / (m - 1);
            let t = reduce_to_m(&y, k, m, |gr| r_nonsep(gr, g), |tl| r_nonsep(tl, l));
            apply_shape(&underlying_x(&t, false), ShapeFamily::Concave)
        }
        _ => unreachable!("wfg variant {variant} out of range"),
    }
}
