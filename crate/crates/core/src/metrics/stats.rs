//! Rank statistics for comparing runs: median/IQR summaries and the
//! two-sided Wilcoxon rank-sum test (normal approximation with tie and
//! continuity corrections) at the 0.05 significance level.

use std::fmt;

/// Outcome of a significance comparison of sample `a` against sample `b`,
/// on a scale where larger scores are better.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `a` is significantly better (higher median, p < 0.05)
    Better,
    /// `a` is significantly worse
    Worse,
    /// no significant difference
    Similar,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Better => "+",
            Verdict::Worse => "-",
            Verdict::Similar => "≈",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Median by the midpoint convention and interquartile range with
/// linear-interpolation quartiles. Panics on an empty sample.
pub fn median_iqr(sample: &[f64]) -> (f64, f64) {
    assert!(!sample.is_empty(), "median of an empty sample");
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let median = if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    };
    (median, quantile(&xs, 0.75) - quantile(&xs, 0.25))
}

/// Linear-interpolation quantile of an already sorted sample.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    if lo + 1 == sorted.len() {
        return sorted[lo];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

/// Two-sided Wilcoxon rank-sum (Mann–Whitney) test of `a` against `b`.
///
/// Returns the U statistic of `a`, the asymptotic p-value (tie-corrected
/// variance, continuity correction toward the mean), and the verdict:
/// `+`/`-` by the sign of the median difference when p < 0.05, `≈`
/// otherwise. Degenerate samples with zero rank variance give p = 1.
/// Both samples must hold at least 5 observations.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> (f64, f64, Verdict) {
    assert!(
        a.len() >= 5 && b.len() >= 5,
        "rank-sum test needs at least 5 observations per sample"
    );
    let n1 = a.len();
    let n2 = b.len();
    let n = n1 + n2;

    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));

    // average ranks over tie groups, accumulating the tie correction term
    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0; // 1-based average of ranks i+1..=j
        for entry in &pooled[i..j] {
            if entry.1 {
                rank_sum_a += rank;
            }
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }

    let u1 = rank_sum_a - (n1 * (n1 + 1)) as f64 / 2.0;
    let mean = (n1 * n2) as f64 / 2.0;
    let variance = (n1 * n2) as f64 / 12.0
        * ((n + 1) as f64 - tie_term / (n * (n - 1)) as f64);
    if variance <= 0.0 {
        return (u1, 1.0, Verdict::Similar);
    }

    let mut numerator = u1 - mean;
    if numerator > 0.0 {
        numerator -= 0.5;
    } else if numerator < 0.0 {
        numerator += 0.5;
    }
    let z = numerator / variance.sqrt();
    let p = (erfc(z.abs() / std::f64::consts::SQRT_2)).min(1.0);

    let (med_a, _) = median_iqr(a);
    let (med_b, _) = median_iqr(b);
    let verdict = if p < 0.05 && med_a > med_b {
        Verdict::Better
    } else if p < 0.05 && med_a < med_b {
        Verdict::Worse
    } else {
        Verdict::Similar
    };
    (u1, p, verdict)
}

/// Complementary error function, rational Chebyshev approximation with
/// relative error below 1.2e-7 everywhere — more than enough resolution for
/// a 0.05 significance threshold.
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let ans = t
        * (-z * z - 1.26551223
            + t * (1.00002368
                + t * (0.37409196
                    + t * (0.09678418
                        + t * (-0.18628806
                            + t * (0.27886807
                                + t * (-1.13520398
                                    + t * (1.48851587
                                        + t * (-0.82215223 + t * 0.17087277)))))))))
        .exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}
