//! Benchmark problem definitions.
//!
//! Three scalable families are provided, all minimization problems:
//!
//! * `dtlz1`–`dtlz4` — the classic DTLZ suite with the standard distance
//!   dimensions (5 for DTLZ1, 10 for the rest), decision space `[0, 1]^n`.
//! * `cdtlz1`–`cdtlz4` — the convex variants, obtained by composing the DTLZ
//!   objectives with a power transform that bends the front.
//! * `wfg1`–`wfg9` — the WFG toolkit with `k = 2(m - 1)` position and
//!   `l = 20` distance variables, decision variable `i` spanning `[0, 2i]`.
//!
//! [`ProblemDef::by_id`] resolves the lowercase string ids used by the CLI
//! and config files. Each definition also carries the ideal/nadir pair used
//! for hypervolume normalization.

mod dtlz;
mod wfg;

use crate::error::CodeaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Dtlz { variant: u8, convex: bool },
    Wfg { variant: u8 },
}

/// A benchmark instance: a named objective function together with its
/// decision-space bounds and the reference box used for hypervolume.
#[derive(Debug, Clone)]
pub struct ProblemDef {
    name: String,
    m: usize,
    n: usize,
    bounds: Vec<(f64, f64)>,
    hv_ideal: Vec<f64>,
    hv_nadir: Vec<f64>,
    kind: Kind,
}

impl ProblemDef {
    /// DTLZ instance for `variant` in `1..=4` with `m` objectives.
    pub fn dtlz(variant: u8, m: usize) -> Result<Self, CodeaError> {
        Self::dtlz_inner(variant, m, false)
    }

    /// Convex DTLZ instance (DTLZ objectives followed by the convexifying
    /// power transform).
    pub fn convex_dtlz(variant: u8, m: usize) -> Result<Self, CodeaError> {
        Self::dtlz_inner(variant, m, true)
    }

    fn dtlz_inner(variant: u8, m: usize, convex: bool) -> Result<Self, CodeaError> {
        if !(1..=4).contains(&variant) {
            return Err(CodeaError::InvalidProblem(format!(
                "dtlz variant must be 1..=4, got {variant}"
            )));
        }
        if m < 2 {
            return Err(CodeaError::InvalidProblem(format!(
                "need at least 2 objectives, got {m}"
            )));
        }
        let n = m - 1 + dtlz::num_distance_vars(variant);
        let prefix = if convex { "cdtlz" } else { "dtlz" };
        let hv_nadir = if convex {
            match variant {
                1 => {
                    // image of the DTLZ1 corner 0.5 e_j under the transform
                    let mut v = vec![0.5f64.powi(4); m];
                    v[m - 1] = 0.25;
                    v
                }
                _ => vec![1.0; m],
            }
        } else {
            match variant {
                1 => vec![0.5; m],
                _ => vec![1.0; m],
            }
        };
        Ok(ProblemDef {
            name: format!("{prefix}{variant}"),
            m,
            n,
            bounds: vec![(0.0, 1.0); n],
            hv_ideal: vec![0.0; m],
            hv_nadir,
            kind: Kind::Dtlz { variant, convex },
        })
    }

    /// WFG instance for `variant` in `1..=9` with `m` objectives.
    pub fn wfg(variant: u8, m: usize) -> Result<Self, CodeaError> {
        if !(1..=9).contains(&variant) {
            return Err(CodeaError::InvalidProblem(format!(
                "wfg variant must be 1..=9, got {variant}"
            )));
        }
        if m < 2 {
            return Err(CodeaError::InvalidProblem(format!(
                "need at least 2 objectives, got {m}"
            )));
        }
        let k = 2 * (m - 1);
        let n = k + wfg::NUM_DISTANCE_VARS;
        Ok(ProblemDef {
            name: format!("wfg{variant}"),
            m,
            n,
            bounds: (0..n).map(|i| (0.0, 2.0 * (i + 1) as f64)).collect(),
            hv_ideal: vec![0.0; m],
            hv_nadir: (1..=m).map(|j| 2.0 * j as f64).collect(),
            kind: Kind::Wfg { variant },
        })
    }

    /// Resolve a lowercase id such as `"dtlz2"`, `"cdtlz4"` or `"wfg7"`.
    pub fn by_id(id: &str, m: usize) -> Result<Self, CodeaError> {
        let bad = || CodeaError::InvalidProblem(format!("unknown problem id '{id}'"));
        if let Some(rest) = id.strip_prefix("cdtlz") {
            let variant: u8 = rest.parse().map_err(|_| bad())?;
            Self::convex_dtlz(variant, m)
        } else if let Some(rest) = id.strip_prefix("dtlz") {
            let variant: u8 = rest.parse().map_err(|_| bad())?;
            Self::dtlz(variant, m)
        } else if let Some(rest) = id.strip_prefix("wfg") {
            let variant: u8 = rest.parse().map_err(|_| bad())?;
            Self::wfg(variant, m)
        } else {
            Err(bad())
        }
    }

    /// Ids accepted by [`ProblemDef::by_id`], in display order.
    pub fn known_ids() -> Vec<String> {
        let mut ids: Vec<String> = (1..=4).map(|v| format!("dtlz{v}")).collect();
        ids.extend((1..=4).map(|v| format!("cdtlz{v}")));
        ids.extend((1..=9).map(|v| format!("wfg{v}")));
        ids
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of objectives.
    pub fn num_objectives(&self) -> usize {
        self.m
    }

    /// Number of decision variables.
    pub fn num_variables(&self) -> usize {
        self.n
    }

    /// Per-variable `(lower, upper)` decision bounds.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Ideal/nadir pair spanning the hypervolume normalization box.
    pub fn known_hv_bounds(&self) -> (&[f64], &[f64]) {
        (&self.hv_ideal, &self.hv_nadir)
    }

    /// Evaluate the objective vector at `x`.
    ///
    /// Panics if `x.len() != num_variables()`; bound violations are only
    /// checked in debug builds (the variation operators always clip).
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(
            x.len(),
            self.n,
            "decision vector length mismatch for {}",
            self.name
        );
        debug_assert!(
            x.iter()
                .zip(&self.bounds)
                .all(|(&v, &(lo, hi))| v >= lo && v <= hi),
            "decision vector out of bounds for {}",
            self.name
        );
        match self.kind {
            Kind::Dtlz { variant, convex } => {
                let mut f = dtlz::evaluate(variant, self.m, x);
                if convex {
                    dtlz::convex_transform(&mut f);
                }
                f
            }
            Kind::Wfg { variant } => wfg::evaluate(variant, self.m, x),
        }
    }
}
