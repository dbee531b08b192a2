//! Experiment configuration: a flat TOML file expanded into the cells of a
//! (problem × variant × seed) batch.
//!
//! ```toml
//! problems = ["dtlz2:3", "dtlz1:3"]
//! variants = ["codea", "codea-pbi"]
//! seeds = 5                  # or an explicit list: seeds = [0, 3, 8]
//! budget_factor = 0.01       # scales the full-budget generation table
//! output_dir = "results"     # optional; --out and CODEA_OUT also apply
//! baseline = "codea"         # optional; defaults to the first variant
//!
//! [gens]
//! "dtlz2:3" = 250            # optional per-instance generation override
//! ```
//!
//! Generation counts come from the per-instance override when given,
//! otherwise from the built-in full-budget table scaled by `budget_factor`
//! and rounded (at least 1).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use codea::{ProblemDef, RankingVariant, ReferenceSet};

use crate::CliError;

/// Full-budget generation counts per problem family, indexed by objective
/// count m ∈ {3, 5, 8, 10, 15}.
const BUDGET_TABLE: &[(&str, [usize; 5])] = &[
    ("dtlz1", [36_800, 127_200, 117_000, 276_000, 204_000]),
    ("cdtlz1", [36_800, 127_200, 117_000, 276_000, 204_000]),
    ("dtlz2", [23_000, 74_200, 78_000, 207_000, 136_000]),
    ("cdtlz2", [23_000, 74_200, 78_000, 207_000, 136_000]),
    ("dtlz3", [92_000, 212_000, 156_000, 414_000, 272_000]),
    ("cdtlz3", [92_000, 212_000, 156_000, 414_000, 272_000]),
    ("dtlz4", [55_200, 212_000, 195_000, 552_000, 408_000]),
    ("cdtlz4", [55_200, 212_000, 195_000, 552_000, 408_000]),
    ("wfg", [92_000, 265_000, 234_000, 552_000, 405_000]),
];

/// Full-budget generation count for a problem id and objective count, if
/// the pair appears in the standard table.
pub fn full_budget_gens(problem: &str, m: usize) -> Option<usize> {
    let column = match m {
        3 => 0,
        5 => 1,
        8 => 2,
        10 => 3,
        15 => 4,
        _ => return None,
    };
    let key = if problem.starts_with("wfg") {
        "wfg"
    } else {
        problem
    };
    BUDGET_TABLE
        .iter()
        .find(|(id, _)| *id == key)
        .map(|(_, row)| row[column])
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SeedsField {
    Count(u64),
    List(Vec<u64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    problems: Vec<String>,
    variants: Vec<String>,
    seeds: Option<SeedsField>,
    budget_factor: Option<f64>,
    output_dir: Option<String>,
    baseline: Option<String>,
    gens: Option<BTreeMap<String, usize>>,
}

/// One resolved benchmark instance of an experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub problem: String,
    pub m: usize,
    pub generations: usize,
}

/// A parsed, validated experiment: every instance resolved, every variant
/// recognized, seeds expanded.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub instances: Vec<InstanceSpec>,
    pub variants: Vec<RankingVariant>,
    pub seeds: Vec<u64>,
    pub baseline: RankingVariant,
    pub output_dir: Option<String>,
}

impl ExperimentSpec {
    /// Parse and validate a TOML experiment file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parse and validate experiment TOML given directly (the `path` only
    /// labels diagnostics).
    pub fn parse(text: &str, path: &str) -> Result<Self, CliError> {
        let config = |message: String| CliError::Config {
            path: path.to_string(),
            message,
        };
        // toml's errors already carry "line N, column M" context
        let raw: RawExperiment =
            toml::from_str(text).map_err(|e| config(e.to_string().replace('\n', " ")))?;

        if raw.problems.is_empty() {
            return Err(config("field 'problems': must not be empty".into()));
        }
        if raw.variants.is_empty() {
            return Err(config("field 'variants': must not be empty".into()));
        }

        let budget_factor = raw.budget_factor.unwrap_or(1.0);
        if !(budget_factor.is_finite() && budget_factor > 0.0) {
            return Err(config(format!(
                "field 'budget_factor': must be a positive number, got {budget_factor}"
            )));
        }

        let mut overrides = raw.gens.unwrap_or_default();
        let mut instances = Vec::with_capacity(raw.problems.len());
        for entry in &raw.problems {
            let (problem, m) = parse_instance(entry)
                .map_err(|msg| config(format!("field 'problems': {msg}")))?;
            // resolve now so a bad instance fails the whole config up front
            ProblemDef::by_id(&problem, m)
                .and_then(|_| ReferenceSet::for_objectives(m))
                .map_err(|e| config(format!("field 'problems': '{entry}': {e}")))?;
            let generations = match overrides.remove(entry) {
                Some(g) if g >= 1 => g,
                Some(_) => {
                    return Err(config(format!(
                        "field 'gens': '{entry}': generations must be at least 1"
                    )))
                }
                None => match full_budget_gens(&problem, m) {
                    Some(full) => ((full as f64 * budget_factor).round() as usize).max(1),
                    None => {
                        return Err(config(format!(
                            "field 'problems': '{entry}' has no standard budget; \
                             add a [gens] override"
                        )))
                    }
                },
            };
            let instance = InstanceSpec {
                problem,
                m,
                generations,
            };
            if instances.contains(&instance) {
                return Err(config(format!(
                    "field 'problems': duplicate instance '{entry}'"
                )));
            }
            instances.push(instance);
        }
        if let Some(stale) = overrides.into_keys().next() {
            return Err(config(format!(
                "field 'gens': '{stale}' does not match any listed problem"
            )));
        }

        let mut variants = Vec::with_capacity(raw.variants.len());
        for name in &raw.variants {
            let variant: RankingVariant = name
                .parse()
                .map_err(|e| config(format!("field 'variants': {e}")))?;
            if variants.contains(&variant) {
                return Err(config(format!(
                    "field 'variants': duplicate variant '{name}'"
                )));
            }
            variants.push(variant);
        }

        let baseline = match &raw.baseline {
            Some(name) => {
                let variant: RankingVariant = name
                    .parse()
                    .map_err(|e| config(format!("field 'baseline': {e}")))?;
                if !variants.contains(&variant) {
                    return Err(config(format!(
                        "field 'baseline': '{name}' is not among the listed variants"
                    )));
                }
                variant
            }
            None => variants[0],
        };

        let seeds = match raw.seeds {
            None => (0..21).collect(),
            Some(SeedsField::Count(k)) => {
                if k == 0 {
                    return Err(config("field 'seeds': count must be positive".into()));
                }
                (0..k).collect()
            }
            Some(SeedsField::List(list)) => {
                if list.is_empty() {
                    return Err(config("field 'seeds': list must not be empty".into()));
                }
                let mut sorted = list.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != list.len() {
                    return Err(config("field 'seeds': duplicate seed".into()));
                }
                list
            }
        };

        Ok(ExperimentSpec {
            instances,
            variants,
            seeds,
            baseline,
            output_dir: raw.output_dir,
        })
    }

    /// Number of runs the experiment will execute.
    pub fn num_cells(&self) -> usize {
        self.instances.len() * self.variants.len() * self.seeds.len()
    }
}

/// Split an `"id:m"` instance key.
fn parse_instance(entry: &str) -> Result<(String, usize), String> {
    let (id, m_text) = entry
        .split_once(':')
        .ok_or_else(|| format!("'{entry}' is not of the form 'problem:m'"))?;
    let m: usize = m_text
        .parse()
        .map_err(|_| format!("'{entry}': '{m_text}' is not an objective count"))?;
    Ok((id.to_string(), m))
}
