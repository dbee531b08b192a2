//! The generational optimization loop.
//!
//! [`run`] wires the pieces together: build the reference set for the
//! problem's objective count, draw a uniform initial population, then repeat
//! offspring creation and environmental selection for a fixed number of
//! generations. The evaluation budget is exactly `N * (G + 1)` calls.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::CodeaError;
use crate::individual::Individual;
use crate::metrics::normalized_hv;
use crate::problems::ProblemDef;
use crate::refgeom::ReferenceSet;
use crate::rng::RngStream;
use crate::selection::{environmental_selection, NormalizationState};
use crate::variation::{create_offspring_population, init_population, VariationConfig};

/// Which scalarization ranks the members of a niche.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RankingVariant {
    /// Collaborative ranking on boundary niches, center angle on inner ones.
    #[serde(rename = "codea")]
    Cod,
    /// Collaborative ranking everywhere, deriving inner rotation factors on
    /// the fly.
    #[serde(rename = "codea-star")]
    CodStar,
    /// Penalty boundary intersection everywhere.
    #[serde(rename = "codea-pbi")]
    Pbi,
    /// Plain NBI-style aggregation everywhere.
    #[serde(rename = "codea-nbi")]
    Nbi,
}

impl RankingVariant {
    pub const ALL: [RankingVariant; 4] = [
        RankingVariant::Cod,
        RankingVariant::CodStar,
        RankingVariant::Pbi,
        RankingVariant::Nbi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RankingVariant::Cod => "codea",
            RankingVariant::CodStar => "codea-star",
            RankingVariant::Pbi => "codea-pbi",
            RankingVariant::Nbi => "codea-nbi",
        }
    }
}

impl fmt::Display for RankingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for RankingVariant {
    type Err = CodeaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "codea" => Ok(RankingVariant::Cod),
            "codea-star" => Ok(RankingVariant::CodStar),
            "codea-pbi" => Ok(RankingVariant::Pbi),
            "codea-nbi" => Ok(RankingVariant::Nbi),
            other => Err(CodeaError::InvalidArgument(format!(
                "unknown variant '{other}' (expected codea, codea-star, codea-pbi or codea-nbi)"
            ))),
        }
    }
}

/// Direction of the center-angle ordering in inner niches: prefer points
/// closest to the center direction, or farthest from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum InnerAngleOrder {
    #[serde(rename = "min")]
    Min,
    #[default]
    #[serde(rename = "max")]
    Max,
}

impl fmt::Display for InnerAngleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerAngleOrder::Min => "min",
            InnerAngleOrder::Max => "max",
        })
    }
}

impl FromStr for InnerAngleOrder {
    type Err = CodeaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(InnerAngleOrder::Min),
            "max" => Ok(InnerAngleOrder::Max),
            other => Err(CodeaError::InvalidArgument(format!(
                "unknown inner angle order '{other}' (expected min or max)"
            ))),
        }
    }
}

/// Everything one run needs besides the problem itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoConfig {
    /// Population size; must equal the reference-set size for the problem's
    /// objective count.
    pub population_size: usize,
    /// Number of generations after initialization.
    pub generations: usize,
    pub variation: VariationConfig,
    pub variant: RankingVariant,
    #[serde(default)]
    pub inner_angle_order: InnerAngleOrder,
    pub seed: u64,
    /// Record the normalized hypervolume every this many generations (the
    /// final generation is always recorded). `None` skips the history.
    #[serde(default)]
    pub hv_every: Option<usize>,
    /// Replace the magnitude factor of the collaborative scalarization,
    /// e.g. `0.0` to strip the distance term entirely.
    #[serde(default)]
    pub k_m_override: Option<f64>,
}

impl AlgoConfig {
    /// Default configuration for a problem: its mandated population size,
    /// standard variation operators, and the collaborative variant.
    pub fn for_problem(problem: &ProblemDef, generations: usize, seed: u64) -> Self {
        let refset = ReferenceSet::for_objectives(problem.num_objectives())
            .expect("no reference set for this objective count");
        AlgoConfig {
            population_size: refset.len(),
            generations,
            variation: VariationConfig::standard(problem.num_variables()),
            variant: RankingVariant::Cod,
            inner_angle_order: InnerAngleOrder::default(),
            seed,
            hv_every: None,
            k_m_override: None,
        }
    }
}

/// One sampled point of the hypervolume history.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationStat {
    pub generation: usize,
    pub hv: f64,
}

/// Outcome of one run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub final_population: Vec<Individual>,
    pub hv_history: Vec<GenerationStat>,
    pub evaluations: usize,
    pub elapsed: Duration,
    pub config: AlgoConfig,
}

fn validate(problem: &ProblemDef, cfg: &AlgoConfig) -> Result<ReferenceSet, CodeaError> {
    if cfg.generations < 1 {
        return Err(CodeaError::InvalidArgument(
            "generations must be at least 1".into(),
        ));
    }
    if cfg.hv_every == Some(0) {
        return Err(CodeaError::InvalidArgument(
            "hv_every must be at least 1".into(),
        ));
    }
    let v = &cfg.variation;
    if v.eta_c <= 0.0 || v.eta_c.is_nan() || v.eta_m <= 0.0 || v.eta_m.is_nan() {
        return Err(CodeaError::InvalidArgument(
            "distribution indices must be positive".into(),
        ));
    }
    if !(0.0..=1.0).contains(&v.p_c) || !(0.0..=1.0).contains(&v.p_m) {
        return Err(CodeaError::InvalidArgument(
            "crossover and mutation probabilities must lie in [0, 1]".into(),
        ));
    }
    if let Some(k) = cfg.k_m_override {
        if !k.is_finite() || k < 0.0 {
            return Err(CodeaError::InvalidArgument(
                "k_m override must be finite and non-negative".into(),
            ));
        }
    }
    let mut refset = ReferenceSet::for_objectives(problem.num_objectives())?;
    if cfg.population_size != refset.len() {
        return Err(CodeaError::InvalidArgument(format!(
            "population size {} does not match the reference set ({} points for {} objectives)",
            cfg.population_size,
            refset.len(),
            problem.num_objectives()
        )));
    }
    if let Some(k) = cfg.k_m_override {
        refset.k_m = k;
    }
    Ok(refset)
}

/// Run the algorithm on a problem. All validation happens before the first
/// evaluation; the result carries the exact evaluation count, the sampled
/// hypervolume history, and the final population with its annotations from
/// the last selection pass.
pub fn run(problem: &ProblemDef, cfg: &AlgoConfig) -> Result<RunResult, CodeaError> {
    let start = Instant::now();
    let refset = validate(problem, cfg)?;
    let mut rng = RngStream::new(cfg.seed);
    let mut evaluations = 0usize;
    let mut evaluate = |x: &[f64]| {
        evaluations += 1;
        problem.evaluate(x)
    };

    let mut population = init_population(
        problem.bounds(),
        cfg.population_size,
        &mut rng,
        &mut evaluate,
    );
    let mut state = NormalizationState::init_from(&population);
    let mut hv_history = Vec::new();

    for generation in 1..=cfg.generations {
        let offspring = create_offspring_population(
            &population,
            problem.bounds(),
            &cfg.variation,
            &mut rng,
            &mut evaluate,
        );
        let mut union = population;
        union.extend(offspring);
        population = environmental_selection(
            union,
            &refset,
            &mut state,
            cfg.variant,
            cfg.inner_angle_order,
            cfg.population_size,
            &mut rng,
        );
        if let Some(every) = cfg.hv_every {
            if generation % every == 0 || generation == cfg.generations {
                hv_history.push(GenerationStat {
                    generation,
                    hv: normalized_hv(&population, problem)?,
                });
            }
        }
    }

    Ok(RunResult {
        final_population: population,
        hv_history,
        evaluations,
        elapsed: start.elapsed(),
        config: cfg.clone(),
    })
}
