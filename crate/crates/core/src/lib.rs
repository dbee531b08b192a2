//! Many-objective evolutionary optimization built around collaborative
//! decomposition.
//!
//! The library provides, bottom-up:
//!
//! * [`rng`] — a seeded, cross-platform deterministic random stream; every
//!   stochastic step of a run draws from a single stream in a fixed order,
//!   so a (config, seed) pair reproduces bit-identical results.
//! * [`refgeom`] — Das–Dennis simplex-lattice reference sets, the two-layer
//!   construction used for many objectives, and the rotation factors
//!   (per-direction `r`, per-dimension `k_m`) consumed by the CoD
//!   scalarization.
//! * [`scalarize`] — the `d1`/`d2` projection geometry and the PBI, NBI and
//!   CoD aggregation functions.
//! * [`problems`] — the DTLZ1–4, convex-DTLZ and WFG1–9 benchmark families
//!   with their hypervolume normalization bounds.
//! * [`variation`] — simulated binary crossover and bounded polynomial
//!   mutation, plus population initialization and offspring generation.
//! * [`selection`] — fast non-dominated sorting, adaptive ideal/intercept
//!   normalization, reference-point association, within-niche ranking (CoD,
//!   angle, PBI or NBI keyed) and the rank-partition environmental selection.
//! * [`algorithm`] — the CoDEA generational loop tying the above together,
//!   with the ranking-variant switches used for ablation studies.
//! * [`metrics`] — exact (dimension-sweep) and Monte Carlo hypervolume,
//!   normalized scoring against known problem bounds, Wilcoxon rank-sum
//!   comparison and median/IQR summaries.
//!
//! Caller-facing misuse (unknown problem ids, unsupported dimensions,
//! population size not matching the reference set) surfaces as
//! [`CodeaError`]; internal contract breaches such as mismatched vector
//! lengths panic via `assert!`.

pub mod algorithm;
pub mod error;
pub mod individual;
pub mod metrics;
pub mod problems;
pub mod refgeom;
pub mod rng;
pub mod scalarize;
pub mod selection;
pub mod variation;

pub use algorithm::{run, AlgoConfig, GenerationStat, InnerAngleOrder, RankingVariant, RunResult};
pub use error::CodeaError;
pub use individual::{dominates, Individual};
pub use problems::ProblemDef;
pub use refgeom::{Layer, ReferencePoint, ReferenceSet};
pub use rng::RngStream;
