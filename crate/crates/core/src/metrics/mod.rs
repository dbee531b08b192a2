//! Quality indicators and run statistics: exact and Monte Carlo dominated
//! hypervolume, the normalized-HV scoring protocol, and the rank statistics
//! used to compare variants across seeds.

mod hypervolume;
mod stats;

pub use hypervolume::{
    hypervolume_exact, hypervolume_mc, normalized_hv, normalized_hv_from_bounds,
    normalized_hv_objectives, HvEstimate, HvProtocol, DEFAULT_MC_SAMPLES,
};
pub use stats::{median_iqr, wilcoxon_rank_sum, Verdict};
