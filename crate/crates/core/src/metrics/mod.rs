//! Rank-correlation metrics weighted toward the top of the ranking.

mod correlation;
mod ranking;
mod special;
mod weights;

pub use correlation::{
    compare, kendall, spearman, weighted_kendall, weighted_spearman, Coefficients,
};
pub use ranking::{ranks_from_scores, Ranking};
pub use special::{first_rank_share, trigamma, TRIGAMMA_ONE};
pub use weights::{additive_weights, hyperbolic_weight, WeightScheme, WeightVector, DEFAULT_N0};
