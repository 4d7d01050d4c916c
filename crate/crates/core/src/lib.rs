//! Adaptive pairwise-comparison ranking.
//!
//! * [`metrics`]: top-weighted Spearman and Kendall coefficients and the
//!   hyperbolic weight family.
//! * [`protocol`]: uniform and multi-ballot adaptive collection with Borda
//!   scoring and cross-ballot rescaling.
//! * [`voter`]: a Thurstonian voter model for simulating annotators.
//! * [`experiment`]: seeded replicate runs, summaries and CSV exports.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod io;
pub mod metrics;
pub mod protocol;
pub mod voter;

pub use error::{Error, Result};
pub use metrics::{Coefficients, Ranking, WeightScheme, WeightVector};
pub use protocol::{Policy, ProtocolParams, ScoreTable};
pub use voter::{ComparisonMode, SimilarityDistribution, VoterParams};
