//! Non-parametric multi-criteria anomaly detection by Pareto depth
//! analysis.
//!
//! Pairwise dissimilarities under K criteria turn every pair of training
//! samples into a *dyad* in R^K. Non-dominated sorting peels the dyad set
//! into Pareto fronts; a test sample is scored by the mean front depth of
//! the dyads connecting it to its nearest training samples per criterion.
//! Nominal samples produce dyads near shallow fronts, anomalies near deep
//! ones, with no criterion weights to choose.
//!
//! The crate also ships the scalarized nearest-neighbor baselines
//! ([`baselines`]), a simulated-experiment harness ([`eval`]), and
//! Monte-Carlo validation of the first-front growth laws ([`theory`]).

pub mod baselines;
pub mod data;
pub mod dissim;
pub mod dominance;
pub mod dyad;
pub mod error;
pub mod eval;
pub mod knn;
pub mod nds;
pub mod pda;
pub mod theory;

pub use data::{CsvOptions, Dataset, DissimMatrix, Sample};
pub use dissim::{pairwise_matrix, CriterionSpec, Trajectory};
pub use dominance::strictly_dominates;
pub use dyad::{Dyad, DyadPair, DyadSet};
pub use error::{Error, Result};
pub use knn::select_k;
pub use nds::{first_front, nds_fast_2d, nds_general, nds_peel, FrontAssignment, PointSet};
pub use pda::{DepthQuery, NdsAlgo, PdaModel, ScoreReport, TrainOptions};
