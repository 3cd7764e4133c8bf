//! Binary multi-objective feature selection.
//!
//! NSGA-II and a diversity-enhanced variant that combines uniform-covering
//! initialization with per-generation replacement of the worst-ranked front,
//! wrapped around a k-NN classifier over tabular datasets. Objectives are
//! classification error and selected-feature ratio, both minimized.

pub mod dataset;
pub mod error;
pub mod experiment;
pub mod genome;
pub mod init;
pub mod metrics;
pub mod objective;
pub mod optimizer;
pub mod pareto;
pub mod stats;
pub mod variation;

pub use dataset::{split, toy_dataset, Dataset, SplitDataset};
pub use error::{Error, Result};
pub use genome::Genome;
pub use metrics::{avg_pairwise_hamming, hypervolume_2d};
pub use objective::{Evaluator, FitnessContext};
pub use optimizer::{run, OptimizerConfig, RunResult, Variant};
pub use pareto::{dominates, non_dominated_sort, ObjectiveVector};
