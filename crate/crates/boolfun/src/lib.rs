//! Spectral analysis of bounded functions on the Boolean hypercube.
//!
//! The crate provides dense Walsh-Hadamard transforms and sparse spectral
//! expansions, random restrictions with exact expectation identities, block
//! sensitivity, balanced weight partitions, smoothing/interpolation noise
//! machinery, greedy decision-tree approximation, bounded test-function
//! generators, and seeded statistics helpers for reproducible experiments.
//!
//! Numeric code is generic over [`Scalar`] (implemented for `f32` and `f64`);
//! the `*64`/`*32` aliases at the crate root pick a concrete precision.

pub mod error;
pub mod families;
pub mod fourier;
pub mod mask;
pub mod noise;
pub mod partition;
pub mod reference;
pub mod restriction;
pub mod sensitivity;
pub mod stats;
pub mod stream;
pub mod table;
pub mod textfmt;
pub mod tree;

mod num;

/// Largest arity stored as a dense table of 2^n values.
pub const DENSE_LIMIT: usize = 24;

/// Coefficients at or below this magnitude are dropped after transforms,
/// restrictions, and smoothing to keep expansions sparse.
pub const PRUNE_EPS: f64 = 1e-14;

pub use error::{Error, Result};
pub use families::{convex_mixture, Family, FamilySpec};
pub use fourier::{wht_in_place, FourierExpansion};
pub use mask::{CoordSet, Point};
pub use noise::{
    classify_small, exceedance_bar, exceedance_rate, good_threshold, noise_lemma_sample,
    procedure_one, sample_noisy, InterpolationNodes, ProcedureOneConfig, DEFAULT_B, DEFAULT_K,
    DEFAULT_W, NODE_LIMIT,
};
pub use num::Scalar;
pub use partition::{balanced_partition, WeightedPartition};
pub use restriction::{
    binomial_tail_above, expected_level_one_mass, expected_restricted_variance,
    expected_tail_above, Restriction, RestrictionDistribution,
};
pub use sensitivity::{
    block_sensitivity, block_sensitivity_at, block_sensitivity_bound, sensitive_fraction,
    BlockSensitivityResult, BLOCK_SENSITIVITY_LIMIT,
};
pub use stats::{mean_and_se, proportion_se, wilson_interval, ExperimentReport, Z95};
pub use stream::{derive_rng, splitmix64};
pub use table::TruthTable;
pub use tree::{greedy_influence_tree, tree_error, DecisionTree};

pub type Fourier64 = FourierExpansion<f64>;
pub type Fourier32 = FourierExpansion<f32>;
pub type Table64 = TruthTable<f64>;
pub type Table32 = TruthTable<f32>;
pub type Tree64 = DecisionTree<f64>;
pub type Tree32 = DecisionTree<f32>;
pub type Nodes64 = InterpolationNodes<f64>;
pub type Nodes32 = InterpolationNodes<f32>;
