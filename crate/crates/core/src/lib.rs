//! Low size-complexity logic programs for the East-West train challenge,
//! found by cost-sensitive decision-tree induction.
//!
//! The pipeline has three stages:
//!
//! 1. [`features`] turns relational train descriptions ([`train`]) into 1199
//!    boolean features, each costed by the size of the Prolog fragment that
//!    defines it.
//! 2. [`tree`] grows decision trees whose attribute choice is steered by a
//!    bias vector, and [`ga`] searches bias vectors with a genetic algorithm,
//!    scoring each by the test cost and error rate of the tree it induces.
//! 3. [`theory`] turns the best tree into an `eastbound/1` program and
//!    [`complexity`] measures its size.
//!
//! [`harness`] wires the stages together; the `rl-icet` binary exposes it on
//! the command line.

pub mod bits;
pub mod complexity;
pub mod data;
pub mod error;
pub mod features;
pub mod ga;
pub mod harness;
mod lexer;
pub mod theory;
pub mod train;
pub mod tree;

pub use error::{Error, Result};
pub use features::{
    build_feature_table, evaluate_features, FeatureMatrix, FeatureSpec, FeatureTable, InfrontMode,
};
pub use ga::{evolve, EvolveResult, GaConfig};
pub use theory::{agreement, simplify_dnf, tree_to_dnf, Theory};
pub use train::{parse_trains, render_train, Direction, Train};
pub use tree::{induce_tree, BiasVector, DecisionTree, FitnessReport};
