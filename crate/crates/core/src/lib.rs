//! Online learnability and private learnability over explicit finite classes.
//!
//! Classes are explicit tables: [`HypothesisClass`] for labels in `1..=K`,
//! [`RealFunctionClass`] for values in `[-1, 1]`. On top of them sit exact
//! dimension computations with certificates, the tolerant standard optimal
//! algorithm and its adversary, threshold extraction from shattered trees,
//! the globally stable learner, and the private learner built on it.

pub mod class;
pub mod dimensions;
pub mod discretize;
pub mod error;
pub mod format;
pub mod generators;
pub mod loss;
pub mod online;
pub mod privacy;
pub mod rng;
pub mod sample;
pub mod stability;
pub mod thresholds;
pub mod tree;

pub use class::{HypothesisClass, Label, RealFunctionClass};
pub use discretize::{discretize, Discretization, IntervalGrid};
pub use error::{Error, Result};
pub use format::AnyClass;
pub use loss::{absolute_loss, evaluate_loss, tolerant_loss, LossData, LossKind};
pub use sample::{Example, FiniteDistribution, LabeledExample, RealExample, Sample};
pub use tree::{LabelSplit, MistakeTree, Tree, WitnessSplit, WitnessTree};
