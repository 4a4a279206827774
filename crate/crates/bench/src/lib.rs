//! Fixed inputs shared by the benchmarks.

use learnability::generators::{complete_binary_class, constants_class, random_class, random_grid_class};
use learnability::rng::seeded;
use learnability::sample::uniform_weights;
use learnability::{FiniteDistribution, HypothesisClass, Label, RealFunctionClass};

pub fn complete(n: usize) -> HypothesisClass {
    complete_binary_class(n).expect("n within the generator cap")
}

/// A random class of `rows` rows over eight points with four labels.
pub fn random_multiclass(rows: usize, seed: u64) -> HypothesisClass {
    random_class(rows, 8, 4, &mut seeded(seed)).expect("valid sizes")
}

pub fn random_real(rows: usize, domain: usize, seed: u64) -> RealFunctionClass {
    random_grid_class(rows, domain, 5, &mut seeded(seed)).expect("valid sizes")
}

/// Three constants over two points, labelled by the first.
pub fn three_constants() -> (HypothesisClass, FiniteDistribution<Label>) {
    let class = constants_class(&[1, 2, 3], 3, 2).expect("valid labels");
    let dist = FiniteDistribution::from_class_row(&class, 0, uniform_weights(2)).expect("row exists");
    (class, dist)
}
