use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label, RealFunctionClass};
use crate::error::{invalid, Error, Result};

/// A labelled example `(x, y)`; `x` is a domain index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Example<Y> {
    pub x: usize,
    pub y: Y,
}

impl<Y> Example<Y> {
    pub fn new(x: usize, y: Y) -> Self {
        Example { x, y }
    }
}

pub type LabeledExample = Example<Label>;
pub type RealExample = Example<f64>;

/// Ordered sequence of examples.
pub type Sample<Y> = Vec<Example<Y>>;

/// A realizable distribution over a finite domain: `x` is drawn from
/// `weights`, and labelled by the target table.
#[derive(Debug, Clone)]
pub struct FiniteDistribution<Y> {
    weights: Vec<f64>,
    target: Vec<Y>,
    sampler: WeightedIndex<f64>,
}

impl<Y: Copy> FiniteDistribution<Y> {
    pub fn new(weights: Vec<f64>, target: Vec<Y>) -> Result<Self> {
        if weights.is_empty() {
            return Err(invalid("weights", "must cover at least one point"));
        }
        if weights.len() != target.len() {
            return Err(invalid(
                "target",
                format!(
                    "has {} entries for a domain of {} points",
                    target.len(),
                    weights.len()
                ),
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(invalid("weights", "must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid("weights", format!("sum to {total}, expected 1")));
        }
        let sampler = WeightedIndex::new(&weights)
            .map_err(|e| invalid("weights", e.to_string()))?;
        Ok(FiniteDistribution {
            weights,
            target,
            sampler,
        })
    }

    pub fn uniform(target: Vec<Y>) -> Result<Self> {
        let n = target.len();
        if n == 0 {
            return Err(invalid("target", "must cover at least one point"));
        }
        Self::new(uniform_weights(n), target)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn target(&self) -> &[Y] {
        &self.target
    }

    pub fn domain_size(&self) -> usize {
        self.weights.len()
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Example<Y> {
        let x = self.sampler.sample(rng);
        Example::new(x, self.target[x])
    }

    pub fn draw_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Sample<Y> {
        (0..n).map(|_| self.draw(rng)).collect()
    }

    /// Support points, i.e. points with positive weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(x, _)| x)
    }
}

impl FiniteDistribution<Label> {
    /// Distribution labelled by row `row` of `class`.
    pub fn from_class_row(class: &HypothesisClass, row: usize, weights: Vec<f64>) -> Result<Self> {
        if row >= class.len() {
            return Err(Error::InvalidParameter {
                name: "target",
                reason: format!("row {row} does not exist in a class of {} rows", class.len()),
            });
        }
        Self::new(weights, class.row(row).to_vec())
    }
}

impl FiniteDistribution<f64> {
    pub fn from_real_row(class: &RealFunctionClass, row: usize, weights: Vec<f64>) -> Result<Self> {
        if row >= class.len() {
            return Err(Error::InvalidParameter {
                name: "target",
                reason: format!("row {row} does not exist in a class of {} rows", class.len()),
            });
        }
        Self::new(weights, class.row(row).to_vec())
    }
}

/// Uniform weights over `n` points, corrected so they sum to exactly one.
pub fn uniform_weights(n: usize) -> Vec<f64> {
    let mut w = vec![1.0 / n as f64; n];
    let drift = 1.0 - w.iter().sum::<f64>();
    if let Some(first) = w.first_mut() {
        *first += drift;
    }
    w
}
