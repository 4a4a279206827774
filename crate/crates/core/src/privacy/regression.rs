//! Private regression through discretization.

use serde::{Deserialize, Serialize};

use crate::class::RealFunctionClass;
use crate::discretize::discretize;
use crate::error::Result;
use crate::loss::{population_loss, LossKind};
use crate::sample::FiniteDistribution;

use super::learner::{private_learn_mc_with, Calibration, DpReport};
use super::PrivacyParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub gamma: f64,
    pub num_labels: u32,
    /// Midpoint table, when the inner learner produced one.
    pub hypothesis: Option<Vec<f64>>,
    pub absolute_loss: Option<f64>,
    /// Guarantee `α + γ/2` on the absolute loss.
    pub loss_bound: f64,
    pub inner: DpReport,
}

/// Targets are labelled by the interval containing them, so a target in `F`
/// is a row of `[F]_γ`.
pub fn private_learn_reg(
    class: &RealFunctionClass,
    dist: &FiniteDistribution<f64>,
    gamma: f64,
    privacy: PrivacyParams,
    alpha: f64,
    beta: f64,
    seed: u64,
) -> Result<RegressionReport> {
    private_learn_reg_with(class, dist, gamma, privacy, alpha, beta, Calibration::default(), seed)
}

#[allow(clippy::too_many_arguments)]
pub fn private_learn_reg_with(
    class: &RealFunctionClass,
    dist: &FiniteDistribution<f64>,
    gamma: f64,
    privacy: PrivacyParams,
    alpha: f64,
    beta: f64,
    calibration: Calibration,
    seed: u64,
) -> Result<RegressionReport> {
    let disc = discretize(class, gamma)?;
    let labels = dist.target().iter().map(|&v| disc.grid.label_of(v)).collect();
    let labelled = FiniteDistribution::new(dist.weights().to_vec(), labels)?;
    let inner = private_learn_mc_with(&disc.class, &labelled, privacy, alpha, beta, calibration, seed)?;
    let hypothesis = inner.hypothesis().map(|h| disc.reconstruct(h));
    let absolute_loss = match &hypothesis {
        Some(h) => Some(population_loss(h, dist, LossKind::Absolute)?),
        None => None,
    };
    Ok(RegressionReport {
        gamma,
        num_labels: disc.grid.count(),
        hypothesis,
        absolute_loss,
        loss_bound: alpha + gamma / 2.0,
        inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::IntervalGrid;
    use crate::generators::real_constants;
    use crate::sample::uniform_weights;

    #[test]
    fn constant_class_returns_the_constant_within_half_a_cell() {
        let f = real_constants(&[0.33], 2).unwrap();
        let dist = FiniteDistribution::from_real_row(&f, 0, uniform_weights(2)).unwrap();
        let p = PrivacyParams::approximate(0.5, 0.01).unwrap();
        let r = private_learn_reg(&f, &dist, 0.2, p, 0.2, 0.2, 9).unwrap();
        let h = r.hypothesis.unwrap();
        let grid = IntervalGrid::new(0.2).unwrap();
        for v in h {
            assert!((v - 0.33).abs() <= 0.1 + 1e-12);
            assert!((grid.midpoint(grid.label_of(v)) - v).abs() < 1e-12);
        }
    }
}
