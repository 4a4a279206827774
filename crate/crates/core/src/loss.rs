use serde::{Deserialize, Serialize};

use crate::class::Label;
use crate::error::{invalid, Error, Result};
use crate::sample::{Example, FiniteDistribution};

/// `ℓ_τ(ŷ; y) = 1` iff `|y - ŷ| > τ`. `τ = 0` is the ordinary zero-one loss.
pub fn tolerant_loss(predicted: Label, truth: Label, tolerance: u32) -> u8 {
    u8::from(predicted.distance(truth) > tolerance)
}

/// Absolute loss `|ŷ - y|` for values in `[-1, 1]`.
pub fn absolute_loss(predicted: f64, truth: f64) -> Result<f64> {
    for v in [predicted, truth] {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(v));
        }
    }
    Ok((predicted - truth).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    TolerantZeroOne(u32),
    Absolute,
}

/// A label type that a [`LossKind`] can be evaluated on.
pub trait Outcome: Copy {
    fn loss(predicted: Self, truth: Self, kind: LossKind) -> Result<f64>;
}

impl Outcome for Label {
    fn loss(predicted: Self, truth: Self, kind: LossKind) -> Result<f64> {
        match kind {
            LossKind::TolerantZeroOne(tau) => Ok(f64::from(tolerant_loss(predicted, truth, tau))),
            LossKind::Absolute => Err(invalid("loss", "absolute loss needs real-valued labels")),
        }
    }
}

impl Outcome for f64 {
    fn loss(predicted: Self, truth: Self, kind: LossKind) -> Result<f64> {
        match kind {
            LossKind::Absolute => absolute_loss(predicted, truth),
            LossKind::TolerantZeroOne(_) => {
                Err(invalid("loss", "tolerant zero-one loss needs class labels"))
            }
        }
    }
}

/// Where a loss is measured: a finite sample, or exactly over a distribution.
#[derive(Debug, Clone, Copy)]
pub enum LossData<'a, Y> {
    Sample(&'a [Example<Y>]),
    Distribution(&'a FiniteDistribution<Y>),
}

/// Empirical mean over a sample, or the exact expectation over a finite
/// distribution, of the loss of hypothesis table `h`.
pub fn evaluate_loss<Y: Outcome>(h: &[Y], data: LossData<'_, Y>, kind: LossKind) -> Result<f64> {
    match data {
        LossData::Sample(sample) => {
            if sample.is_empty() {
                return Err(Error::EmptySample);
            }
            let mut total = 0.0;
            for e in sample {
                let p = *h
                    .get(e.x)
                    .ok_or_else(|| invalid("sample", format!("point {} outside the domain", e.x)))?;
                total += Y::loss(p, e.y, kind)?;
            }
            Ok(total / sample.len() as f64)
        }
        LossData::Distribution(dist) => {
            if h.len() != dist.domain_size() {
                return Err(invalid(
                    "hypothesis",
                    format!(
                        "covers {} points but the distribution has {}",
                        h.len(),
                        dist.domain_size()
                    ),
                ));
            }
            let mut total = 0.0;
            for (x, (&w, &y)) in dist.weights().iter().zip(dist.target()).enumerate() {
                if w > 0.0 {
                    total += w * Y::loss(h[x], y, kind)?;
                }
            }
            Ok(total)
        }
    }
}

pub fn empirical_loss<Y: Outcome>(h: &[Y], sample: &[Example<Y>], kind: LossKind) -> Result<f64> {
    evaluate_loss(h, LossData::Sample(sample), kind)
}

pub fn population_loss<Y: Outcome>(
    h: &[Y],
    dist: &FiniteDistribution<Y>,
    kind: LossKind,
) -> Result<f64> {
    evaluate_loss(h, LossData::Distribution(dist), kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(v: u32) -> Label {
        Label::new(v)
    }

    #[test]
    fn tolerant_loss_examples() {
        assert_eq!(tolerant_loss(l(3), l(5), 1), 1);
        assert_eq!(tolerant_loss(l(3), l(4), 1), 0);
        for tau in 0..4 {
            assert_eq!(tolerant_loss(l(2), l(2), tau), 0);
        }
    }

    #[test]
    fn absolute_loss_examples() {
        assert_eq!(absolute_loss(0.5, 0.5).unwrap(), 0.0);
        assert_eq!(absolute_loss(-1.0, 1.0).unwrap(), 2.0);
        assert_eq!(absolute_loss(0.25, -0.5).unwrap(), 0.75);
        assert!(absolute_loss(1.2, 0.0).is_err());
    }

    #[test]
    fn target_has_zero_population_loss() {
        let target = vec![l(1), l(3), l(2)];
        let d = FiniteDistribution::new(vec![0.2, 0.3, 0.5], target.clone()).unwrap();
        for kind in [LossKind::TolerantZeroOne(0), LossKind::TolerantZeroOne(2)] {
            assert_eq!(population_loss(&target, &d, kind).unwrap(), 0.0);
        }
    }

    #[test]
    fn empirical_counting() {
        let h = vec![l(1), l(2)];
        let s = vec![
            Example::new(0, l(1)),
            Example::new(1, l(2)),
            Example::new(1, l(1)),
            Example::new(0, l(1)),
        ];
        assert_eq!(empirical_loss(&h, &s, LossKind::TolerantZeroOne(0)).unwrap(), 0.25);
        assert!(matches!(
            empirical_loss(&h, &[], LossKind::TolerantZeroOne(0)),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn absolute_average_over_distribution() {
        let d = FiniteDistribution::uniform(vec![0.0, 0.0]).unwrap();
        let loss = population_loss(&[0.3, -0.1], &d, LossKind::Absolute).unwrap();
        assert!((loss - 0.2).abs() < 1e-15);
    }

    #[test]
    fn mismatched_loss_kinds_are_rejected() {
        let d = FiniteDistribution::uniform(vec![l(1)]).unwrap();
        assert!(population_loss(&[l(1)], &d, LossKind::Absolute).is_err());
    }

    proptest! {
        #[test]
        fn tolerant_loss_symmetric_and_monotone(a in 1u32..20, b in 1u32..20, tau in 0u32..20) {
            prop_assert_eq!(tolerant_loss(l(a), l(b), tau), tolerant_loss(l(b), l(a), tau));
            prop_assert!(tolerant_loss(l(a), l(b), tau + 1) <= tolerant_loss(l(a), l(b), tau));
        }

        #[test]
        fn losses_are_bounded(
            h in proptest::collection::vec(-1.0f64..=1.0, 3),
            ys in proptest::collection::vec((0usize..3, -1.0f64..=1.0), 1..10),
        ) {
            let s: Vec<_> = ys.iter().map(|&(x, y)| Example::new(x, y)).collect();
            let v = empirical_loss(&h, &s, LossKind::Absolute).unwrap();
            prop_assert!((0.0..=2.0).contains(&v));
        }
    }
}
