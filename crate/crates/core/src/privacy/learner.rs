//! The composed private learner for multi-class tables.
//!
//! Batches of `G` vote through the stable histogram; the surviving frequent
//! hypotheses go to the exponential mechanism on fresh examples.

use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label};
use crate::error::{invalid, Result};
use crate::loss::{population_loss, LossKind};
use crate::rng::{stream_rng, stream_seed};
use crate::sample::FiniteDistribution;
use crate::stability::{GOutput, GlobalStableLearner};

use super::generic::{generic_private_learner, generic_sample_size_with, GENERIC_C};
use super::histogram::stable_histogram;
use super::{BudgetLedger, PrivacyParams};

/// Constant `C₁` in the batch count.
pub const BATCH_C1: f64 = 16.0;

/// Calibration constants. Both are choices, not derived values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub c1: f64,
    pub c: f64,
}

impl Default for Calibration {
    fn default() -> Self {
        Calibration {
            c1: BATCH_C1,
            c: GENERIC_C,
        }
    }
}

/// `k = ⌈C₁ ln(1/(η β δ)) / (η ε)⌉`.
pub fn batch_count(eta: f64, privacy: PrivacyParams, beta: f64, c1: f64) -> Result<usize> {
    let k = (c1 * (1.0 / (eta * beta * privacy.delta)).ln() / (eta * privacy.epsilon)).ceil();
    if !k.is_finite() || k > 1e8 {
        return Err(invalid("batches", format!("batch count {k} is out of reach")));
    }
    Ok((k as usize).max(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    AllBatchesFailed,
    EmptyList,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DpOutcome {
    Learned { hypothesis: Vec<Label> },
    Failed { reason: FailureReason },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DpReport {
    pub outcome: DpOutcome,
    pub dimension: u32,
    pub eta: f64,
    pub batches: usize,
    pub batch_size: usize,
    pub failed_batches: usize,
    pub distinct_items: usize,
    pub released: usize,
    pub pruned: usize,
    pub list: Vec<Vec<Label>>,
    pub estimates: Vec<f64>,
    pub selection_size: usize,
    pub selection_probabilities: Vec<f64>,
    pub population_loss: Option<f64>,
    pub ledger: BudgetLedger,
    pub calibration: Calibration,
}

impl DpReport {
    pub fn hypothesis(&self) -> Option<&[Label]> {
        match &self.outcome {
            DpOutcome::Learned { hypothesis } => Some(hypothesis),
            DpOutcome::Failed { .. } => None,
        }
    }
}

fn unit_interval(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("{v} must lie in (0, 1)")))
    }
}

/// Seed streams: `0` the batches, `1` the histogram noise, `2` the fresh
/// selection sample and the selection draw.
pub fn private_learn_mc(
    class: &HypothesisClass,
    dist: &FiniteDistribution<Label>,
    privacy: PrivacyParams,
    alpha: f64,
    beta: f64,
    seed: u64,
) -> Result<DpReport> {
    private_learn_mc_with(class, dist, privacy, alpha, beta, Calibration::default(), seed)
}

pub fn private_learn_mc_with(
    class: &HypothesisClass,
    dist: &FiniteDistribution<Label>,
    privacy: PrivacyParams,
    alpha: f64,
    beta: f64,
    calibration: Calibration,
    seed: u64,
) -> Result<DpReport> {
    let privacy = PrivacyParams::approximate(privacy.epsilon, privacy.delta)?;
    unit_interval("alpha", alpha)?;
    unit_interval("beta", beta)?;
    let g = GlobalStableLearner::new(class, alpha / 2.0)?;
    let eta = g.bound();
    let batches = batch_count(eta, privacy, beta, calibration.c1)?;

    let batch_seed = stream_seed(seed, 0);
    let mut items: Vec<Option<Vec<Label>>> = Vec::with_capacity(batches);
    for b in 0..batches {
        let run = g.run(dist, &mut stream_rng(batch_seed, b as u64))?;
        items.push(match run.output {
            GOutput::Hypothesis(h) => Some(h),
            GOutput::Fail => None,
        });
    }
    let failed_batches = items.iter().filter(|i| i.is_none()).count();

    let mut ledger = BudgetLedger::new(privacy);
    let mut report = DpReport {
        outcome: DpOutcome::Failed {
            reason: FailureReason::AllBatchesFailed,
        },
        dimension: g.dimension(),
        eta,
        batches,
        batch_size: g.sample_complexity(),
        failed_batches,
        distinct_items: 0,
        released: 0,
        pruned: 0,
        list: Vec::new(),
        estimates: Vec::new(),
        selection_size: 0,
        selection_probabilities: Vec::new(),
        population_loss: None,
        ledger: ledger.clone(),
        calibration,
    };
    if failed_batches == batches {
        return Ok(report);
    }

    let half = PrivacyParams::new(privacy.epsilon / 2.0, privacy.delta)?;
    let hist = stable_histogram(&items, half, eta / 8.0, &mut stream_rng(seed, 1))?;
    ledger.debit("stable_histogram", half.epsilon, half.delta);
    report.distinct_items = hist.distinct;
    report.released = hist.list.len();

    let (list, estimates): (Vec<_>, Vec<_>) = hist
        .list
        .into_iter()
        .zip(hist.estimates)
        .filter(|(_, a)| *a > 0.75 * eta)
        .filter_map(|(h, a)| h.map(|h| (h, a)))
        .unzip();
    report.pruned = list.len();
    report.estimates = estimates;
    if list.is_empty() {
        report.outcome = DpOutcome::Failed {
            reason: FailureReason::EmptyList,
        };
        report.ledger = ledger;
        return Ok(report);
    }

    let n = generic_sample_size_with(
        calibration.c,
        list.len(),
        alpha / 2.0,
        beta / 3.0,
        privacy.epsilon / 2.0,
    )?;
    let mut rng = stream_rng(seed, 2);
    let fresh = dist.draw_n(n, &mut rng);
    let pick = generic_private_learner(&list, &fresh, LossKind::TolerantZeroOne(0), privacy.epsilon / 2.0, &mut rng)?;
    ledger.debit("generic_learner", privacy.epsilon / 2.0, 0.0);
    debug_assert!(ledger.balances());

    let hypothesis = list[pick.index].clone();
    report.population_loss = Some(population_loss(&hypothesis, dist, LossKind::TolerantZeroOne(0))?);
    report.selection_size = n;
    report.selection_probabilities = pick.probabilities;
    report.list = list;
    report.outcome = DpOutcome::Learned { hypothesis };
    report.ledger = ledger;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::constants_class;

    #[test]
    fn singleton_class_is_learned_exactly() {
        let class = constants_class(&[2], 2, 3).unwrap();
        let dist = FiniteDistribution::from_class_row(&class, 0, vec![0.5, 0.25, 0.25]).unwrap();
        let p = PrivacyParams::approximate(0.5, 0.01).unwrap();
        let r = private_learn_mc(&class, &dist, p, 0.2, 0.2, 4).unwrap();
        assert_eq!(r.hypothesis(), Some(class.row(0)));
        assert_eq!(r.population_loss, Some(0.0));
        assert!(r.ledger.balances());
    }

    #[test]
    fn batch_count_formula() {
        let p = PrivacyParams::approximate(0.5, 0.01).unwrap();
        let eta: f64 = 2.0 / 18.0;
        let k = batch_count(eta, p, 0.2, 16.0).unwrap();
        let expect = (16.0 * (1.0 / (eta * 0.2 * 0.01)).ln() / (eta * 0.5)).ceil() as usize;
        assert_eq!(k, expect);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let class = constants_class(&[1, 2], 2, 1).unwrap();
        let dist = FiniteDistribution::from_class_row(&class, 0, vec![1.0]).unwrap();
        let p = PrivacyParams::new(0.5, 0.0).unwrap();
        assert!(private_learn_mc(&class, &dist, p, 0.2, 0.2, 0).is_err());
        let p = PrivacyParams::approximate(0.5, 0.01).unwrap();
        assert!(private_learn_mc(&class, &dist, p, 1.5, 0.2, 0).is_err());
    }
}
