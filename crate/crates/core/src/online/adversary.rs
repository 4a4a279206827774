//! Adversary that forces mistakes by walking a shattered tree.
//!
//! Edge labels of a tree shattered at tolerance `2τ` differ by more than
//! `2τ`, so at least one of them is more than `τ` away from any prediction.

use crate::class::HypothesisClass;
use crate::dimensions::{ldim_tau, Certificate};
use crate::error::{Error, Result};
use crate::loss::tolerant_loss;
use crate::tree::{check_mistake_tree, MistakeTree, Tree};

use super::learners::OnlineLearner;
use super::{OnlineTranscript, Round};

/// Forces at least `Ldim_{2τ}(H)` mistakes on a deterministic learner.
pub fn adversary_force(
    class: &HypothesisClass,
    tolerance: u32,
    learner: &mut dyn OnlineLearner,
) -> Result<OnlineTranscript> {
    let report = ldim_tau(class, 2 * tolerance)?;
    let Certificate::Labels(tree) = report.certificate else {
        return Err(Error::Certificate("expected a labelled tree".into()));
    };
    adversary_force_with_tree(class, tolerance, &tree, learner)
}

/// Like [`adversary_force`] with a caller-supplied tree, which must be
/// shattered at tolerance `2τ`.
pub fn adversary_force_with_tree(
    class: &HypothesisClass,
    tolerance: u32,
    tree: &MistakeTree,
    learner: &mut dyn OnlineLearner,
) -> Result<OnlineTranscript> {
    check_mistake_tree(class, tree, 2 * tolerance)
        .map_err(|v| Error::Certificate(v.to_string()))?;
    let mut consistent: Vec<usize> = (0..class.len()).collect();
    let mut rounds = Vec::new();
    let mut sizes = Vec::new();
    let mut node = tree;
    while let Tree::Node { split, left, right } = node {
        let predicted = learner.predict(split.x);
        // Prefer the left edge when both labels are far from the prediction.
        let (truth, next) = if tolerant_loss(predicted, split.left, tolerance) == 1 {
            (split.left, left)
        } else {
            (split.right, right)
        };
        rounds.push(Round {
            x: split.x,
            predicted,
            truth,
            mistake: tolerant_loss(predicted, truth, tolerance) == 1,
        });
        learner.observe(split.x, truth);
        consistent.retain(|&r| class.get(r, split.x) == truth);
        sizes.push(consistent.len());
        node = next;
    }
    Ok(OnlineTranscript {
        learner: learner.name(),
        tolerance,
        rounds,
        version_space_sizes: sizes,
        realizable_until: None,
        final_predictor: learner.snapshot(class.domain_size()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::Label;
    use crate::generators::{complete_binary_class, threshold_class};
    use crate::online::{ConstantLearner, Soa};

    #[test]
    fn forces_three_mistakes_on_soa() {
        let class = complete_binary_class(3).unwrap();
        let mut soa = Soa::new(&class, 0).unwrap();
        let t = adversary_force(&class, 0, &mut soa).unwrap();
        assert_eq!(t.mistakes(), 3);
    }

    #[test]
    fn constant_learner_on_thresholds() {
        let class = threshold_class(4).unwrap();
        let mut c = ConstantLearner(Label::new(1));
        assert!(adversary_force(&class, 0, &mut c).unwrap().mistakes() >= 2);
    }

    #[test]
    fn singleton_yields_no_rounds() {
        let class = HypothesisClass::from_u32_rows(2, &[&[1, 2]]).unwrap();
        let mut c = ConstantLearner(Label::new(2));
        assert_eq!(adversary_force(&class, 0, &mut c).unwrap().mistakes(), 0);
    }

    #[test]
    fn unshattered_trees_fail_loudly() {
        let class = HypothesisClass::from_u32_rows(2, &[&[1], &[2]]).unwrap();
        let tree = crate::generators::complete_certificate(2);
        let mut c = ConstantLearner(Label::new(1));
        assert!(adversary_force_with_tree(&class, 0, &tree, &mut c).is_err());
    }
}
