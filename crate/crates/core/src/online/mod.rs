//! The online game: learners, the tolerant standard optimal algorithm, and
//! the adversary that walks a shattered tree.

mod adversary;
mod learners;
mod soa;

use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label};
use crate::error::{invalid, Result};
use crate::loss::tolerant_loss;
use crate::sample::LabeledExample;

pub use adversary::{adversary_force, adversary_force_with_tree};
pub use learners::{ConstantLearner, LearnerSpec, MajorityLearner, OnlineLearner};
pub use soa::{soa_predictor, soa_run, Soa};

/// One round of the online game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub x: usize,
    pub predicted: Label,
    pub truth: Label,
    pub mistake: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnlineTranscript {
    pub learner: String,
    pub tolerance: u32,
    pub rounds: Vec<Round>,
    /// `|V_t|` after each round: the rows consistent with the prefix.
    pub version_space_sizes: Vec<usize>,
    /// First round whose label left the class, if any.
    pub realizable_until: Option<usize>,
    pub final_predictor: Vec<Label>,
}

impl OnlineTranscript {
    pub fn mistakes(&self) -> usize {
        self.rounds.iter().filter(|r| r.mistake).count()
    }

    /// Running mistake count after each round.
    pub fn mistake_curve(&self) -> Vec<usize> {
        self.rounds
            .iter()
            .scan(0, |acc, r| {
                *acc += usize::from(r.mistake);
                Some(*acc)
            })
            .collect()
    }
}

pub(crate) fn validate_sequence(class: &HypothesisClass, sequence: &[LabeledExample]) -> Result<()> {
    for (t, e) in sequence.iter().enumerate() {
        if e.x >= class.domain_size() {
            return Err(invalid(
                "sequence",
                format!("round {t} uses point {} outside the domain", e.x),
            ));
        }
        if e.y.get() > class.num_labels() {
            return Err(invalid(
                "sequence",
                format!("round {t} uses label {} but K = {}", e.y, class.num_labels()),
            ));
        }
    }
    Ok(())
}

/// Plays `sequence` against `learner`, scoring rounds with the `τ`-tolerant
/// loss and tracking the version space of `class`.
pub fn run_online(
    class: &HypothesisClass,
    learner: &mut dyn OnlineLearner,
    sequence: &[LabeledExample],
    tolerance: u32,
) -> Result<OnlineTranscript> {
    validate_sequence(class, sequence)?;
    let mut consistent: Vec<usize> = (0..class.len()).collect();
    let mut rounds = Vec::with_capacity(sequence.len());
    let mut sizes = Vec::with_capacity(sequence.len());
    let mut realizable_until = None;
    for (t, e) in sequence.iter().enumerate() {
        let predicted = learner.predict(e.x);
        rounds.push(Round {
            x: e.x,
            predicted,
            truth: e.y,
            mistake: tolerant_loss(predicted, e.y, tolerance) == 1,
        });
        learner.observe(e.x, e.y);
        consistent.retain(|&r| class.get(r, e.x) == e.y);
        if consistent.is_empty() && realizable_until.is_none() {
            realizable_until = Some(t);
        }
        sizes.push(consistent.len());
    }
    Ok(OnlineTranscript {
        learner: learner.name(),
        tolerance,
        rounds,
        version_space_sizes: sizes,
        realizable_until,
        final_predictor: learner.snapshot(class.domain_size()),
    })
}
