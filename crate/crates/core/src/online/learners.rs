use std::fmt;
use std::str::FromStr;

use crate::class::{HypothesisClass, Label};
use crate::error::{invalid, Error, Result};

use super::soa::Soa;

/// A deterministic online learner.
pub trait OnlineLearner {
    fn name(&self) -> String;

    fn predict(&mut self, x: usize) -> Label;

    fn observe(&mut self, x: usize, y: Label);

    /// The current predictor as a total table. Predicting must not change
    /// the learner's state.
    fn snapshot(&mut self, domain_size: usize) -> Vec<Label> {
        (0..domain_size).map(|x| self.predict(x)).collect()
    }
}

/// Always predicts the same label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstantLearner(pub Label);

impl OnlineLearner for ConstantLearner {
    fn name(&self) -> String {
        format!("const:{}", self.0)
    }

    fn predict(&mut self, _x: usize) -> Label {
        self.0
    }

    fn observe(&mut self, _x: usize, _y: Label) {}
}

/// Majority vote of the hypotheses consistent with the history, ties toward
/// the smallest label. Once no hypothesis is consistent it votes over the
/// whole class.
#[derive(Debug, Clone)]
pub struct MajorityLearner {
    class: HypothesisClass,
    consistent: Vec<usize>,
}

impl MajorityLearner {
    pub fn new(class: HypothesisClass) -> Self {
        let consistent = (0..class.len()).collect();
        MajorityLearner { class, consistent }
    }
}

impl OnlineLearner for MajorityLearner {
    fn name(&self) -> String {
        "majority".into()
    }

    fn predict(&mut self, x: usize) -> Label {
        let mut votes = vec![0usize; self.class.num_labels() as usize];
        let all: Vec<usize>;
        let voters = if self.consistent.is_empty() {
            all = (0..self.class.len()).collect();
            &all
        } else {
            &self.consistent
        };
        for &r in voters {
            votes[self.class.get(r, x).index()] += 1;
        }
        let mut best = 0;
        for (i, &v) in votes.iter().enumerate() {
            if v > votes[best] {
                best = i;
            }
        }
        Label::from_index(best)
    }

    fn observe(&mut self, x: usize, y: Label) {
        let class = &self.class;
        self.consistent.retain(|&r| class.get(r, x) == y);
    }
}

/// Name of a built-in learner: `soa`, `const:k` or `majority`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearnerSpec {
    Soa,
    Constant(u32),
    Majority,
}

impl LearnerSpec {
    pub fn build(self, class: &HypothesisClass, tolerance: u32) -> Result<Box<dyn OnlineLearner>> {
        Ok(match self {
            LearnerSpec::Soa => Box::new(Soa::new(class, tolerance)?),
            LearnerSpec::Constant(k) => {
                if k == 0 || k > class.num_labels() {
                    return Err(invalid(
                        "learner",
                        format!("constant label {k} outside 1..={}", class.num_labels()),
                    ));
                }
                Box::new(ConstantLearner(Label::new(k)))
            }
            LearnerSpec::Majority => Box::new(MajorityLearner::new(class.clone())),
        })
    }
}

impl FromStr for LearnerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "soa" => Ok(LearnerSpec::Soa),
            "majority" => Ok(LearnerSpec::Majority),
            _ => match s.strip_prefix("const:").map(str::parse::<u32>) {
                Some(Ok(k)) if k >= 1 => Ok(LearnerSpec::Constant(k)),
                _ => Err(invalid(
                    "learner",
                    format!("`{s}` is not one of soa, const:k, majority"),
                )),
            },
        }
    }
}

impl fmt::Display for LearnerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LearnerSpec::Soa => f.write_str("soa"),
            LearnerSpec::Constant(k) => write!(f, "const:{k}"),
            LearnerSpec::Majority => f.write_str("majority"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_learner_names() {
        assert_eq!("soa".parse::<LearnerSpec>().unwrap(), LearnerSpec::Soa);
        assert_eq!("const:3".parse::<LearnerSpec>().unwrap(), LearnerSpec::Constant(3));
        assert_eq!("majority".parse::<LearnerSpec>().unwrap(), LearnerSpec::Majority);
        assert!("const:0".parse::<LearnerSpec>().is_err());
        assert!("oracle".parse::<LearnerSpec>().is_err());
        assert_eq!(LearnerSpec::Constant(2).to_string(), "const:2");
    }

    #[test]
    fn majority_votes_and_breaks_ties_low() {
        let class = HypothesisClass::from_u32_rows(3, &[&[1, 2], &[3, 2], &[3, 1]]).unwrap();
        let mut m = MajorityLearner::new(class);
        assert_eq!(m.predict(0), Label::new(3));
        assert_eq!(m.predict(1), Label::new(2));
        m.observe(1, Label::new(2));
        assert_eq!(m.predict(0), Label::new(1));
        m.observe(0, Label::new(2));
        assert_eq!(m.predict(1), Label::new(2));
    }
}
