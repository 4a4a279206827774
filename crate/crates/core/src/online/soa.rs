//! Tolerant standard optimal algorithm.
//!
//! While the history is realizable the version space `V` is a row mask and
//! the prediction at `x` is `argmax_k Ldim_τ(V ∩ {h(x) = k})`, ties toward
//! the smallest label. The first label that would empty `V` freezes the
//! current predictor into a table; from then on each observation overwrites
//! that table at its point.

use std::sync::Arc;

use crate::class::{HypothesisClass, Label};
use crate::dimensions::{LdimSource, LdimTable, RowSet};
use crate::error::Result;
use crate::sample::LabeledExample;

use super::learners::OnlineLearner;
use super::{run_online, validate_sequence, OnlineTranscript};

#[derive(Debug, Clone)]
pub struct Soa {
    source: LdimSource,
    version: RowSet,
    patched: Option<Vec<Label>>,
}

impl Soa {
    pub fn new(class: &HypothesisClass, tolerance: u32) -> Result<Self> {
        Ok(Self::with_source(LdimSource::for_class(class, tolerance)?))
    }

    /// Shares a precomputed table between runs.
    pub fn with_table(table: Arc<LdimTable>) -> Self {
        Self::with_source(LdimSource::Table(table))
    }

    pub fn with_source(source: LdimSource) -> Self {
        let version = source.masks().full();
        Soa {
            source,
            version,
            patched: None,
        }
    }

    pub fn tolerance(&self) -> u32 {
        self.source.tolerance()
    }

    /// Current version space; frozen at its last nonempty value once the
    /// history stops being realizable.
    pub fn version_space(&self) -> RowSet {
        self.version
    }

    pub fn is_realizable(&self) -> bool {
        self.patched.is_none()
    }

    fn argmax(&mut self, x: usize) -> Label {
        let masks = Arc::clone(self.source.masks());
        let mut best = Label::new(1);
        let mut best_value = i32::MIN;
        for k in 1..=masks.num_labels() {
            let label = Label::new(k);
            let v = self.source.ldim(self.version & masks.mask(x, label));
            if v > best_value {
                best_value = v;
                best = label;
            }
        }
        best
    }

    /// The predictor of the current state over the whole domain.
    pub fn table(&mut self) -> Vec<Label> {
        match &self.patched {
            Some(t) => t.clone(),
            None => {
                let n = self.source.masks().domain_size();
                (0..n).map(|x| self.argmax(x)).collect()
            }
        }
    }
}

impl OnlineLearner for Soa {
    fn name(&self) -> String {
        format!("soa_{}", self.tolerance())
    }

    fn predict(&mut self, x: usize) -> Label {
        match &self.patched {
            Some(t) => t[x],
            None => self.argmax(x),
        }
    }

    fn observe(&mut self, x: usize, y: Label) {
        if self.patched.is_none() {
            let masks = self.source.masks();
            let next = if y.get() <= masks.num_labels() {
                self.version & masks.mask(x, y)
            } else {
                0
            };
            if next != 0 {
                self.version = next;
                return;
            }
            let frozen = self.table();
            self.patched = Some(frozen);
        }
        if let Some(t) = self.patched.as_mut() {
            t[x] = y;
        }
    }

    fn snapshot(&mut self, _domain_size: usize) -> Vec<Label> {
        self.table()
    }
}

/// Runs `SOA_τ` on `sequence`.
pub fn soa_run(
    class: &HypothesisClass,
    tolerance: u32,
    sequence: &[LabeledExample],
) -> Result<OnlineTranscript> {
    validate_sequence(class, sequence)?;
    let mut soa = Soa::new(class, tolerance)?;
    run_online(class, &mut soa, sequence, tolerance)
}

/// Final predictor of `SOA` after observing `sample`, without predictions.
pub fn soa_predictor(table: &Arc<LdimTable>, sample: &[LabeledExample]) -> Vec<Label> {
    let mut soa = Soa::with_table(Arc::clone(table));
    for e in sample {
        soa.observe(e.x, e.y);
    }
    soa.table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{constants_class, threshold_class};

    fn ex(x: usize, y: u32) -> LabeledExample {
        LabeledExample::new(x, Label::new(y))
    }

    #[test]
    fn singleton_never_errs() {
        let class = HypothesisClass::from_u32_rows(3, &[&[2, 3, 1]]).unwrap();
        let seq = vec![ex(0, 2), ex(1, 3), ex(2, 1), ex(1, 3)];
        let t = soa_run(&class, 0, &seq).unwrap();
        assert_eq!(t.mistakes(), 0);
        assert_eq!(t.final_predictor, class.row(0));
    }

    #[test]
    fn tolerant_constants() {
        let class = constants_class(&[1, 2, 3, 4], 4, 1).unwrap();
        for y in 1..=4 {
            let t = soa_run(&class, 2, &[ex(0, y), ex(0, y)]).unwrap();
            assert!(t.mistakes() <= 1);
        }
    }

    #[test]
    fn extension_patches_the_frozen_predictor() {
        let class = threshold_class(3).unwrap();
        // (0, 2) forces threshold 0, then (2, 1) leaves the class.
        let seq = vec![ex(0, 2), ex(2, 1), ex(1, 1), ex(1, 2)];
        let t = soa_run(&class, 0, &seq).unwrap();
        assert_eq!(t.realizable_until, Some(1));
        let p: Vec<u32> = t.final_predictor.iter().map(|l| l.get()).collect();
        assert_eq!(p, vec![2, 2, 1]);
        assert_eq!(t.version_space_sizes, vec![1, 0, 0, 0]);
    }

    #[test]
    fn rejects_labels_above_k() {
        let class = threshold_class(2).unwrap();
        assert!(soa_run(&class, 0, &[ex(0, 3)]).is_err());
        assert!(soa_run(&class, 0, &[ex(5, 1)]).is_err());
    }
}
