//! The globally stable learner `G` and Monte-Carlo estimates of its output
//! distribution.
//!
//! With `d = Ldim_0(H)`: `n = ⌈d ln K / α⌉`, `N = (4K)^{d+1} n`. Each run
//! draws `k` uniformly from `{0..d}`, a tournament sample `S ~ D̃_k` and a
//! fresh block `T ~ D^n`, and outputs `SOA_0(S∘T)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label};
use crate::dimensions::LdimTable;
use crate::error::{invalid, Error, Result};
use crate::loss::{population_loss, LossKind};
use crate::online::soa_predictor;
use crate::rng::stream_rng;
use crate::sample::FiniteDistribution;

use super::tournament::{TournamentOutcome, TournamentSampler};

/// `(K - 1) / ((d + 1) K^{d+1})`.
pub fn stability_bound(num_labels: u32, d: u32) -> f64 {
    let k = f64::from(num_labels);
    (k - 1.0) / ((f64::from(d) + 1.0) * k.powi(d as i32 + 1))
}

/// `⌈d ln K / α⌉`, at least 1.
pub fn block_size(num_labels: u32, d: u32, alpha: f64) -> usize {
    let n = (f64::from(d) * f64::from(num_labels).ln() / alpha).ceil();
    (n as usize).max(1)
}

/// `(4K)^{d+1} n`, or an error when it does not fit in a `usize`.
pub fn draw_cap(num_labels: u32, d: u32, n: usize) -> Result<usize> {
    let base = 4usize
        .checked_mul(num_labels as usize)
        .ok_or_else(|| invalid("K", "draw cap overflows"))?;
    base.checked_pow(d + 1)
        .and_then(|p| p.checked_mul(n))
        .ok_or_else(|| invalid("class", format!("draw cap (4K)^(d+1) n overflows for d = {d}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "hypothesis", rename_all = "snake_case")]
pub enum GOutput {
    Hypothesis(Vec<Label>),
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRun {
    pub k: usize,
    pub output: GOutput,
    pub draw_count: usize,
}

/// `G` for one class, with its parameters fixed.
#[derive(Debug, Clone)]
pub struct GlobalStableLearner {
    table: Arc<LdimTable>,
    num_labels: u32,
    dimension: u32,
    alpha: f64,
    block: usize,
    cap: usize,
}

impl GlobalStableLearner {
    pub fn new(class: &HypothesisClass, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(invalid("alpha", format!("{alpha} must lie in (0, 1)")));
        }
        if class.is_empty() {
            return Err(Error::EmptyClass);
        }
        let table = Arc::new(LdimTable::new(class, 0)?);
        let dimension = table.ldim(table.masks().full()) as u32;
        let block = block_size(class.num_labels(), dimension, alpha);
        let cap = draw_cap(class.num_labels(), dimension, block)?;
        Ok(GlobalStableLearner {
            table,
            num_labels: class.num_labels(),
            dimension,
            alpha,
            block,
            cap,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `n`.
    pub fn block(&self) -> usize {
        self.block
    }

    /// `N`.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Samples consumed per run, `N + n`.
    pub fn sample_complexity(&self) -> usize {
        self.cap + self.block
    }

    pub fn num_labels(&self) -> u32 {
        self.num_labels
    }

    pub fn bound(&self) -> f64 {
        stability_bound(self.num_labels, self.dimension)
    }

    pub fn table(&self) -> &Arc<LdimTable> {
        &self.table
    }

    pub fn sampler<'a>(&self, dist: &'a FiniteDistribution<Label>) -> Result<TournamentSampler<'a>> {
        TournamentSampler::new(Arc::clone(&self.table), dist, self.block, self.cap)
    }

    pub fn run<R: Rng + ?Sized>(&self, dist: &FiniteDistribution<Label>, rng: &mut R) -> Result<GRun> {
        let sampler = self.sampler(dist)?;
        let k = rng.gen_range(0..=self.dimension as usize);
        Ok(match sampler.sample(k, rng) {
            TournamentOutcome::Fail { draw_count } => GRun {
                k,
                output: GOutput::Fail,
                draw_count,
            },
            TournamentOutcome::Sample(mut s) => {
                // T is drawn outside the tournament and does not count toward N.
                s.examples.extend(dist.draw_n(self.block, rng));
                GRun {
                    k,
                    output: GOutput::Hypothesis(soa_predictor(&self.table, &s.examples)),
                    draw_count: s.draw_count,
                }
            }
        })
    }
}

/// Runs `G` once from a fixed generator.
pub fn run_g<R: Rng + ?Sized>(
    class: &HypothesisClass,
    dist: &FiniteDistribution<Label>,
    alpha: f64,
    rng: &mut R,
) -> Result<GRun> {
    GlobalStableLearner::new(class, alpha)?.run(dist, rng)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityTrial {
    pub trial: usize,
    pub k: usize,
    pub draw_count: usize,
    pub fail: bool,
    /// Index into [`GsEstimate::outputs`].
    pub output: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputTally {
    pub hypothesis: Vec<Label>,
    pub count: usize,
    pub frequency: f64,
    pub population_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsEstimate {
    pub trials: usize,
    pub fails: usize,
    pub dimension: u32,
    pub block: usize,
    pub cap: usize,
    pub bound: f64,
    /// Distinct outputs in lexicographic order of their tables.
    pub outputs: Vec<OutputTally>,
    /// Most frequent output, ties toward the smallest table.
    pub modal: Option<usize>,
    pub modal_frequency: f64,
    pub modal_population_loss: Option<f64>,
    pub records: Vec<StabilityTrial>,
}

impl GsEstimate {
    pub fn fail_rate(&self) -> f64 {
        self.fails as f64 / self.trials as f64
    }

    pub fn modal_hypothesis(&self) -> Option<&[Label]> {
        self.modal.map(|i| self.outputs[i].hypothesis.as_slice())
    }
}

/// Runs `G` `trials` times; trial `i` uses the stream `(seed, i)`.
/// Frequencies divide by all trials, failures included.
pub fn estimate_stability(
    class: &HypothesisClass,
    dist: &FiniteDistribution<Label>,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<GsEstimate> {
    if trials == 0 {
        return Err(invalid("trials", "at least one trial is required"));
    }
    let g = GlobalStableLearner::new(class, alpha)?;
    let mut tally: BTreeMap<Vec<Label>, usize> = BTreeMap::new();
    let mut runs = Vec::with_capacity(trials);
    for i in 0..trials {
        let run = g.run(dist, &mut stream_rng(seed, i as u64))?;
        if let GOutput::Hypothesis(h) = &run.output {
            *tally.entry(h.clone()).or_default() += 1;
        }
        runs.push(run);
    }
    let mut outputs = Vec::with_capacity(tally.len());
    for (h, count) in &tally {
        outputs.push(OutputTally {
            population_loss: population_loss(h, dist, LossKind::TolerantZeroOne(0))?,
            hypothesis: h.clone(),
            count: *count,
            frequency: *count as f64 / trials as f64,
        });
    }
    let mut modal: Option<usize> = None;
    for (i, o) in outputs.iter().enumerate() {
        if modal.is_none_or(|m| o.count > outputs[m].count) {
            modal = Some(i);
        }
    }
    let records = runs
        .into_iter()
        .enumerate()
        .map(|(trial, run)| StabilityTrial {
            trial,
            k: run.k,
            draw_count: run.draw_count,
            fail: run.output == GOutput::Fail,
            output: match &run.output {
                GOutput::Hypothesis(h) => outputs.iter().position(|o| &o.hypothesis == h),
                GOutput::Fail => None,
            },
        })
        .collect::<Vec<_>>();
    let fails = records.iter().filter(|r| r.fail).count();
    Ok(GsEstimate {
        trials,
        fails,
        dimension: g.dimension(),
        block: g.block(),
        cap: g.cap(),
        bound: g.bound(),
        modal_frequency: modal.map_or(0.0, |m| outputs[m].frequency),
        modal_population_loss: modal.map(|m| outputs[m].population_loss),
        modal,
        outputs,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::constants_class;

    #[test]
    fn parameters() {
        assert!((stability_bound(3, 1) - 2.0 / 18.0).abs() < 1e-15);
        assert_eq!(block_size(3, 1, 0.1), 11);
        assert_eq!(draw_cap(3, 1, 11).unwrap(), 144 * 11);
        assert!(draw_cap(1000, 40, 10).is_err());
    }

    #[test]
    fn singleton_is_always_returned() {
        let class = constants_class(&[2], 3, 2).unwrap();
        let d = FiniteDistribution::uniform(class.row(0).to_vec()).unwrap();
        let est = estimate_stability(&class, &d, 0.1, 100, 3).unwrap();
        assert_eq!(est.modal_frequency, 1.0);
        assert_eq!(est.fails, 0);
        assert_eq!(est.modal_population_loss, Some(0.0));
    }

    #[test]
    fn alpha_is_validated() {
        let class = constants_class(&[1, 2], 2, 1).unwrap();
        assert!(GlobalStableLearner::new(&class, 0.0).is_err());
        assert!(GlobalStableLearner::new(&class, 1.0).is_err());
    }
}
