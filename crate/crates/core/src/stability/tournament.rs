//! Monte-Carlo tournament distribution `D̃_k`.
//!
//! `D̃_0` is the empty sample. For `k ≥ 1`: draw `S0, S1 ~ D̃_{k-1}` and
//! `T0, T1 ~ D^n`, run `SOA_0` on `S0∘T0` and `S1∘T1`, and retry while the
//! two predictors agree. Otherwise take the smallest disagreement point `x`,
//! a uniform label `y`, and output whichever concatenation `SOA_0` errs on,
//! followed by `(x, y)`. More than `N` base draws in total is a `Fail`.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label};
use crate::dimensions::LdimTable;
use crate::error::{invalid, Result};
use crate::online::soa_predictor;
use crate::rng::seeded;
use crate::sample::{FiniteDistribution, LabeledExample};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentSample {
    pub examples: Vec<LabeledExample>,
    /// Base draws consumed, counting rejected rounds.
    pub draw_count: usize,
    /// Indices of the tournament examples within `examples`.
    pub tournament_positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TournamentOutcome {
    Sample(TournamentSample),
    Fail { draw_count: usize },
}

impl TournamentOutcome {
    pub fn draw_count(&self) -> usize {
        match self {
            TournamentOutcome::Sample(s) => s.draw_count,
            TournamentOutcome::Fail { draw_count } => *draw_count,
        }
    }

    pub fn sample(&self) -> Option<&TournamentSample> {
        match self {
            TournamentOutcome::Sample(s) => Some(s),
            TournamentOutcome::Fail { .. } => None,
        }
    }
}

/// Sampler for `D̃_k` with block size `n` and draw cap `N`.
#[derive(Debug, Clone)]
pub struct TournamentSampler<'a> {
    table: Arc<LdimTable>,
    dist: &'a FiniteDistribution<Label>,
    num_labels: u32,
    block: usize,
    cap: usize,
}

struct Part {
    examples: Vec<LabeledExample>,
    positions: Vec<usize>,
}

struct Exhausted;

impl<'a> TournamentSampler<'a> {
    /// `table` must hold `Ldim_0` of the class.
    pub fn new(
        table: Arc<LdimTable>,
        dist: &'a FiniteDistribution<Label>,
        block: usize,
        cap: usize,
    ) -> Result<Self> {
        if table.tolerance() != 0 {
            return Err(invalid("table", "tournaments run SOA_0"));
        }
        if block == 0 {
            return Err(invalid("n", "block size must be at least 1"));
        }
        if cap == 0 {
            return Err(invalid("N", "draw cap must be at least 1"));
        }
        if dist.domain_size() != table.masks().domain_size() {
            return Err(invalid("distribution", "domain differs from the class"));
        }
        let num_labels = table.masks().num_labels();
        Ok(TournamentSampler {
            table,
            dist,
            num_labels,
            block,
            cap,
        })
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn table(&self) -> &Arc<LdimTable> {
        &self.table
    }

    pub fn sample<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> TournamentOutcome {
        let mut draws = 0usize;
        match self.level(k, rng, &mut draws) {
            Ok(part) => TournamentOutcome::Sample(TournamentSample {
                examples: part.examples,
                draw_count: draws,
                tournament_positions: part.positions,
            }),
            Err(Exhausted) => TournamentOutcome::Fail { draw_count: draws },
        }
    }

    fn draw_block<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        draws: &mut usize,
    ) -> std::result::Result<Vec<LabeledExample>, Exhausted> {
        let mut out = Vec::with_capacity(self.block);
        for _ in 0..self.block {
            *draws += 1;
            if *draws > self.cap {
                return Err(Exhausted);
            }
            out.push(self.dist.draw(rng));
        }
        Ok(out)
    }

    fn level<R: Rng + ?Sized>(
        &self,
        k: usize,
        rng: &mut R,
        draws: &mut usize,
    ) -> std::result::Result<Part, Exhausted> {
        if k == 0 {
            return Ok(Part {
                examples: Vec::new(),
                positions: Vec::new(),
            });
        }
        loop {
            let mut s0 = self.level(k - 1, rng, draws)?;
            let mut s1 = self.level(k - 1, rng, draws)?;
            let t0 = self.draw_block(rng, draws)?;
            let t1 = self.draw_block(rng, draws)?;
            s0.examples.extend(t0);
            s1.examples.extend(t1);
            let f0 = soa_predictor(&self.table, &s0.examples);
            let f1 = soa_predictor(&self.table, &s1.examples);
            let Some(x) = (0..f0.len()).find(|&x| f0[x] != f1[x]) else {
                continue;
            };
            let y = Label::new(rng.gen_range(1..=self.num_labels));
            let mut chosen = if f0[x] != y { s0 } else { s1 };
            chosen.positions.push(chosen.examples.len());
            chosen.examples.push(LabeledExample::new(x, y));
            return Ok(chosen);
        }
    }
}

/// One draw from `D̃_k` for a class small enough for a dense `Ldim_0` table.
pub fn sample_dk_mc(
    k: usize,
    dist: &FiniteDistribution<Label>,
    class: &HypothesisClass,
    n: usize,
    cap: usize,
    seed: u64,
) -> Result<TournamentOutcome> {
    let table = Arc::new(LdimTable::new(class, 0)?);
    let sampler = TournamentSampler::new(table, dist, n, cap)?;
    Ok(sampler.sample(k, &mut seeded(seed)))
}

/// Positions on which `SOA_0`, replayed over `examples`, errs.
pub fn soa_mistake_positions(table: &Arc<LdimTable>, examples: &[LabeledExample]) -> Vec<usize> {
    use crate::online::{OnlineLearner, Soa};
    let mut soa = Soa::with_table(Arc::clone(table));
    let mut out = Vec::new();
    for (i, e) in examples.iter().enumerate() {
        if soa.predict(e.x) != e.y {
            out.push(i);
        }
        soa.observe(e.x, e.y);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::constants_class;

    #[test]
    fn level_zero_is_empty() {
        let class = constants_class(&[1, 2], 2, 1).unwrap();
        let d = FiniteDistribution::uniform(vec![Label::new(1)]).unwrap();
        let out = sample_dk_mc(0, &d, &class, 3, 10, 1).unwrap();
        let s = out.sample().unwrap();
        assert!(s.examples.is_empty());
        assert_eq!(s.draw_count, 0);
    }

    #[test]
    fn singleton_class_fails_at_the_cap() {
        let class = constants_class(&[2], 2, 2).unwrap();
        let d = FiniteDistribution::uniform(vec![Label::new(2); 2]).unwrap();
        let out = sample_dk_mc(1, &d, &class, 2, 25, 3).unwrap();
        assert_eq!(out, TournamentOutcome::Fail { draw_count: 26 });
    }

    #[test]
    fn identical_seeds_reproduce_samples() {
        let class = constants_class(&[1, 2, 3], 3, 3).unwrap();
        let d = FiniteDistribution::uniform(vec![Label::new(2); 3]).unwrap();
        let a = sample_dk_mc(1, &d, &class, 2, 1000, 11).unwrap();
        let b = sample_dk_mc(1, &d, &class, 2, 1000, 11).unwrap();
        assert_eq!(a, b);
    }
}
