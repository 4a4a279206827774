//! Stable histogram.
//!
//! Each distinct item present among the `k` inputs gets its frequency
//! perturbed by Laplace noise of scale `b = 2/(εk)` and is released iff the
//! noisy value exceeds `t = 2 ln(2/δ)/(εk) + 1/k`. Absent items are never
//! released. Noise is drawn per distinct item in order of first appearance.

use std::collections::HashMap;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

use super::PrivacyParams;

/// Inverse-transform Laplace sample with scale `b`.
pub fn laplace<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    let mut u: f64 = rng.gen();
    while u == 0.0 {
        u = rng.gen();
    }
    if u < 0.5 {
        scale * (2.0 * u).ln()
    } else {
        -scale * (2.0 * (1.0 - u)).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramRule {
    pub items: usize,
    pub scale: f64,
    pub threshold: f64,
}

impl HistogramRule {
    pub fn new(items: usize, privacy: PrivacyParams) -> Result<Self> {
        if items == 0 {
            return Err(Error::EmptySample);
        }
        if privacy.delta <= 0.0 {
            return Err(invalid("delta", "the stable histogram needs δ > 0"));
        }
        let ek = privacy.epsilon * items as f64;
        Ok(HistogramRule {
            items,
            scale: 2.0 / ek,
            threshold: 2.0 * (2.0 / privacy.delta).ln() / ek + 1.0 / items as f64,
        })
    }

    /// Probability that an item of frequency `f` is released.
    pub fn release_probability(&self, frequency: f64) -> f64 {
        let gap = frequency - self.threshold;
        if gap <= 0.0 {
            0.5 * (gap / self.scale).exp()
        } else {
            1.0 - 0.5 * (-gap / self.scale).exp()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramOutput<T> {
    pub list: Vec<T>,
    pub estimates: Vec<f64>,
    pub rule: HistogramRule,
    /// Distinct items in the input.
    pub distinct: usize,
}

impl<T: PartialEq> HistogramOutput<T> {
    pub fn estimate_of(&self, item: &T) -> Option<f64> {
        self.list.iter().position(|x| x == item).map(|i| self.estimates[i])
    }
}

/// Empirical frequencies of the distinct items, in first-appearance order.
pub fn frequencies<T: Eq + Hash + Clone>(items: &[T]) -> Vec<(T, f64)> {
    let mut index: HashMap<&T, usize> = HashMap::new();
    let mut counts: Vec<(T, usize)> = Vec::new();
    for item in items {
        match index.get(item) {
            Some(&i) => counts[i].1 += 1,
            None => {
                index.insert(item, counts.len());
                counts.push((item.clone(), 1));
            }
        }
    }
    let k = items.len() as f64;
    counts.into_iter().map(|(t, c)| (t, c as f64 / k)).collect()
}

/// `η` only documents the accuracy target; the mechanism does not use it.
pub fn stable_histogram<T: Eq + Hash + Clone, R: Rng + ?Sized>(
    items: &[T],
    privacy: PrivacyParams,
    eta: f64,
    rng: &mut R,
) -> Result<HistogramOutput<T>> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(invalid("eta", format!("{eta} must lie in (0, 1)")));
    }
    let rule = HistogramRule::new(items.len(), privacy)?;
    let freq = frequencies(items);
    let distinct = freq.len();
    let mut list = Vec::new();
    let mut estimates = Vec::new();
    for (item, f) in freq {
        let noisy = f + laplace(rule.scale, rng);
        if noisy > rule.threshold {
            list.push(item);
            estimates.push(noisy.clamp(0.0, 1.0));
        }
    }
    Ok(HistogramOutput {
        list,
        estimates,
        rule,
        distinct,
    })
}
