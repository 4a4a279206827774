//! Exponential-mechanism selection from a finite list of hypotheses.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::loss::{empirical_loss, LossKind, Outcome};
use crate::sample::Example;

/// Constant `C` in the sample-size planner.
pub const GENERIC_C: f64 = 8.0;

/// `n' = ⌈C (ln|L| + ln(1/β)) / (α ε)⌉` with `C = 8`, at least 1.
pub fn generic_sample_size(list_len: usize, alpha: f64, beta: f64, epsilon: f64) -> Result<usize> {
    generic_sample_size_with(GENERIC_C, list_len, alpha, beta, epsilon)
}

pub fn generic_sample_size_with(
    c: f64,
    list_len: usize,
    alpha: f64,
    beta: f64,
    epsilon: f64,
) -> Result<usize> {
    if list_len == 0 {
        return Err(invalid("list", "the candidate list is empty"));
    }
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(invalid(name, format!("{v} must lie in (0, 1)")));
        }
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(invalid("epsilon", format!("{epsilon} must be positive")));
    }
    let n = (c * ((list_len as f64).ln() + (1.0 / beta).ln()) / (alpha * epsilon)).ceil();
    Ok((n as usize).max(1))
}

/// Exact output distribution: `p_i ∝ exp(-ε n (loss_i - min loss) / 2)`.
pub fn selection_probabilities(losses: &[f64], epsilon: f64, sample_size: usize) -> Vec<f64> {
    let min = losses.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = epsilon * sample_size as f64 / 2.0;
    let weights: Vec<f64> = losses.iter().map(|l| (-scale * (l - min)).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub index: usize,
    pub losses: Vec<f64>,
    pub probabilities: Vec<f64>,
}

/// Inverse-transform draw from `probabilities`.
fn draw_index<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // Rounding left `acc` a hair below 1.
    probabilities.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// Pure `ε`-DP: changing one example moves each empirical loss by at most
/// `1/n`.
pub fn generic_private_learner<Y: Outcome, R: Rng + ?Sized>(
    list: &[Vec<Y>],
    sample: &[Example<Y>],
    loss: LossKind,
    epsilon: f64,
    rng: &mut R,
) -> Result<Selection> {
    if list.is_empty() {
        return Err(invalid("list", "the candidate list is empty"));
    }
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(invalid("epsilon", format!("{epsilon} must be positive")));
    }
    let losses = list
        .iter()
        .map(|h| empirical_loss(h, sample, loss))
        .collect::<Result<Vec<_>>>()?;
    let probabilities = selection_probabilities(&losses, epsilon, sample.len());
    let index = draw_index(&probabilities, rng);
    Ok(Selection {
        index,
        losses,
        probabilities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::Label;
    use crate::rng::seeded;

    #[test]
    fn two_point_closed_form() {
        let p = selection_probabilities(&[0.0, 1.0], 0.5, 40);
        let expect = 1.0 / (1.0 + (-10.0f64).exp());
        assert!((p[0] - expect).abs() < 1e-12);
        assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_budget_is_near_uniform() {
        let p = selection_probabilities(&[0.0, 1.0, 0.5], 1e-6, 1);
        for q in &p {
            assert!((q - 1.0 / 3.0).abs() < 1e-6);
        }
    }

    #[test]
    fn neighbouring_samples_respect_the_ratio() {
        // Changing one of n examples moves each loss by at most 1/n.
        let (eps, n) = (0.7, 10usize);
        for c in 0..n {
            let before = [c as f64 / n as f64, 1.0 - c as f64 / n as f64];
            for delta in [-1.0, 1.0] {
                let moved = (c as f64 + delta).clamp(0.0, n as f64);
                let after = [moved / n as f64, 1.0 - moved / n as f64];
                let p = selection_probabilities(&before, eps, n);
                let q = selection_probabilities(&after, eps, n);
                for i in 0..2 {
                    assert!(p[i] <= eps.exp() * q[i] + 1e-12);
                }
            }
        }
    }

    #[test]
    fn singleton_list_is_returned() {
        let h = vec![Label::new(2); 3];
        let s = vec![Example::new(0, Label::new(1))];
        let pick = generic_private_learner(&[h], &s, LossKind::TolerantZeroOne(0), 0.1, &mut seeded(3)).unwrap();
        assert_eq!(pick.index, 0);
    }

    #[test]
    fn planner_matches_the_formula() {
        let n = generic_sample_size(4, 0.1, 0.1, 0.5).unwrap();
        let expect = (8.0 * (4f64.ln() + 10f64.ln()) / 0.05).ceil() as usize;
        assert_eq!(n, expect);
        assert!(generic_sample_size(0, 0.1, 0.1, 0.5).is_err());
    }
}
