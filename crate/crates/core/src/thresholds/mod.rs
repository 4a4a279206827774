//! Threshold families inside classes with large shattered trees.
//!
//! A multi-class family of `n` thresholds with gap `τ` is a list of points
//! `x_1..x_n`, functions `h_1..h_n` and labels `k, k'` with `|k - k'| > τ`
//! such that `h_i(x_j) = k` for `i ≤ j` and `k'` otherwise. A regression
//! family replaces `k, k'` by centers `u, u'` at least `margin` apart and
//! lets each value deviate from its center by at most `band`.

mod color;
mod extract;
mod mono;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::class::Label;

pub use color::{color_and_choose, ChooseStep};
pub use extract::{extract_thresholds_mc, extract_thresholds_reg, guaranteed_count, Extraction};
pub use mono::{color_by, max_mono_subtree, Arena, ColorTable, MonoSubtree};

const VERIFY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThresholdFamily {
    Multiclass {
        points: Vec<usize>,
        functions: Vec<Vec<Label>>,
        k: Label,
        k_prime: Label,
        tolerance: u32,
    },
    Regression {
        points: Vec<usize>,
        functions: Vec<Vec<f64>>,
        u: f64,
        u_prime: f64,
        gamma: f64,
        margin: f64,
        band: f64,
    },
}

impl ThresholdFamily {
    pub fn len(&self) -> usize {
        match self {
            ThresholdFamily::Multiclass { points, .. } | ThresholdFamily::Regression { points, .. } => {
                points.len()
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// First pattern violation found by [`verify_thresholds`]. Indices are
/// 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    Length { points: usize, functions: usize },
    Gap { distance: f64, required: f64 },
    Domain { i: usize, point: usize },
    Entry { i: usize, j: usize, expected: String, found: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { points, functions } => {
                write!(f, "{points} points but {functions} functions")
            }
            Violation::Gap { distance, required } => {
                write!(f, "labels are {distance} apart, need {required}")
            }
            Violation::Domain { i, point } => {
                write!(f, "function {i} is not defined at point {point}")
            }
            Violation::Entry {
                i,
                j,
                expected,
                found,
            } => write!(f, "entry ({i}, {j}) is {found}, expected {expected}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FamilyVerdict {
    Accept,
    Reject(Violation),
}

impl FamilyVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, FamilyVerdict::Accept)
    }
}

/// Checks every `(i, j)` entry against the threshold pattern. The empty family
/// is accepted.
pub fn verify_thresholds(family: &ThresholdFamily) -> FamilyVerdict {
    match verify_inner(family) {
        Ok(()) => FamilyVerdict::Accept,
        Err(v) => FamilyVerdict::Reject(v),
    }
}

fn verify_inner(family: &ThresholdFamily) -> Result<(), Violation> {
    match family {
        ThresholdFamily::Multiclass {
            points,
            functions,
            k,
            k_prime,
            tolerance,
        } => {
            check_lengths(points.len(), functions.len())?;
            if points.is_empty() {
                return Ok(());
            }
            if k.distance(*k_prime) <= *tolerance {
                return Err(Violation::Gap {
                    distance: f64::from(k.distance(*k_prime)),
                    required: f64::from(*tolerance) + 1.0,
                });
            }
            for (i, h) in functions.iter().enumerate() {
                for (j, &x) in points.iter().enumerate() {
                    let found = *h.get(x).ok_or(Violation::Domain { i, point: x })?;
                    let expected = if i <= j { *k } else { *k_prime };
                    if found != expected {
                        return Err(Violation::Entry {
                            i,
                            j,
                            expected: expected.to_string(),
                            found: found.to_string(),
                        });
                    }
                }
            }
            Ok(())
        }
        ThresholdFamily::Regression {
            points,
            functions,
            u,
            u_prime,
            margin,
            band,
            ..
        } => {
            check_lengths(points.len(), functions.len())?;
            if points.is_empty() {
                return Ok(());
            }
            if (u - u_prime).abs() < margin - VERIFY_EPS {
                return Err(Violation::Gap {
                    distance: (u - u_prime).abs(),
                    required: *margin,
                });
            }
            for (i, f) in functions.iter().enumerate() {
                for (j, &x) in points.iter().enumerate() {
                    let found = *f.get(x).ok_or(Violation::Domain { i, point: x })?;
                    let center = if i <= j { *u } else { *u_prime };
                    if (found - center).abs() > band + VERIFY_EPS {
                        return Err(Violation::Entry {
                            i,
                            j,
                            expected: format!("{center} ± {band}"),
                            found: found.to_string(),
                        });
                    }
                }
            }
            Ok(())
        }
    }
}

fn check_lengths(points: usize, functions: usize) -> Result<(), Violation> {
    if points != functions {
        return Err(Violation::Length { points, functions });
    }
    Ok(())
}
