//! Iterated coloring steps and the threshold families they expose.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label, RealFunctionClass};
use crate::dimensions::{ldim_tau, Certificate};
use crate::discretize::discretize;
use crate::error::{invalid, Error, Result};
use crate::tree::MistakeTree;

use super::color::{color_and_choose, ChooseStep};
use super::ThresholdFamily;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    pub family: ThresholdFamily,
    /// Every coloring step, in order. Subclasses are dropped.
    pub steps: Vec<ChooseStep>,
    /// Height of the starting tree.
    pub start_height: u32,
    /// `⌊⌊log_K d⌋ / K²⌋` for the starting height `d`.
    pub guaranteed_count: u32,
}

/// `⌊⌊log_K d⌋ / K²⌋`.
pub fn guaranteed_count(num_labels: u32, height: u32) -> u32 {
    if num_labels < 2 || height == 0 {
        return 0;
    }
    let k = u64::from(num_labels);
    let mut e = 0u32;
    let mut p = k;
    while p <= u64::from(height) {
        e += 1;
        p *= k;
    }
    e / (num_labels * num_labels)
}

/// Runs coloring steps at tolerance `2τ` until the tree is exhausted and
/// returns the longest run of steps sharing one `(k, k')` pair, which is a
/// threshold family with gap `τ`. Without a tree, the `Ldim_{2τ}`
/// certificate is used (classes of at most 64 rows).
pub fn extract_thresholds_mc(
    class: &HypothesisClass,
    tolerance: u32,
    tree: Option<MistakeTree>,
) -> Result<Extraction> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let doubled = 2 * tolerance;
    let tree = match tree {
        Some(t) => t,
        None => match ldim_tau(class, doubled)?.certificate {
            Certificate::Labels(t) => t,
            Certificate::Witnesses(_) => unreachable!("Ldim certificates carry labels"),
        },
    };
    let start_height = tree.height();
    let mut steps: Vec<ChooseStep> = Vec::new();
    let mut current_class = class.clone();
    let mut current_tree = tree;
    while current_tree.height() >= 1 {
        let mut step = color_and_choose(&current_class, &current_tree, doubled)?;
        current_class = step.class.take().expect("fresh step carries its subclass");
        // Later trees are large; steps keep only their heights.
        current_tree = std::mem::replace(&mut step.tree, MistakeTree::Leaf);
        steps.push(step);
        if current_class.is_empty() {
            break;
        }
    }
    let family = longest_constant_run(&steps, tolerance);
    Ok(Extraction {
        family,
        steps,
        start_height,
        guaranteed_count: guaranteed_count(class.num_labels(), start_height),
    })
}

fn longest_constant_run(steps: &[ChooseStep], tolerance: u32) -> ThresholdFamily {
    let mut groups: BTreeMap<(Label, Label), Vec<usize>> = BTreeMap::new();
    for (i, s) in steps.iter().enumerate() {
        groups.entry((s.k, s.k_prime)).or_default().push(i);
    }
    let mut best: Option<((Label, Label), &Vec<usize>)> = None;
    for (pair, members) in &groups {
        if best.is_none_or(|(_, b)| members.len() > b.len()) {
            best = Some((*pair, members));
        }
    }
    match best {
        Some(((k, k_prime), members)) => ThresholdFamily::Multiclass {
            points: members.iter().map(|&i| steps[i].x0).collect(),
            functions: members.iter().map(|&i| steps[i].h0.clone()).collect(),
            k,
            k_prime,
            tolerance,
        },
        None => ThresholdFamily::Multiclass {
            points: Vec::new(),
            functions: Vec::new(),
            k: Label::new(1),
            k_prime: Label::new(1),
            tolerance,
        },
    }
}

/// Regression thresholds with margin `γ/5`: discretize at `γ/50`, extract
/// gap-10 thresholds from a tolerance-20 tree, and read the two labels back
/// as interval midpoints.
pub fn extract_thresholds_reg(class: &RealFunctionClass, gamma: f64) -> Result<Extraction> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(invalid("gamma", format!("{gamma} must be positive")));
    }
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let disc = discretize(class, gamma / 50.0)?;
    let inner = extract_thresholds_mc(&disc.class, 10, None)?;
    let ThresholdFamily::Multiclass {
        points,
        functions,
        k,
        k_prime,
        ..
    } = &inner.family
    else {
        unreachable!("multi-class extraction yields a multi-class family")
    };
    let mut real_functions = Vec::with_capacity(functions.len());
    for f in functions {
        let row = disc
            .class
            .position(f)
            .and_then(|r| disc.source_row(r))
            .ok_or_else(|| Error::Certificate("extracted row has no source function".into()))?;
        real_functions.push(class.row(row).to_vec());
    }
    let family = ThresholdFamily::Regression {
        points: points.clone(),
        functions: real_functions,
        u: disc.grid.midpoint(*k),
        u_prime: disc.grid.midpoint(*k_prime),
        gamma,
        margin: gamma / 5.0,
        band: gamma / 100.0,
    };
    Ok(Extraction { family, ..inner })
}
