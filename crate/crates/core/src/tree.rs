//! Mistake trees and their shattering checkers.
//!
//! A tree's height is the depth reached by every root-to-leaf path, i.e. the
//! shortest such path. Trees produced by this crate are complete, so height
//! and depth agree. Leaves carry no instance.

use serde::{Deserialize, Serialize};

use crate::class::{HypothesisClass, Label, RealFunctionClass};

/// Comparison slack for real-valued margin tests.
pub const MARGIN_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tree<S> {
    Leaf,
    Node {
        split: S,
        left: Box<Tree<S>>,
        right: Box<Tree<S>>,
    },
}

/// Internal node of a multi-class mistake tree: instance `x` and the labels
/// of the two descending edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSplit {
    pub x: usize,
    pub left: Label,
    pub right: Label,
}

/// Internal node of a real-valued mistake tree: instance `x` and witness `s`.
/// The left edge is direction `-1`, the right edge `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessSplit {
    pub x: usize,
    pub witness: f64,
}

pub type MistakeTree = Tree<LabelSplit>;
pub type WitnessTree = Tree<WitnessSplit>;

impl<S> Tree<S> {
    pub fn node(split: S, left: Tree<S>, right: Tree<S>) -> Self {
        Tree::Node {
            split,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn split(&self) -> Option<&S> {
        match self {
            Tree::Leaf => None,
            Tree::Node { split, .. } => Some(split),
        }
    }

    pub fn children(&self) -> Option<(&Tree<S>, &Tree<S>)> {
        match self {
            Tree::Leaf => None,
            Tree::Node { left, right, .. } => Some((left, right)),
        }
    }

    pub fn height(&self) -> u32 {
        match self {
            Tree::Leaf => 0,
            Tree::Node { left, right, .. } => 1 + left.height().min(right.height()),
        }
    }

    pub fn max_depth(&self) -> u32 {
        match self {
            Tree::Leaf => 0,
            Tree::Node { left, right, .. } => 1 + left.max_depth().max(right.max_depth()),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node { left, right, .. } => 1 + left.internal_nodes() + right.internal_nodes(),
        }
    }

    /// Internal splits in preorder.
    pub fn preorder(&self) -> Vec<&S> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let Tree::Node { split, left, right } = t {
                out.push(split);
                stack.push(right);
                stack.push(left);
            }
        }
        out
    }

    pub fn map<T>(&self, f: &impl Fn(&S) -> T) -> Tree<T> {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node { split, left, right } => Tree::node(f(split), left.map(f), right.map(f)),
        }
    }
}

/// Why a tree failed its shattering check.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeViolation {
    /// Root-to-node path, as `(x, direction)` with `direction` 0 for left.
    pub path: Vec<(usize, u8)>,
    pub reason: String,
}

impl std::fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (at path {:?})", self.reason, self.path)
    }
}

/// Checks that every internal node has edge labels more than `tolerance`
/// apart and that every root-to-leaf path is realized by some row of `class`.
pub fn check_mistake_tree(
    class: &HypothesisClass,
    tree: &MistakeTree,
    tolerance: u32,
) -> Result<(), TreeViolation> {
    let rows: Vec<usize> = (0..class.len()).collect();
    let mut path = Vec::new();
    check_labeled(class, tree, tolerance, &rows, &mut path)
}

fn check_labeled(
    class: &HypothesisClass,
    tree: &MistakeTree,
    tolerance: u32,
    consistent: &[usize],
    path: &mut Vec<(usize, u8)>,
) -> Result<(), TreeViolation> {
    if consistent.is_empty() {
        return Err(TreeViolation {
            path: path.clone(),
            reason: "no hypothesis realizes this path".into(),
        });
    }
    let Tree::Node { split, left, right } = tree else {
        return Ok(());
    };
    if split.x >= class.domain_size() {
        return Err(TreeViolation {
            path: path.clone(),
            reason: format!("instance {} outside the domain", split.x),
        });
    }
    if split.left.distance(split.right) <= tolerance {
        return Err(TreeViolation {
            path: path.clone(),
            reason: format!(
                "edge labels {} and {} are not more than {tolerance} apart",
                split.left, split.right
            ),
        });
    }
    for (dir, label, child) in [(0u8, split.left, left), (1u8, split.right, right)] {
        let next: Vec<usize> = consistent
            .iter()
            .copied()
            .filter(|&r| class.get(r, split.x) == label)
            .collect();
        path.push((split.x, dir));
        check_labeled(class, child, tolerance, &next, path)?;
        path.pop();
    }
    Ok(())
}

/// `ε (f(x) - s) ≥ γ/2`, up to [`MARGIN_EPS`].
pub fn margin_holds(direction: i8, value: f64, witness: f64, gamma: f64) -> bool {
    f64::from(direction) * (value - witness) >= gamma / 2.0 - MARGIN_EPS
}

/// Checks that `tree` is `γ`-shattered by `class`.
pub fn check_fat_tree(
    class: &RealFunctionClass,
    tree: &WitnessTree,
    gamma: f64,
) -> Result<(), TreeViolation> {
    let rows: Vec<usize> = (0..class.len()).collect();
    let mut path = Vec::new();
    check_witnessed(class, tree, &rows, &mut path, &|dir, v, s| {
        margin_holds(dir, v, s, gamma)
    })
}

/// Checks that `tree` is shattered by the sign class `sign(f(x) - s)`, with
/// `sign(0) = +1`: the right edge needs `f(x) ≥ s`, the left `f(x) < s`.
pub fn check_sign_tree(class: &RealFunctionClass, tree: &WitnessTree) -> Result<(), TreeViolation> {
    let rows: Vec<usize> = (0..class.len()).collect();
    let mut path = Vec::new();
    check_witnessed(class, tree, &rows, &mut path, &|dir, v, s| {
        if dir > 0 {
            v >= s
        } else {
            v < s
        }
    })
}

fn check_witnessed(
    class: &RealFunctionClass,
    tree: &WitnessTree,
    consistent: &[usize],
    path: &mut Vec<(usize, u8)>,
    accepts: &impl Fn(i8, f64, f64) -> bool,
) -> Result<(), TreeViolation> {
    if consistent.is_empty() {
        return Err(TreeViolation {
            path: path.clone(),
            reason: "no function realizes this path".into(),
        });
    }
    let Tree::Node { split, left, right } = tree else {
        return Ok(());
    };
    if split.x >= class.domain_size() {
        return Err(TreeViolation {
            path: path.clone(),
            reason: format!("instance {} outside the domain", split.x),
        });
    }
    for (dir, sign, child) in [(0u8, -1i8, left), (1u8, 1i8, right)] {
        let next: Vec<usize> = consistent
            .iter()
            .copied()
            .filter(|&r| accepts(sign, class.get(r, split.x), split.witness))
            .collect();
        path.push((split.x, dir));
        check_witnessed(class, child, &next, path, accepts)?;
        path.pop();
    }
    Ok(())
}
